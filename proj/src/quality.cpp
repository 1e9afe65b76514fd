// Copyright 2026 The noisyqst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "noisyqst/quality.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace noisyqst {

namespace {

void require_quorum_size(std::size_t n) {
  if (n != static_cast<std::size_t>(kQuorumSize))
    throw std::invalid_argument("a quorum has exactly 5 measurements");
}

// Rows: traceless coordinates of the first three effects of every measurement.
Eigen::MatrixXd effect_rows(std::span<const Povm> quorum) {
  Eigen::MatrixXd rows(3 * kQuorumSize, 15);
  for (int j = 0; j < kQuorumSize; ++j)
    for (int k = 0; k < 3; ++k)
      rows.row(3 * j + k) = traceless_coordinates(quorum[j].effects()[k]).coords().transpose();
  return rows;
}

double log_abs_volume(const Eigen::MatrixXd& rows) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(rows.transpose());
  const Eigen::MatrixXd& r = qr.matrixQR();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) acc += std::log(std::abs(r(i, i)));
  return acc;
}

}  // namespace

double geometric_quality(std::span<const Povm> quorum) {
  require_quorum_size(quorum.size());
  double log_q = 0.0;
  for (const auto& p : quorum)
    for (double q : p.qs()) log_q += std::log(q);
  return gram_volume_rows(effect_rows(quorum)) * std::exp(-0.75 * log_q);
}

double geometric_quality(std::span<const UnitaryMatrix> quorum) {
  require_quorum_size(quorum.size());
  std::vector<Povm> povms;
  povms.reserve(quorum.size());
  for (const auto& u : quorum) povms.push_back(ideal_povm(u));
  return geometric_quality(std::span<const Povm>(povms));
}

double noisy_quality(std::span<const Povm> quorum) {
  double log_q = 0.0;
  for (const auto& p : quorum)
    for (double q : p.qs()) log_q += std::log(q);
  return geometric_quality(quorum) * std::exp(kPerEffectExponent * log_q);
}

double noisy_quality_global(double q_geometric, std::span<const double> qs, double s) {
  double out = q_geometric;
  for (double q : qs) {
    if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("q must lie in (0, 1]");
    out *= std::pow(q, s);
  }
  return out;
}

QualityReport evaluate_quorum(const QuorumParams& quorum, const NoiseModel& noise) {
  const auto povms = effective_povms(quorum, noise);
  QualityReport report;
  report.q_geometric = geometric_quality(povms);
  report.q_noisy = noisy_quality(povms);
  for (int j = 0; j < kQuorumSize; ++j) {
    report.per_measurement_q[j] = povms[j].qs();
    report.entangling_times[j] = entangling_time(quorum.measurements[j]);
  }
  return report;
}

double log_noisy_quality(const QuorumParams& quorum, const NoiseModel& noise) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  Eigen::MatrixXd rows(3 * kQuorumSize, 15);
  double log_q = 0.0;
  for (int j = 0; j < kQuorumSize; ++j) {
    const auto effects = effective_effects(quorum.measurements[j], noise);
    for (int k = 0; k < 4; ++k) {
      const Eigen::VectorXd c = traceless_coordinates(effects[k]).coords();
      const double q = std::sqrt(4.0 / 3.0) * c.norm();
      if (!(q > 1e-12)) return kNegInf;
      log_q += std::log(q);
      if (k < 3) rows.row(3 * j + k) = c.transpose();
    }
  }
  const double lv = log_abs_volume(rows);
  if (!std::isfinite(lv)) return kNegInf;
  return lv + (kPerEffectExponent - 0.75) * log_q;
}

// ---------------------------------------------------------------------------

double estimate_log_coefficient(int d, long n_samples, Rng& rng,
                                const LogCoefficientOptions& opts) {
  require_supported_dim(d);
  if (n_samples < 100000) throw std::invalid_argument("at least 10^5 samples are required");
  if (opts.grid_points < 2 || !(opts.q_min > 0.0 && opts.q_min < opts.q_max && opts.q_max <= 1.0))
    throw std::invalid_argument("invalid q grid");

  const int g = opts.grid_points;
  Eigen::VectorXd x(g), shift(g), sums = Eigen::VectorXd::Zero(g);
  for (int i = 0; i < g; ++i) {
    const double q = opts.q_min + (opts.q_max - opts.q_min) * i / (g - 1);
    x(i) = 1.0 - q;
    shift(i) = (1.0 - q) / (d * q);
  }
  for (long n = 0; n < n_samples; ++n) {
    const DensityMatrix rho = random_density(d, rng);
    for (int k = 0; k < d; ++k) {
      const double p = rho.matrix()(k, k).real();
      for (int i = 0; i < g; ++i) sums(i) += std::log(p + shift(i));
    }
  }
  const Eigen::VectorXd y = sums / (static_cast<double>(n_samples) * d);
  const Eigen::VectorXd xc = x.array() - x.mean();
  return xc.dot(y.array().matrix() - Eigen::VectorXd::Constant(g, y.mean())) / xc.squaredNorm();
}

double qubit_log_average(double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("c must be non-negative");
  const double c_log_c = c == 0.0 ? 0.0 : c * c * (3 + 2 * c) * std::log(c);
  return -5.0 / 6.0 + 2 * c * (1 + c) + c_log_c - (1 + c) * (1 + c) * (2 * c - 1) * std::log1p(c);
}

// ---------------------------------------------------------------------------

double scheme_quality(const SingleQubitScheme& scheme) {
  if (!(scheme.theta > 0.0 && scheme.theta <= kPi / 2))
    throw std::invalid_argument("theta must lie in (0, pi/2]");
  if (!(scheme.r >= 0.0)) throw std::invalid_argument("r must be non-negative");
  std::vector<TracelessVector> parts;
  for (double phase : scheme.phases) {
    ComplexVector psi(2);
    psi << std::cos(scheme.theta / 2), std::polar(std::sin(scheme.theta / 2), phase);
    parts.push_back(traceless_part(Projector::onto(psi)));
  }
  const double q = std::exp(-scheme.r * scheme.theta);
  return bloch_volume(parts) * std::pow(q, 3 * kQubitLogSlope);
}

double single_qubit_quality(double theta, double r) {
  const double s = std::sin(theta);
  return 1.5 * std::sqrt(3.0) * std::exp(-4.5 * r * std::abs(theta)) * std::cos(theta) * s * s;
}

double single_qubit_optimal_angle(double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("r must be non-negative");
  return std::atan(std::sqrt(81 * r * r / 16 + 2) - 9 * r / 4);
}

// ---------------------------------------------------------------------------

double analytic_alpha_max(double zeta, double s) {
  if (!(zeta >= 0.0 && s > 0.0)) throw std::invalid_argument("need zeta >= 0 and s > 0");
  return std::atan2(1.0, zeta * s) / kPi;
}

double analytic_beta_max(double zeta, double s) {
  if (!(zeta >= 0.0 && s > 0.0)) throw std::invalid_argument("need zeta >= 0 and s > 0");
  return 0.5 * std::atan2(4.0, zeta * s);
}

QuorumParams heisenberg_mub_family(double a41, double a43, double a51, double a53) {
  QuorumParams q = standard_mub_params(Interaction::heisenberg);
  q.measurements[3].entangler = HeisenbergTimes{a41, 0.0, a43};
  q.measurements[4].entangler = HeisenbergTimes{a51, 0.0, a53};
  return q;
}

QuorumParams ising_mub_family(double b4, double b5) {
  QuorumParams q = standard_mub_params(Interaction::ising);
  q.measurements[3].entangler = CanonicalParams{0.0, b4, 0.0};
  q.measurements[4].entangler = CanonicalParams{0.0, b5, 0.0};
  return q;
}

double heisenberg_family_quality(double a41, double a43, double a51, double a53, double zeta,
                                 double s) {
  if (a41 < 0 || a43 < 0 || a51 < 0 || a53 < 0)
    throw std::invalid_argument("exchange times must be non-negative");
  const double c = std::cos((a51 - a53) * kPi / 2);
  const double sn = std::sin((a51 + a53) * kPi / 2);
  const double q = std::abs(std::sin(a41 * kPi) * std::sin(a43 * kPi)) / 32 * c * c * c * c * sn * sn;
  return q * std::exp(-zeta * kPi * s * (a41 + a43 + a51 + a53));
}

double ising_family_quality(double b4, double b5, double zeta, double s) {
  const double s4 = std::sin(2 * b4), s5 = std::sin(2 * b5);
  return s4 * s4 * s5 * s5 / 32 * std::exp(-zeta * s * (std::abs(b4) + std::abs(b5)));
}

}  // namespace noisyqst
