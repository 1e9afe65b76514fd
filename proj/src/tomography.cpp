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

#include "noisyqst/tomography.hpp"

#include <cmath>
#include <limits>
#include <string_view>

#include "parallel.hpp"

namespace noisyqst {

namespace {

constexpr std::uint64_t kTagStates = 0x5354415445ULL;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct Datum {
  double freq;
  const ComplexMatrix* effect;
};

double tr_real(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.cwiseProduct(b.transpose())).sum().real();
}

double log_likelihood(const std::vector<Datum>& data, const ComplexMatrix& rho) {
  double ll = 0.0;
  for (const auto& d : data) {
    const double p = tr_real(*d.effect, rho);
    if (!(p > 0.0)) return -std::numeric_limits<double>::infinity();
    ll += d.freq * std::log(p);
  }
  return ll;
}

ComplexMatrix normalized(const ComplexMatrix& m) {
  ComplexMatrix h = (m + m.adjoint()) / 2.0;
  return h / h.trace().real();
}

}  // namespace

Counts sample_measurement(const DensityMatrix& rho, const Povm& povm, std::int64_t n_shots,
                          Rng& rng) {
  if (n_shots < 1) throw std::invalid_argument("need at least one shot");
  if (rho.dim() != 4) throw std::invalid_argument("two-qubit state expected");
  std::array<double, 4> p{};
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    p[k] = std::clamp(tr_real(povm.effects()[k], rho.matrix()), 0.0, 1.0);
    total += p[k];
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw std::invalid_argument("outcome probabilities do not sum to 1");
  Counts counts{};
  std::int64_t left = n_shots;
  double mass = 1.0;
  for (int k = 0; k < 3 && left > 0; ++k) {
    const double pk = std::clamp(p[k] / total / mass, 0.0, 1.0);
    counts[k] = std::binomial_distribution<std::int64_t>(left, pk)(rng);
    left -= counts[k];
    mass -= p[k] / total;
    if (mass <= 0.0) break;
  }
  counts[3] += left;
  return counts;
}

int effect_span_rank(std::span<const Povm> povms) {
  Eigen::MatrixXd rows(4 * static_cast<Eigen::Index>(povms.size()), 16);
  Eigen::Index at = 0;
  for (const auto& p : povms) {
    for (const auto& f : p.effects()) {
      rows.row(at).head(15) = traceless_coordinates(f).coords().transpose();
      rows(at, 15) = f.trace().real() / 2.0;
      ++at;
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(rows);
  qr.setThreshold(1e-9);
  return static_cast<int>(qr.rank());
}

MlResult ml_reconstruct_detailed(std::span<const Counts> counts, std::span<const Povm> povms,
                                 const MlOptions& opts) {
  if (counts.size() != povms.size()) throw std::invalid_argument("one count vector per POVM");
  if (effect_span_rank(povms) < 16)
    throw NotInformationallyComplete("effects do not span the operator space");

  double shots = 0.0;
  for (const auto& c : counts)
    for (auto n : c) {
      if (n < 0) throw std::invalid_argument("negative count");
      shots += static_cast<double>(n);
    }
  if (!(shots > 0.0)) throw std::invalid_argument("no counts");
  std::vector<Datum> data;
  for (std::size_t j = 0; j < counts.size(); ++j)
    for (int k = 0; k < 4; ++k)
      if (counts[j][k] > 0)
        data.push_back({static_cast<double>(counts[j][k]) / shots, &povms[j].effects()[k]});

  MlResult out;
  ComplexMatrix rho = identity(4) / 4.0;
  double ll = log_likelihood(data, rho);
  out.log_likelihood.push_back(ll);
  const ComplexMatrix one = identity(4);

  for (int iter = 1; iter <= opts.max_iters; ++iter) {
    out.iterations = iter;
    ComplexMatrix r = ComplexMatrix::Zero(4, 4);
    for (const auto& d : data) r += (d.freq / tr_real(*d.effect, rho)) * *d.effect;

    ComplexMatrix next = normalized(r * rho * r);
    double ll_next = log_likelihood(data, next);
    for (double eps = 1.0; !(ll_next >= ll) && eps > 1e-12; eps /= 2) {
      const ComplexMatrix g = one + eps * r;
      next = normalized(g * rho * g);
      ll_next = log_likelihood(data, next);
    }
    if (!(ll_next >= ll)) break;
    const double gain = ll_next - ll;
    rho = std::move(next);
    ll = ll_next;
    out.log_likelihood.push_back(ll);
    if (gain < opts.ll_tol) break;
  }
  out.rho = DensityMatrix(rho);
  return out;
}

DensityMatrix ml_reconstruct(std::span<const Counts> counts, std::span<const Povm> povms,
                             const MlOptions& opts) {
  return ml_reconstruct_detailed(counts, povms, opts).rho;
}

// ---------------------------------------------------------------------------

Scheme pauli_scheme(std::string label) {
  Scheme s;
  s.label = std::move(label);
  for (const auto& u : nine_pauli_bases()) s.measurements.push_back(ideal_povm(u));
  return s;
}

Scheme quorum_scheme(std::string label, const QuorumParams& quorum, const NoiseModel& noise,
                     bool noise_aware) {
  Scheme s;
  s.label = std::move(label);
  for (const auto& m : quorum.measurements) {
    s.measurements.push_back(effective_povm(m, noise));
    if (!noise_aware) s.assumed.push_back(ideal_povm(measurement_unitary(m)));
  }
  return s;
}

std::vector<ExperimentReport> run_experiment(std::span<const Scheme> schemes,
                                             const NoiseModel& noise,
                                             const ExperimentOptions& opts,
                                             const LogSink& log) {
  noise.validate();
  if (opts.n_states < 1) throw std::invalid_argument("need at least one state");
  if (opts.total_shots < 1) throw std::invalid_argument("need at least one shot");

  std::vector<std::int64_t> per_measurement;
  std::vector<std::uint64_t> tags;
  for (const auto& s : schemes) {
    if (s.measurements.empty()) throw std::invalid_argument("scheme '" + s.label + "' is empty");
    if (!s.assumed.empty() && s.assumed.size() != s.measurements.size())
      throw std::invalid_argument("scheme '" + s.label + "' has mismatched assumed POVMs");
    const auto m = static_cast<std::int64_t>(s.measurements.size());
    per_measurement.push_back(opts.total_shots / m);
    if (per_measurement.back() < 1)
      throw std::invalid_argument("fewer shots than measurements in '" + s.label + "'");
    if (opts.total_shots % m != 0 && log)
      log("scheme " + s.label + ": " + std::to_string(opts.total_shots % m) +
          " shots left over after the equal split");
    if (effect_span_rank(s.assumed.empty() ? s.measurements : s.assumed) < 16)
      throw NotInformationallyComplete("scheme '" + s.label + "' is not informationally complete");
    tags.push_back(fnv1a(s.label));
  }

  const std::size_t n_schemes = schemes.size();
  std::vector<double> infid(n_schemes * static_cast<std::size_t>(opts.n_states));
  detail::parallel_for(opts.n_states, opts.threads, [&](int i) {
    Rng state_rng = substream(opts.seed, kTagStates, static_cast<std::uint64_t>(i));
    const DensityMatrix rho = random_density(4, state_rng);
    for (std::size_t s = 0; s < n_schemes; ++s) {
      const Scheme& scheme = schemes[s];
      Rng rng = substream(opts.seed, tags[s], static_cast<std::uint64_t>(i));
      std::vector<Counts> counts;
      for (const auto& p : scheme.measurements)
        counts.push_back(sample_measurement(rho, p, per_measurement[s], rng));
      const auto& model = scheme.assumed.empty() ? scheme.measurements : scheme.assumed;
      const DensityMatrix est = ml_reconstruct(counts, model, opts.ml);
      infid[s * opts.n_states + i] = 1.0 - state_fidelity(est, rho);
    }
  });

  std::vector<ExperimentReport> reports;
  for (std::size_t s = 0; s < n_schemes; ++s) {
    double mean = 0.0, m2 = 0.0;
    for (int i = 0; i < opts.n_states; ++i) {
      const double x = infid[s * opts.n_states + i];
      const double delta = x - mean;
      mean += delta / (i + 1);
      m2 += delta * (x - mean);
    }
    ExperimentReport r;
    r.scheme_label = schemes[s].label;
    r.noise_strength = noise.strength;
    r.n_states = opts.n_states;
    r.total_shots = per_measurement[s] * static_cast<std::int64_t>(schemes[s].measurements.size());
    r.mean_infidelity = mean;
    r.sem = opts.n_states > 1 ? std::sqrt(m2 / (opts.n_states - 1) / opts.n_states) : 0.0;
    r.seed = opts.seed;
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace noisyqst
