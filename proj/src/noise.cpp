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

#include "noisyqst/noise.hpp"

#include <string>

namespace noisyqst {

std::string_view to_string(Channel channel) {
  return channel == Channel::depolarizing ? "depolarizing" : "ou";
}

Channel parse_channel(std::string_view name) {
  if (name == "depolarizing") return Channel::depolarizing;
  if (name == "ou" || name == "over-under-rotation") return Channel::over_under_rotation;
  throw std::invalid_argument("unknown channel '" + std::string(name) + "'");
}

void NoiseModel::validate() const {
  if (!std::isfinite(strength) || strength < 0.0)
    throw std::invalid_argument("noise strength must be finite and non-negative");
}

// ---------------------------------------------------------------------------

KrausSet::KrausSet(std::vector<ComplexMatrix> operators, double tol) : ops_(std::move(operators)) {
  if (ops_.empty()) throw std::invalid_argument("empty Kraus set");
  const Eigen::Index d = ops_.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& m : ops_) {
    if (m.rows() != d || m.cols() != d) throw std::invalid_argument("Kraus operator shape mismatch");
    sum += m.adjoint() * m;
  }
  if ((sum - identity(d)).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("Kraus operators are not complete");
}

ComplexMatrix KrausSet::apply(const ComplexMatrix& rho) const {
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& m : ops_) out += m * rho * m.adjoint();
  return out;
}

ComplexMatrix KrausSet::apply_adjoint(const ComplexMatrix& x) const {
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (const auto& m : ops_) out += m.adjoint() * x * m;
  return out;
}

// ---------------------------------------------------------------------------

Povm::Povm(std::array<ComplexMatrix, 4> effects) : effects_(std::move(effects)) {
  ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
  for (const auto& f : effects_) {
    if (f.rows() != 4 || f.cols() != 4) throw std::invalid_argument("POVM effects must be 4x4");
    if (!is_hermitian(f, 1e-10)) throw std::invalid_argument("POVM effect is not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(f, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw std::invalid_argument("POVM effect is not positive semidefinite");
    sum += f;
  }
  if ((sum - identity(4)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("POVM effects do not sum to identity");
  const ComplexMatrix quarter = identity(4) / 4.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const ComplexMatrix t = effects_[k] - quarter;
    const double q = std::sqrt(4.0 / 3.0 * (t * t).trace().real());
    if (q <= 1e-12) throw DegeneratePovm("measurement is fully depolarized (q <= 1e-12)");
    qs_[k] = q;
    nominal_[k] = t / q + quarter;
  }
}

double Povm::projector_defect() const {
  double defect = 0.0;
  for (const auto& p : nominal_) defect = std::max(defect, (p * p - p).cwiseAbs().maxCoeff());
  return defect;
}

// ---------------------------------------------------------------------------

double depolarizing_q(double zeta, double normalized_time) {
  if (zeta < 0 || normalized_time < 0)
    throw std::invalid_argument("noise strength and time must be non-negative");
  return std::exp(-zeta * kPi * normalized_time);
}

ComplexMatrix apply_depolarizing(const ComplexMatrix& x, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("depolarizing q must lie in [0, 1]");
  const Eigen::Index d = x.rows();
  return q * x + (1.0 - q) * x.trace() * identity(d) / static_cast<double>(d);
}

DensityMatrix apply_depolarizing(const DensityMatrix& rho, double q) {
  return DensityMatrix(apply_depolarizing(rho.matrix(), q));
}

Gammas ou_gammas_heisenberg(double r, const HeisenbergTimes& a) {
  return {std::exp(-r * a.alpha1 * kPi), std::exp(-r * a.alpha2 * kPi),
          std::exp(-r * a.alpha3 * kPi)};
}

Gammas ou_gammas_ising(double r, const CanonicalParams& b) {
  return {std::exp(-2 * r * std::abs(b.beta_x)), std::exp(-2 * r * std::abs(b.beta_y)),
          std::exp(-2 * r * std::abs(b.beta_z))};
}

namespace {

void check_gammas(const Gammas& g) {
  for (double v : g)
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("gamma factors must lie in [0, 1]");
}

// Coherence factors in the sorted Bell basis (Psi+, Phi+, Phi-, Psi-).
Eigen::Matrix4d heisenberg_pattern(const Gammas& g) {
  const std::array<double, 4> f{1.0, g[0], g[1], g[2]};
  Eigen::Matrix4d m;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) m(k, l) = k == l ? 1.0 : f[k] * f[l];
  return m;
}

// Coherence factors in the conventional Bell basis (Phi+, Psi+, Phi-, Psi-).
Eigen::Matrix4d ising_pattern(const Gammas& g) {
  const double yz = g[1] * g[2], xy = g[0] * g[1], xz = g[0] * g[2];
  Eigen::Matrix4d m;
  m << 1, yz, xy, xz,  //
      yz, 1, xz, xy,   //
      xy, xz, 1, yz,   //
      xz, xy, yz, 1;
  return m;
}

ComplexMatrix dephase(const ComplexMatrix& x, const ComplexMatrix& basis,
                      const Eigen::Matrix4d& pattern) {
  if (x.rows() != 4 || x.cols() != 4) throw std::invalid_argument("expected a 4x4 operator");
  ComplexMatrix xb = basis.adjoint() * x * basis;
  xb = xb.cwiseProduct(pattern.cast<Complex>());
  return basis * xb * basis.adjoint();
}

std::vector<ComplexMatrix> diagonal_kraus(const ComplexMatrix& basis,
                                          const std::vector<std::array<double, 4>>& signs,
                                          const std::vector<double>& weights) {
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    ComplexMatrix d = ComplexMatrix::Zero(4, 4);
    const double amp = std::sqrt(std::max(0.0, weights[i]));
    for (int k = 0; k < 4; ++k) d(k, k) = amp * signs[i][k];
    ops.push_back(basis * d * basis.adjoint());
  }
  return ops;
}

}  // namespace

ComplexMatrix apply_ou_heisenberg(const ComplexMatrix& x, const Gammas& gammas) {
  check_gammas(gammas);
  return dephase(x, bell_basis_sorted(), heisenberg_pattern(gammas));
}

ComplexMatrix apply_ou_ising(const ComplexMatrix& x, const Gammas& gammas) {
  check_gammas(gammas);
  return dephase(x, bell_basis_conventional(), ising_pattern(gammas));
}

DensityMatrix apply_ou_heisenberg(const DensityMatrix& rho, const Gammas& gammas) {
  return DensityMatrix(apply_ou_heisenberg(rho.matrix(), gammas));
}

DensityMatrix apply_ou_ising(const DensityMatrix& rho, const Gammas& gammas) {
  return DensityMatrix(apply_ou_ising(rho.matrix(), gammas));
}

KrausSet kraus_depolarizing(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("depolarizing q must lie in [0, 1]");
  std::vector<ComplexMatrix> ops;
  ops.push_back(std::sqrt(15 * q + 1) / 4 * identity(4));
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l)
      if (k != 0 || l != 0) ops.push_back(std::sqrt(1 - q) / 4 * kron(pauli(k), pauli(l)));
  return KrausSet(std::move(ops));
}

KrausSet kraus_ou_heisenberg(const Gammas& gammas) {
  check_gammas(gammas);
  std::vector<std::array<double, 4>> signs;
  std::vector<double> weights;
  for (int m = 0; m < 2; ++m)
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l) {
        const double sm = m ? -1.0 : 1.0, sk = k ? -1.0 : 1.0, sl = l ? -1.0 : 1.0;
        signs.push_back({1.0, sm, sk, sl});
        weights.push_back((1 + sm * gammas[0]) * (1 + sk * gammas[1]) * (1 + sl * gammas[2]) / 8);
      }
  return KrausSet(diagonal_kraus(bell_basis_sorted(), signs, weights));
}

KrausSet kraus_ou_ising(const Gammas& gammas) {
  check_gammas(gammas);
  const double yz = gammas[1] * gammas[2], xy = gammas[0] * gammas[1], xz = gammas[0] * gammas[2];
  std::vector<std::array<double, 4>> signs;
  std::vector<double> weights;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      const double sk = k ? -1.0 : 1.0, sl = l ? -1.0 : 1.0;
      signs.push_back({1.0, sk, sl, sk * sl});
      weights.push_back((1 + sk * yz + sl * xy + sk * sl * xz) / 4);
    }
  return KrausSet(diagonal_kraus(bell_basis_conventional(), signs, weights));
}

double average_gate_fidelity(const KrausSet& ks) {
  const double d = static_cast<double>(ks.dim());
  double sum = 0.0;
  for (const auto& m : ks.operators()) sum += std::norm(m.trace());
  return (sum + d) / (d * d + d);
}

KrausSet entangler_noise(const Entangler& entangler, const NoiseModel& noise) {
  noise.validate();
  if (noise.channel == Channel::depolarizing)
    return kraus_depolarizing(depolarizing_q(noise.strength, entangling_time(entangler)));
  if (const auto* a = std::get_if<HeisenbergTimes>(&entangler))
    return kraus_ou_heisenberg(ou_gammas_heisenberg(noise.strength, *a));
  return kraus_ou_ising(ou_gammas_ising(noise.strength, std::get<CanonicalParams>(entangler)));
}

double cnot_fidelity(const NoiseModel& noise) {
  const auto mub = standard_mub_params(noise.interaction);
  return average_gate_fidelity(entangler_noise(mub.measurements[3].entangler, noise));
}

// ---------------------------------------------------------------------------

Povm ideal_povm(const UnitaryMatrix& u) {
  if (u.dim() != 4) throw std::invalid_argument("two-qubit measurement expected");
  std::array<ComplexMatrix, 4> effects;
  for (int k = 0; k < 4; ++k) {
    const ComplexVector v = u.matrix().row(k).adjoint();
    effects[k] = v * v.adjoint();
  }
  return Povm(std::move(effects));
}

namespace {

void check_interaction(const MeasurementParams& m, const NoiseModel& noise) {
  if (m.interaction() != noise.interaction)
    throw std::invalid_argument("measurement entangler does not match the noise interaction");
}

template <typename NoiseMap>
std::array<ComplexMatrix, 4> pull_back(const MeasurementParams& m, NoiseMap&& noise_map) {
  const ComplexMatrix pre =
      kron(single_qubit_gate(m.pre1).matrix(), single_qubit_gate(m.pre2).matrix());
  const ComplexMatrix post =
      kron(single_qubit_gate(m.post1).matrix(), single_qubit_gate(m.post2).matrix());
  const ComplexMatrix body = entangler_unitary(m.entangler).matrix() * post;
  std::array<ComplexMatrix, 4> effects;
  for (int k = 0; k < 4; ++k) {
    const ComplexVector v = pre.row(k).adjoint();
    const ComplexMatrix x = noise_map(ComplexMatrix(v * v.adjoint()));
    ComplexMatrix f = body.adjoint() * x * body;
    effects[k] = (f + f.adjoint()) / 2.0;
  }
  return effects;
}

}  // namespace

std::array<ComplexMatrix, 4> effective_effects(const MeasurementParams& m,
                                              const NoiseModel& noise) {
  noise.validate();
  check_interaction(m, noise);
  if (noise.channel == Channel::depolarizing) {
    const double q = depolarizing_q(noise.strength, entangling_time(m));
    return pull_back(m, [q](const ComplexMatrix& x) { return apply_depolarizing(x, q); });
  }
  if (const auto* a = std::get_if<HeisenbergTimes>(&m.entangler)) {
    const Gammas g = ou_gammas_heisenberg(noise.strength, *a);
    return pull_back(m, [&g](const ComplexMatrix& x) { return apply_ou_heisenberg(x, g); });
  }
  const Gammas g = ou_gammas_ising(noise.strength, std::get<CanonicalParams>(m.entangler));
  return pull_back(m, [&g](const ComplexMatrix& x) { return apply_ou_ising(x, g); });
}

Povm effective_povm(const MeasurementParams& m, const NoiseModel& noise) {
  return Povm(effective_effects(m, noise));
}

Povm effective_povm_kraus(const MeasurementParams& m, const NoiseModel& noise) {
  check_interaction(m, noise);
  const KrausSet ks = entangler_noise(m.entangler, noise);
  return Povm(pull_back(m, [&ks](const ComplexMatrix& x) { return ks.apply_adjoint(x); }));
}

std::array<Povm, kQuorumSize> effective_povms(const QuorumParams& q, const NoiseModel& noise) {
  auto make = [&](int j) { return effective_povm(q.measurements[j], noise); };
  return {make(0), make(1), make(2), make(3), make(4)};
}

}  // namespace noisyqst
