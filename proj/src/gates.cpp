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

#include "noisyqst/gates.hpp"

#include <string>

namespace noisyqst {

std::string_view to_string(Interaction interaction) {
  return interaction == Interaction::heisenberg ? "heisenberg" : "ising";
}

Interaction parse_interaction(std::string_view name) {
  if (name == "heisenberg") return Interaction::heisenberg;
  if (name == "ising") return Interaction::ising;
  throw std::invalid_argument("unknown interaction '" + std::string(name) + "'");
}

HeisenbergTimes canonicalize(const HeisenbergTimes& a) {
  auto mod2 = [](double x) {
    double r = std::fmod(x, 2.0);
    if (r < 0) r += 2.0;
    return r >= 2.0 ? 0.0 : r;
  };
  return {mod2(a.alpha1), mod2(a.alpha2), mod2(a.alpha3)};
}

Interaction MeasurementParams::interaction() const {
  return std::holds_alternative<HeisenbergTimes>(entangler) ? Interaction::heisenberg
                                                            : Interaction::ising;
}

Interaction QuorumParams::interaction() const {
  const Interaction first = measurements.front().interaction();
  for (const auto& m : measurements)
    if (m.interaction() != first) throw std::invalid_argument("quorum mixes interactions");
  return first;
}

// ---------------------------------------------------------------------------

UnitaryMatrix single_qubit_gate(const SingleQubitParams& p) {
  const Complex i(0, 1);
  ComplexMatrix u(2, 2);
  u << std::cos(p.phi) * std::exp(i * p.psi), std::sin(p.phi) * std::exp(i * p.chi),
      -std::sin(p.phi) * std::exp(-i * p.chi), std::cos(p.phi) * std::exp(-i * p.psi);
  return UnitaryMatrix(std::move(u));
}

const ComplexMatrix& bell_basis_conventional() {
  static const ComplexMatrix b = [] {
    const double h = 1.0 / std::sqrt(2.0);
    ComplexMatrix m(4, 4);
    m << h, 0, h, 0,  //
        0, h, 0, h,   //
        0, h, 0, -h,  //
        h, 0, -h, 0;
    return m;
  }();
  return b;
}

const ComplexMatrix& bell_basis_sorted() {
  static const ComplexMatrix b = [] {
    const ComplexMatrix& c = bell_basis_conventional();
    ComplexMatrix m(4, 4);
    m.col(0) = c.col(1);
    m.col(1) = c.col(0);
    m.col(2) = c.col(2);
    m.col(3) = c.col(3);
    return m;
  }();
  return b;
}

namespace {

ComplexMatrix diagonal_in(const ComplexMatrix& basis, const std::array<Complex, 4>& phases) {
  ComplexMatrix d = ComplexMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) d(k, k) = phases[k];
  return basis * d * basis.adjoint();
}

}  // namespace

UnitaryMatrix canonical_two_qubit(const CanonicalParams& b) {
  const Complex i(0, 1);
  const double eta00 = b.beta_x - b.beta_y + b.beta_z;
  const double eta01 = b.beta_x + b.beta_y - b.beta_z;
  const double eta10 = -b.beta_x + b.beta_y + b.beta_z;
  const double eta11 = -b.beta_x - b.beta_y - b.beta_z;
  return UnitaryMatrix(diagonal_in(bell_basis_conventional(),
                                   {std::exp(-i * eta00), std::exp(-i * eta01),
                                    std::exp(-i * eta10), std::exp(-i * eta11)}));
}

UnitaryMatrix swap_power(double alpha) {
  const Complex i(0, 1);
  return UnitaryMatrix(
      diagonal_in(bell_basis_sorted(), {1.0, 1.0, 1.0, std::exp(i * alpha * kPi)}));
}

UnitaryMatrix heisenberg_two_qubit(const HeisenbergTimes& a) {
  const ComplexMatrix zx = kron(pauli(3), pauli(1));
  const ComplexMatrix z1 = kron(pauli(3), pauli(0));
  const ComplexMatrix x2 = kron(pauli(0), pauli(1));
  ComplexMatrix u = zx * swap_power(a.alpha1).matrix() * z1 * swap_power(a.alpha2).matrix() *
                    x2 * swap_power(a.alpha3).matrix();
  return UnitaryMatrix(std::move(u));
}

UnitaryMatrix heisenberg_bell_diagonal(const HeisenbergTimes& a) {
  const Complex i(0, 1);
  return UnitaryMatrix(diagonal_in(bell_basis_sorted(),
                                   {1.0, std::exp(i * a.alpha1 * kPi),
                                    std::exp(i * a.alpha2 * kPi), std::exp(i * a.alpha3 * kPi)}));
}

UnitaryMatrix ising_two_qubit(const CanonicalParams& b) {
  const Complex i(0, 1);
  const double c = std::cos(kPi / 4), s = std::sin(kPi / 4);
  // exp(-i pi sy / 4) and exp(i pi sx / 4)
  const ComplexMatrix ux = c * pauli(0) - i * s * pauli(2);
  const ComplexMatrix uy = c * pauli(0) + i * s * pauli(1);
  const ComplexMatrix zz = kron(pauli(3), pauli(3));
  auto zz_evolution = [&](double beta) -> ComplexMatrix {
    return std::cos(beta) * identity(4) - i * std::sin(beta) * zz;
  };
  const std::array<ComplexMatrix, 3> frames{kron(ux, ux), kron(uy, uy), identity(4)};
  const std::array<double, 3> betas{b.beta_x, b.beta_y, b.beta_z};
  ComplexMatrix u = identity(4);
  for (int k = 0; k < 3; ++k) u *= frames[k].adjoint() * zz_evolution(betas[k]) * frames[k];
  return UnitaryMatrix(std::move(u));
}

UnitaryMatrix entangler_unitary(const Entangler& e) {
  if (const auto* a = std::get_if<HeisenbergTimes>(&e)) return heisenberg_bell_diagonal(*a);
  return canonical_two_qubit(std::get<CanonicalParams>(e));
}

UnitaryMatrix measurement_unitary(const MeasurementParams& m) {
  const ComplexMatrix pre =
      kron(single_qubit_gate(m.pre1).matrix(), single_qubit_gate(m.pre2).matrix());
  const ComplexMatrix post =
      kron(single_qubit_gate(m.post1).matrix(), single_qubit_gate(m.post2).matrix());
  return UnitaryMatrix(pre * entangler_unitary(m.entangler).matrix() * post, 1e-9);
}

QuorumParams standard_mub_params(Interaction interaction) {
  const double q = kPi / 4;
  const Entangler cnot_like = interaction == Interaction::heisenberg
                                  ? Entangler{HeisenbergTimes{0.5, 0.0, 0.5}}
                                  : Entangler{CanonicalParams{0.0, q, 0.0}};
  const Entangler none = interaction == Interaction::heisenberg ? Entangler{HeisenbergTimes{}}
                                                                : Entangler{CanonicalParams{}};
  QuorumParams quorum;
  auto& m = quorum.measurements;
  m[0] = {{}, {}, none, {}, {}};
  m[1] = {{q, 0, 0}, {q, 0, 0}, none, {}, {}};
  m[2] = {{q, 0, 2 * q}, {q, 0, 2 * q}, none, {}, {}};
  m[3] = {{0, q, 0}, {-2 * q, 0, q}, cnot_like, {}, {q, kPi, -kPi}};
  m[4] = {{q, q, q}, {0, q, 0}, cnot_like, {}, {}};
  return quorum;
}

std::vector<UnitaryMatrix> nine_pauli_bases() {
  const Complex i(0, 1);
  const double h = 1.0 / std::sqrt(2.0);
  ComplexMatrix hadamard(2, 2);
  hadamard << h, h, h, -h;
  ComplexMatrix s_dag(2, 2);
  s_dag << 1, 0, 0, -i;
  const std::array<ComplexMatrix, 3> local{hadamard, ComplexMatrix(hadamard * s_dag), pauli(0)};
  std::vector<UnitaryMatrix> out;
  for (const auto& a : local)
    for (const auto& b : local) out.emplace_back(kron(a, b));
  return out;
}

double entangling_time(const Entangler& e) {
  if (const auto* a = std::get_if<HeisenbergTimes>(&e)) return a->alpha1 + a->alpha2 + a->alpha3;
  const auto& b = std::get<CanonicalParams>(e);
  return (std::abs(b.beta_x) + std::abs(b.beta_y) + std::abs(b.beta_z)) / kPi;
}

double entangling_time(const MeasurementParams& m) { return entangling_time(m.entangler); }

double entangling_time(const QuorumParams& q) {
  double total = 0.0;
  for (const auto& m : q.measurements) total += entangling_time(m);
  return total;
}

// ---------------------------------------------------------------------------

namespace {

void put(Eigen::VectorXd& x, Eigen::Index at, const SingleQubitParams& p) {
  x(at) = p.phi;
  x(at + 1) = p.psi;
  x(at + 2) = p.chi;
}

SingleQubitParams take(const Eigen::VectorXd& x, Eigen::Index at) {
  return {x(at), x(at + 1), x(at + 2)};
}

}  // namespace

Eigen::VectorXd to_vector(const QuorumParams& q) {
  Eigen::VectorXd x(kQuorumParamCount);
  for (int j = 0; j < kQuorumSize; ++j) {
    const auto& m = q.measurements[j];
    const Eigen::Index at = j * kParamsPerMeasurement;
    put(x, at, m.pre1);
    put(x, at + 3, m.pre2);
    if (const auto* a = std::get_if<HeisenbergTimes>(&m.entangler)) {
      x.segment<3>(at + 6) << a->alpha1, a->alpha2, a->alpha3;
    } else {
      const auto& b = std::get<CanonicalParams>(m.entangler);
      x.segment<3>(at + 6) << b.beta_x, b.beta_y, b.beta_z;
    }
    put(x, at + 9, m.post1);
    put(x, at + 12, m.post2);
  }
  return x;
}

double reflect_into_period(double x) {
  double r = std::fmod(x, 4.0);
  if (r < 0) r += 4.0;
  return r > 2.0 ? 4.0 - r : r;
}

QuorumParams from_vector(const Eigen::VectorXd& x, Interaction interaction) {
  if (x.size() != kQuorumParamCount)
    throw std::invalid_argument("quorum parameter vector must have 75 entries");
  QuorumParams q;
  for (int j = 0; j < kQuorumSize; ++j) {
    auto& m = q.measurements[j];
    const Eigen::Index at = j * kParamsPerMeasurement;
    m.pre1 = take(x, at);
    m.pre2 = take(x, at + 3);
    if (interaction == Interaction::heisenberg) {
      m.entangler = canonicalize(HeisenbergTimes{reflect_into_period(x(at + 6)),
                                                 reflect_into_period(x(at + 7)),
                                                 reflect_into_period(x(at + 8))});
    } else {
      m.entangler = CanonicalParams{x(at + 6), x(at + 7), x(at + 8)};
    }
    m.post1 = take(x, at + 9);
    m.post2 = take(x, at + 12);
  }
  return q;
}

QuorumParams random_quorum(Interaction interaction, Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  std::uniform_real_distribution<double> alpha(0.0, 2.0);
  std::uniform_real_distribution<double> beta(-kPi / 2, kPi / 2);
  auto local = [&] { return SingleQubitParams{angle(rng), angle(rng), angle(rng)}; };
  QuorumParams q;
  for (auto& m : q.measurements) {
    m.pre1 = local();
    m.pre2 = local();
    if (interaction == Interaction::heisenberg) {
      const double a1 = alpha(rng), a2 = alpha(rng), a3 = alpha(rng);
      m.entangler = HeisenbergTimes{a1, a2, a3};
    } else {
      const double bx = beta(rng), by = beta(rng), bz = beta(rng);
      m.entangler = CanonicalParams{bx, by, bz};
    }
    m.post1 = local();
    m.post2 = local();
  }
  return q;
}

bool equal_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  Eigen::Index r = 0, c = 0;
  a.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(b(r, c)) < 1e-14) return false;
  const Complex phase = a(r, c) / b(r, c);
  return (a - phase / std::abs(phase) * b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace noisyqst
