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

#pragma once

#include <array>
#include <string_view>
#include <variant>
#include <vector>

#include "noisyqst/core.hpp"

namespace noisyqst {

enum class Interaction { heisenberg, ising };

std::string_view to_string(Interaction interaction);
Interaction parse_interaction(std::string_view name);

/// Angles (phi, psi, chi) of the local gate
/// [[cos phi e^{i psi}, sin phi e^{i chi}], [-sin phi e^{-i chi}, cos phi e^{-i psi}]].
struct SingleQubitParams {
  double phi = 0.0;
  double psi = 0.0;
  double chi = 0.0;
};

/// Coefficients of H = sum_a beta_a sigma_a (x) sigma_a; the gate is exp(-iH).
struct CanonicalParams {
  double beta_x = 0.0;
  double beta_y = 0.0;
  double beta_z = 0.0;
};

/// Normalized exchange times, in units of pi / lambda_H, of the three SWAP^alpha pulses.
struct HeisenbergTimes {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
};

/// Each alpha reduced into [0, 2); the gate is unchanged, the exchange time is not increased.
HeisenbergTimes canonicalize(const HeisenbergTimes& a);

using Entangler = std::variant<HeisenbergTimes, CanonicalParams>;

// U = (pre1 (x) pre2) . U_tq . (post1 (x) post2); the post layer acts on the state first.
struct MeasurementParams {
  SingleQubitParams pre1;
  SingleQubitParams pre2;
  Entangler entangler = HeisenbergTimes{};
  SingleQubitParams post1;
  SingleQubitParams post2;

  Interaction interaction() const;
};

inline constexpr int kQuorumSize = 5;
inline constexpr int kParamsPerMeasurement = 15;
inline constexpr int kQuorumParamCount = kQuorumSize * kParamsPerMeasurement;

struct QuorumParams {
  std::array<MeasurementParams, kQuorumSize> measurements;

  /// Interaction shared by all entanglers; throws if they are mixed.
  Interaction interaction() const;
};

UnitaryMatrix single_qubit_gate(const SingleQubitParams& p);
UnitaryMatrix canonical_two_qubit(const CanonicalParams& b);

/// SWAP^a = 1 - P + e^{i a pi} P with P the singlet projector.
UnitaryMatrix swap_power(double alpha);

/// Built from the pulse sequence sz(1) sx(2) SWAP^a1 sz(1) SWAP^a2 sx(2) SWAP^a3.
UnitaryMatrix heisenberg_two_qubit(const HeisenbergTimes& a);

/// diag(1, e^{i a1 pi}, e^{i a2 pi}, e^{i a3 pi}) in the sorted Bell basis.
UnitaryMatrix heisenberg_bell_diagonal(const HeisenbergTimes& a);

/// Three ZZ evolutions conjugated into the xx, yy and zz frames.
UnitaryMatrix ising_two_qubit(const CanonicalParams& b);

UnitaryMatrix entangler_unitary(const Entangler& e);
UnitaryMatrix measurement_unitary(const MeasurementParams& m);

/// Columns Phi+, Psi+, Phi-, Psi- (eigenbasis of the canonical gate).
const ComplexMatrix& bell_basis_conventional();

/// Columns Psi+, Phi+, Phi-, Psi- (eigenbasis of the Heisenberg sequence).
const ComplexMatrix& bell_basis_sorted();

/// Five mutually unbiased measurement bases; U4 and U5 carry a CNOT-equivalent entangler.
QuorumParams standard_mub_params(Interaction interaction);

/// Basis changes for the nine product measurements, ordered xx, xy, ..., zz.
std::vector<UnitaryMatrix> nine_pauli_bases();

/// Sum of alphas (Heisenberg) or sum |beta| / pi (Ising).
double entangling_time(const Entangler& e);
double entangling_time(const MeasurementParams& m);
double entangling_time(const QuorumParams& q);

// Flat parameter vectors for the optimizers: per measurement
// pre1, pre2, entangler, post1, post2, three values each.
Eigen::VectorXd to_vector(const QuorumParams& q);
QuorumParams from_vector(const Eigen::VectorXd& x, Interaction interaction);

/// Triangle-wave reflection of x into [0, 2].
double reflect_into_period(double x);

/// Random quorum: angles uniform on [0, 2pi), alpha uniform on [0, 2), beta uniform on
/// [-pi/2, pi/2).
QuorumParams random_quorum(Interaction interaction, Rng& rng);

/// True when two unitaries agree up to a global phase within tol.
bool equal_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

}  // namespace noisyqst
