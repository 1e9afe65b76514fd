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
#include <stdexcept>
#include <string_view>
#include <vector>

#include "noisyqst/core.hpp"
#include "noisyqst/gates.hpp"

namespace noisyqst {

enum class Channel { depolarizing, over_under_rotation };

std::string_view to_string(Channel channel);
Channel parse_channel(std::string_view name);

// Noise on the two-qubit gate only. strength is zeta for the depolarizing
// channel and r for over- and under-rotation.
struct NoiseModel {
  Channel channel = Channel::depolarizing;
  Interaction interaction = Interaction::heisenberg;
  double strength = 0.0;

  void validate() const;
};

using Gammas = std::array<double, 3>;

class KrausSet {
 public:
  explicit KrausSet(std::vector<ComplexMatrix> operators, double tol = 1e-10);

  const std::vector<ComplexMatrix>& operators() const { return ops_; }
  Eigen::Index dim() const { return ops_.front().rows(); }
  std::size_t size() const { return ops_.size(); }

  /// rho -> sum M rho M^dagger
  ComplexMatrix apply(const ComplexMatrix& rho) const;
  /// X -> sum M^dagger X M (Heisenberg picture)
  ComplexMatrix apply_adjoint(const ComplexMatrix& x) const;

 private:
  std::vector<ComplexMatrix> ops_;
};

class DegeneratePovm : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Effects F_k = q_k (P'_k - 1/4) + 1/4. P'_k is the rescaled Hermitian
// operator whose traceless part has the norm of a rank-1 projector; under
// depolarizing noise it is the ideal projector, under over/under-rotation it
// need not be idempotent.
class Povm {
 public:
  explicit Povm(std::array<ComplexMatrix, 4> effects);

  const std::array<ComplexMatrix, 4>& effects() const { return effects_; }
  const std::array<double, 4>& qs() const { return qs_; }
  const std::array<ComplexMatrix, 4>& nominal_projectors() const { return nominal_; }

  /// Largest entrywise |P'^2 - P'| over the nominal operators.
  double projector_defect() const;

 private:
  std::array<ComplexMatrix, 4> effects_;
  std::array<double, 4> qs_;
  std::array<ComplexMatrix, 4> nominal_;
};

double depolarizing_q(double zeta, double normalized_time);

ComplexMatrix apply_depolarizing(const ComplexMatrix& x, double q);
DensityMatrix apply_depolarizing(const DensityMatrix& rho, double q);

Gammas ou_gammas_heisenberg(double r, const HeisenbergTimes& a);
Gammas ou_gammas_ising(double r, const CanonicalParams& b);

// Bell-diagonal dephasing maps. Both are self-adjoint, so they also act on effects.
ComplexMatrix apply_ou_heisenberg(const ComplexMatrix& x, const Gammas& gammas);
ComplexMatrix apply_ou_ising(const ComplexMatrix& x, const Gammas& gammas);
DensityMatrix apply_ou_heisenberg(const DensityMatrix& rho, const Gammas& gammas);
DensityMatrix apply_ou_ising(const DensityMatrix& rho, const Gammas& gammas);

KrausSet kraus_depolarizing(double q);
KrausSet kraus_ou_heisenberg(const Gammas& gammas);
KrausSet kraus_ou_ising(const Gammas& gammas);

/// (sum |Tr M|^2 + d) / (d^2 + d)
double average_gate_fidelity(const KrausSet& ks);

/// Kraus set of the residual noise on the entangler of a measurement.
KrausSet entangler_noise(const Entangler& entangler, const NoiseModel& noise);

/// Average gate fidelity of a noisy CNOT-equivalent entangler of the model's interaction.
double cnot_fidelity(const NoiseModel& noise);

/// Noise-free POVM of "apply U, then read out in the standard basis".
Povm ideal_povm(const UnitaryMatrix& u);

/// Unvalidated effects of a noisy measurement (the optimizer's inner loop).
std::array<ComplexMatrix, 4> effective_effects(const MeasurementParams& m, const NoiseModel& noise);

/// Effects pulled back through the circuit with the noise inserted after the entangler.
Povm effective_povm(const MeasurementParams& m, const NoiseModel& noise);

/// Same POVM computed by conjugating the pulled-back projectors with the Kraus set.
Povm effective_povm_kraus(const MeasurementParams& m, const NoiseModel& noise);

std::array<Povm, kQuorumSize> effective_povms(const QuorumParams& q, const NoiseModel& noise);

}  // namespace noisyqst
