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
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "noisyqst/core.hpp"
#include "noisyqst/gates.hpp"
#include "noisyqst/noise.hpp"
#include "noisyqst/optimizer.hpp"

namespace noisyqst {

using Counts = std::array<std::int64_t, 4>;

class NotInformationallyComplete : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Multinomial outcome counts of n_shots measurements of rho.
Counts sample_measurement(const DensityMatrix& rho, const Povm& povm, std::int64_t n_shots,
                          Rng& rng);

struct MlOptions {
  int max_iters = 5000;
  /// Stop once the per-shot log-likelihood improves by less than this.
  double ll_tol = 1e-12;
};

struct MlResult {
  DensityMatrix rho = DensityMatrix::maximally_mixed(4);
  int iterations = 0;
  /// Per-shot log-likelihood after each accepted step, starting from 1/4.
  std::vector<double> log_likelihood;
};

// Maximum-likelihood state from counts. Each step is R rho R, falling back to
// the diluted (1 + eps R) rho (1 + eps R) with halving eps whenever the plain
// step would lower the likelihood.
MlResult ml_reconstruct_detailed(std::span<const Counts> counts, std::span<const Povm> povms,
                                 const MlOptions& opts = {});
DensityMatrix ml_reconstruct(std::span<const Counts> counts, std::span<const Povm> povms,
                             const MlOptions& opts = {});

/// Rank of the real span of the effects (16 for an informationally complete two-qubit set).
int effect_span_rank(std::span<const Povm> povms);

struct Scheme {
  std::string label;
  /// POVMs that generate the data.
  std::vector<Povm> measurements;
  /// POVMs used by the reconstruction; empty means the true ones.
  std::vector<Povm> assumed;
};

/// Nine product bases, untouched by entangler noise.
Scheme pauli_scheme(std::string label = "pauli9");

/// A quorum measured through the noisy entanglers. A noise-ignorant scheme reconstructs
/// with the ideal POVMs.
Scheme quorum_scheme(std::string label, const QuorumParams& quorum, const NoiseModel& noise,
                     bool noise_aware = true);

struct ExperimentOptions {
  int n_states = 1000;
  std::int64_t total_shots = 23040;
  std::uint64_t seed = 0;
  int threads = 0;
  MlOptions ml;
};

struct ExperimentReport {
  std::string scheme_label;
  double noise_strength = 0.0;
  int n_states = 0;
  /// Shots actually used (total floor-divided over the measurements).
  std::int64_t total_shots = 0;
  double mean_infidelity = 0.0;
  double sem = 0.0;
  std::uint64_t seed = 0;
};

// Every scheme sees the same random states; the sampling stream of a state is
// keyed by the scheme label, so a scheme's report does not depend on which
// other schemes run alongside it.
std::vector<ExperimentReport> run_experiment(std::span<const Scheme> schemes,
                                             const NoiseModel& noise,
                                             const ExperimentOptions& opts,
                                             const LogSink& log = {});

}  // namespace noisyqst
