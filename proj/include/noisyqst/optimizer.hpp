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

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "noisyqst/core.hpp"
#include "noisyqst/gates.hpp"
#include "noisyqst/noise.hpp"

namespace noisyqst {

struct AnnealingSchedule {
  double t0 = 1.0;
  double cooling = 0.95;
  int steps_per_temp = 100;
  double proposal_std = 0.1;
  /// Annealing stops once the temperature falls below t0 * t_min_ratio.
  double t_min_ratio = 1e-4;
};

struct OptimizerOptions {
  int max_iters = 200;
  double f_tol = 1e-10;
  double x_tol = 1e-8;
  AnnealingSchedule sa;
  std::uint64_t seed = 0;
  /// Worker cap for independent starts; 0 means available parallelism.
  int threads = 0;

  void validate() const;
};

struct TrajectoryPoint {
  int iteration = 0;
  double objective = 0.0;
};

struct MinimizeResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int iterations = 0;
  std::vector<TrajectoryPoint> trajectory;
};

class NonFiniteObjective : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;
using LogSink = std::function<void(std::string_view)>;

/// Direction-set minimization with Brent line searches. Throws NonFiniteObjective.
MinimizeResult powell_minimize(const Objective& f, const Eigen::VectorXd& x0,
                               const OptimizerOptions& opts);

/// Metropolis search with Gaussian proposals and geometric cooling, then a Powell polish
/// of the best point seen.
MinimizeResult simulated_annealing(const Objective& f, const Eigen::VectorXd& x0,
                                   const OptimizerOptions& opts, Rng& rng);

// ---------------------------------------------------------------------------
// Diversity of starting points

inline constexpr double kJaccardBinWidth = 0.05;
inline constexpr int kJaccardBins = 20;  // covers [-1/4, 3/4]

/// Binned multiset Jaccard distance between the projector overlap profiles of two quorums.
double quorum_distance(const QuorumParams& a, const QuorumParams& b);

/// mean - std of quorum_distance over random pairs.
double diversity_threshold(Interaction interaction, Rng& rng, int pairs = 10000);

/// Random quorums pairwise at least the diversity threshold apart. The threshold is relaxed
/// by 10% after 100 n consecutive rejections.
std::vector<QuorumParams> diverse_starts(int n, const NoiseModel& noise, Rng& rng,
                                         const LogSink& log = {});

// ---------------------------------------------------------------------------

struct Strategy {
  enum class Kind { mub_seeded, multistart, annealing };
  Kind kind = Kind::mub_seeded;
  /// Starts for multistart, runs for annealing.
  int count = 1;

  std::string label() const;
};

/// "mub-seeded", "multistart:N", "annealing:N"
Strategy parse_strategy(std::string_view text);

struct OptimizationResult {
  QuorumParams params;
  double q_noisy = 0.0;
  double q_geometric = 0.0;
  double entangling_time_total = 0.0;
  double start_q_noisy = 0.0;
  std::vector<TrajectoryPoint> trajectory;
  std::string start_label;
  std::string strategy;
  std::uint64_t seed = 0;
};

class OptimizationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// -ln Q_N of a flat parameter vector, with a large finite penalty for degenerate quorums.
double quorum_objective(const Eigen::VectorXd& x, const NoiseModel& noise);

/// Maximizes Q_N; results sorted by q_noisy, best first.
std::vector<OptimizationResult> optimize_quorum(const NoiseModel& noise, const Strategy& strategy,
                                                const OptimizerOptions& opts,
                                                const LogSink& log = {});

}  // namespace noisyqst
