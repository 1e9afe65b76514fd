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

#include <cmath>

#include "noisyqst/optimizer.hpp"

namespace noisyqst {

MinimizeResult simulated_annealing(const Objective& f, const Eigen::VectorXd& x0,
                                   const OptimizerOptions& opts, Rng& rng) {
  opts.validate();
  const auto& sa = opts.sa;
  std::normal_distribution<double> gauss(0.0, sa.proposal_std);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Eigen::VectorXd x = x0;
  double fx = f(x);
  if (!std::isfinite(fx)) throw NonFiniteObjective("objective is not finite at the starting point");
  Eigen::VectorXd best = x;
  double f_best = fx;

  MinimizeResult out;
  out.trajectory.push_back({0, f_best});
  const double t_min = sa.t0 * sa.t_min_ratio;
  int level = 0;
  for (double temp = sa.t0; temp > t_min; temp *= sa.cooling) {
    ++level;
    for (int step = 0; step < sa.steps_per_temp; ++step) {
      Eigen::VectorXd y = x;
      for (Eigen::Index i = 0; i < y.size(); ++i) y(i) += gauss(rng);
      const double fy = f(y);
      if (!std::isfinite(fy)) continue;
      if (fy <= fx || unit(rng) < std::exp(-(fy - fx) / temp)) {
        x = std::move(y);
        fx = fy;
        if (fx < f_best) {
          best = x;
          f_best = fx;
        }
      }
    }
    out.trajectory.push_back({level, f_best});
  }

  MinimizeResult polished = powell_minimize(f, best, opts);
  for (auto& p : polished.trajectory) {
    p.iteration += level;
    out.trajectory.push_back(p);
  }
  out.x = std::move(polished.x);
  out.f = polished.f;
  out.iterations = level + polished.iterations;
  return out;
}

}  // namespace noisyqst
