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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <mutex>
#include <optional>

#include "noisyqst/optimizer.hpp"
#include "noisyqst/quality.hpp"
#include "parallel.hpp"

namespace noisyqst {

namespace {

// Substream tags.
constexpr std::uint64_t kTagDiversity = 1;
constexpr std::uint64_t kTagAnnealing = 2;
constexpr std::uint64_t kTagAnnealingWalk = 3;

constexpr double kDegeneratePenalty = 1e6;

struct Start {
  QuorumParams params;
  std::string label;
};

}  // namespace

std::string Strategy::label() const {
  switch (kind) {
    case Kind::mub_seeded:
      return "mub-seeded";
    case Kind::multistart:
      return "multistart:" + std::to_string(count);
    case Kind::annealing:
      return "annealing:" + std::to_string(count);
  }
  return {};
}

Strategy parse_strategy(std::string_view text) {
  if (text == "mub-seeded") return {Strategy::Kind::mub_seeded, 1};
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  Strategy s;
  if (head == "multistart") {
    s.kind = Strategy::Kind::multistart;
  } else if (head == "annealing") {
    s.kind = Strategy::Kind::annealing;
  } else {
    throw std::invalid_argument("unknown strategy '" + std::string(text) + "'");
  }
  if (colon == std::string_view::npos) return s;
  const std::string_view num = text.substr(colon + 1);
  const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), s.count);
  if (ec != std::errc() || ptr != num.data() + num.size() || s.count < 1)
    throw std::invalid_argument("invalid count in strategy '" + std::string(text) + "'");
  return s;
}

double quorum_objective(const Eigen::VectorXd& x, const NoiseModel& noise) {
  const double lq = log_noisy_quality(from_vector(x, noise.interaction), noise);
  return std::isfinite(lq) ? -lq : kDegeneratePenalty;
}

std::vector<OptimizationResult> optimize_quorum(const NoiseModel& noise, const Strategy& strategy,
                                                const OptimizerOptions& opts,
                                                const LogSink& log) {
  noise.validate();
  opts.validate();
  if (strategy.count < 1) throw std::invalid_argument("strategy count must be positive");

  std::vector<Start> starts;
  switch (strategy.kind) {
    case Strategy::Kind::mub_seeded:
      starts.push_back({standard_mub_params(noise.interaction), "mub"});
      break;
    case Strategy::Kind::multistart: {
      Rng rng = substream(opts.seed, kTagDiversity, 0);
      auto qs = diverse_starts(strategy.count, noise, rng, log);
      for (std::size_t i = 0; i < qs.size(); ++i)
        starts.push_back({std::move(qs[i]), "diverse-" + std::to_string(i)});
      break;
    }
    case Strategy::Kind::annealing:
      for (int i = 0; i < strategy.count; ++i) {
        Rng rng = substream(opts.seed, kTagAnnealing, static_cast<std::uint64_t>(i));
        starts.push_back({random_quorum(noise.interaction, rng), "anneal-" + std::to_string(i)});
      }
      break;
  }

  const Objective f = [&noise](const Eigen::VectorXd& x) { return quorum_objective(x, noise); };
  const int n = static_cast<int>(starts.size());
  std::vector<std::optional<OptimizationResult>> slots(n);
  std::vector<std::string> failures(n);
  std::mutex log_mutex;

  detail::parallel_for(n, opts.threads, [&](int i) {
    try {
      const Eigen::VectorXd x0 = to_vector(starts[i].params);
      MinimizeResult m;
      if (strategy.kind == Strategy::Kind::annealing) {
        Rng rng = substream(opts.seed, kTagAnnealingWalk, static_cast<std::uint64_t>(i));
        m = simulated_annealing(f, x0, opts, rng);
      } else {
        m = powell_minimize(f, x0, opts);
      }
      OptimizationResult r;
      r.params = from_vector(m.x, noise.interaction);
      const QualityReport rep = evaluate_quorum(r.params, noise);
      r.q_noisy = rep.q_noisy;
      r.q_geometric = rep.q_geometric;
      r.entangling_time_total = entangling_time(r.params);
      r.start_q_noisy = std::exp(-f(x0));
      r.trajectory = std::move(m.trajectory);
      r.start_label = starts[i].label;
      r.strategy = strategy.label();
      r.seed = opts.seed;
      slots[i] = std::move(r);
      if (log) {
        std::lock_guard lock(log_mutex);
        log(starts[i].label + ": Q_N = " + std::to_string(slots[i]->q_noisy));
      }
    } catch (const std::exception& e) {
      failures[i] = starts[i].label + ": " + e.what();
    }
  });

  std::vector<OptimizationResult> results;
  std::string diagnostics;
  for (int i = 0; i < n; ++i) {
    if (slots[i]) {
      results.push_back(std::move(*slots[i]));
    } else {
      diagnostics += "\n  " + failures[i];
    }
  }
  if (results.empty()) throw OptimizationFailed("all starts failed:" + diagnostics);
  if (log && !diagnostics.empty()) log("failed starts:" + diagnostics);
  std::stable_sort(results.begin(), results.end(),
                   [](const auto& a, const auto& b) { return a.q_noisy > b.q_noisy; });
  return results;
}

}  // namespace noisyqst
