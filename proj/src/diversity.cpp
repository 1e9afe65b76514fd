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
#include <array>
#include <cmath>
#include <string>

#include "noisyqst/optimizer.hpp"

namespace noisyqst {

namespace {

constexpr int kProjectors = 4 * kQuorumSize;
using Histogram = std::array<int, kJaccardBins>;
using Profile = std::array<Histogram, kProjectors>;

// Histogram of Tr(P_i P_j) - 1/4 over the other 19 projectors of the quorum.
Profile profile(const QuorumParams& q) {
  std::array<ComplexVector, kProjectors> states;
  for (int j = 0; j < kQuorumSize; ++j) {
    const UnitaryMatrix u = measurement_unitary(q.measurements[j]);
    for (int k = 0; k < 4; ++k) states[4 * j + k] = u.matrix().row(k).adjoint();
  }
  Profile p{};
  for (int a = 0; a < kProjectors; ++a) {
    for (int b = 0; b < kProjectors; ++b) {
      if (a == b) continue;
      const double v = std::norm(states[a].dot(states[b])) - 0.25;
      const int bin = static_cast<int>(std::floor((v + 0.25) / kJaccardBinWidth));
      ++p[a][std::clamp(bin, 0, kJaccardBins - 1)];
    }
  }
  return p;
}

double jaccard(const Histogram& a, const Histogram& b) {
  int lo = 0, hi = 0;
  for (int i = 0; i < kJaccardBins; ++i) {
    lo += std::min(a[i], b[i]);
    hi += std::max(a[i], b[i]);
  }
  return 1.0 - static_cast<double>(lo) / hi;
}

double directed(const Profile& a, const Profile& b) {
  double sum = 0.0;
  for (const auto& ha : a) {
    double best = 1.0;
    for (const auto& hb : b) best = std::min(best, jaccard(ha, hb));
    sum += best;
  }
  return sum / kProjectors;
}

double profile_distance(const Profile& a, const Profile& b) {
  return 0.5 * (directed(a, b) + directed(b, a));
}

}  // namespace

double quorum_distance(const QuorumParams& a, const QuorumParams& b) {
  return profile_distance(profile(a), profile(b));
}

double diversity_threshold(Interaction interaction, Rng& rng, int pairs) {
  if (pairs < 2) throw std::invalid_argument("need at least two pairs");
  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const Profile a = profile(random_quorum(interaction, rng));
    const Profile b = profile(random_quorum(interaction, rng));
    const double d = profile_distance(a, b);
    const double delta = d - mean;
    mean += delta / (i + 1);
    m2 += delta * (d - mean);
  }
  return mean - std::sqrt(m2 / (pairs - 1));
}

std::vector<QuorumParams> diverse_starts(int n, const NoiseModel& noise, Rng& rng,
                                         const LogSink& log) {
  if (n < 1) throw std::invalid_argument("need at least one start");
  noise.validate();
  double threshold = diversity_threshold(noise.interaction, rng);
  if (log) log("diversity threshold " + std::to_string(threshold));

  std::vector<QuorumParams> accepted;
  std::vector<Profile> profiles;
  long rejections = 0;
  while (static_cast<int>(accepted.size()) < n) {
    QuorumParams candidate = random_quorum(noise.interaction, rng);
    const Profile p = profile(candidate);
    const bool ok = std::all_of(profiles.begin(), profiles.end(), [&](const Profile& other) {
      return profile_distance(p, other) >= threshold;
    });
    if (ok) {
      accepted.push_back(std::move(candidate));
      profiles.push_back(p);
      rejections = 0;
    } else if (++rejections >= 100L * n) {
      threshold *= 0.9;
      rejections = 0;
      if (log)
        log("diversity threshold relaxed to " + std::to_string(threshold) + " after " +
            std::to_string(accepted.size()) + " accepted starts");
    }
  }
  return accepted;
}

}  // namespace noisyqst
