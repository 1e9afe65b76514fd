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


#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "noisyqst/serialization.hpp"

namespace noisyqst {
namespace {

namespace fs = std::filesystem;

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

TEST(Formatting, TwelveSignificantDigits) {
  EXPECT_EQ(format_double(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_double(0.03125), "0.03125");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(1e-4), "1e-04");
  EXPECT_EQ(round_sig12(0.1 + 0.2), 0.3);
  EXPECT_EQ(round_sig12(123456789.0123456), 123456789.012);
  EXPECT_EQ(round_sig12(-1e-300), -1e-300);
  EXPECT_EQ(round_sig12(0.0), 0.0);
}

TEST(QuorumJson, RoundTrip) {
  Rng rng(1);
  for (auto interaction : {Interaction::heisenberg, Interaction::ising}) {
    const QuorumParams q = random_quorum(interaction, rng);
    const QuorumParams back = quorum_from_json(Json::parse(to_json(q).dump()));
    EXPECT_EQ(back.interaction(), interaction);
    EXPECT_LT((to_vector(back) - to_vector(q)).cwiseAbs().maxCoeff(), 1e-10);
    // A second trip is exact.
    EXPECT_EQ(to_vector(quorum_from_json(to_json(back))), to_vector(back));
  }
}

TEST(QuorumJson, RejectsMalformedInput) {
  Json good = to_json(standard_mub_params(Interaction::heisenberg));
  EXPECT_THROW(quorum_from_json(Json::array()), ParseError);

  Json j = good;
  j.erase("interaction");
  EXPECT_THROW(quorum_from_json(j), ParseError);

  j = good;
  j["interaction"] = "xy";
  EXPECT_THROW(quorum_from_json(j), ParseError);

  j = good;
  j["measurements"].erase(4);
  EXPECT_THROW(quorum_from_json(j), ParseError);

  j = good;
  j["measurements"][0]["pre1"] = Json::array({1, 2});
  EXPECT_THROW(quorum_from_json(j), ParseError);

  j = good;
  j["measurements"][0]["post2"][1] = "x";
  EXPECT_THROW(quorum_from_json(j), ParseError);

  j = good;
  j["measurements"][3]["entangler"] = Json::array({-0.1, 0.5, 0.5});
  EXPECT_THROW(quorum_from_json(j), ParseError);
}

TEST(NoiseJson, RoundTripAndErrors) {
  const NoiseModel n{Channel::over_under_rotation, Interaction::ising, 0.2};
  const NoiseModel back = noise_from_json(to_json(n));
  EXPECT_EQ(back.channel, n.channel);
  EXPECT_EQ(back.interaction, n.interaction);
  EXPECT_EQ(back.strength, n.strength);
  Json j = to_json(n);
  j["channel"] = "amplitude";
  EXPECT_THROW(noise_from_json(j), ParseError);
  j = to_json(n);
  j["strength"] = -1.0;
  EXPECT_THROW(noise_from_json(j), ParseError);
  j.erase("strength");
  EXPECT_THROW(noise_from_json(j), ParseError);
}

TEST(ReportJson, Fields) {
  const NoiseModel noise{Channel::depolarizing, Interaction::heisenberg, 0.0};
  const Json j = to_json(evaluate_quorum(standard_mub_params(noise.interaction), noise));
  EXPECT_EQ(j.at("q_noisy").get<double>(), 0.03125);
  EXPECT_EQ(j.at("per_measurement_q").size(), 5u);
  EXPECT_EQ(j.at("entangling_times").size(), 5u);

  const ExperimentReport r{"mub", 0.05, 1000, 23040, 0.0123456789012345, 1e-4, 7};
  const Json e = to_json(r);
  EXPECT_EQ(e.at("scheme"), "mub");
  EXPECT_EQ(e.at("mean_infidelity").get<double>(), 0.0123456789012);
  EXPECT_EQ(reports_csv_row(r), "mub,0.05,1000,23040,0.0123456789012,1e-04,7\n");
}

TEST(Csv, Shapes) {
  EXPECT_EQ(reports_csv_header(), "scheme,zeta_or_r,n_states,total_shots,mean_infidelity,sem,seed\n");
  OptimizationResult a;
  a.params = standard_mub_params(Interaction::ising);
  a.strategy = "single";
  a.seed = 3;
  a.q_noisy = 0.02;
  a.q_geometric = 0.03125;
  a.entangling_time_total = 0.5;
  const std::vector<OptimizationResult> rs{a, a};
  const std::string csv = results_csv(rs);
  EXPECT_EQ(count_lines(csv), 3);
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "strategy,seed,q_geometric,q_noisy,entangling_time_total,t1,t2,t3,t4,t5");
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 9);
  EXPECT_EQ(row.rfind("single,3,0.03125,0.02,0.5,", 0), 0u);
}

TEST(Files, AtomicWriteAndRead) {
  const fs::path dir = fs::temp_directory_path() / "noisyqst_serialization_test";
  fs::create_directories(dir);
  const fs::path p = dir / "q.json";
  write_atomic(p, to_json(standard_mub_params(Interaction::heisenberg)).dump(2));
  EXPECT_FALSE(fs::exists(dir / "q.json.tmp"));
  const QuorumParams q = load_quorum(p);
  EXPECT_LT((to_vector(q) - to_vector(standard_mub_params(Interaction::heisenberg))).cwiseAbs().maxCoeff(),
            1e-11);

  write_atomic(p, "{\"interaction\": ");
  EXPECT_THROW(read_json_file(p), ParseError);
  EXPECT_THROW(load_quorum(dir / "missing.json"), ParseError);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace noisyqst
