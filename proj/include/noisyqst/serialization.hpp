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

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "noisyqst/gates.hpp"
#include "noisyqst/noise.hpp"
#include "noisyqst/optimizer.hpp"
#include "noisyqst/quality.hpp"
#include "noisyqst/tomography.hpp"

namespace noisyqst {

using Json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nearest double to v printed with 12 significant digits.
double round_sig12(double v);

/// 12 significant digits, '.' decimal, shortest form.
std::string format_double(double v);

Json to_json(const QuorumParams& q);
Json to_json(const NoiseModel& noise);
Json to_json(const QualityReport& report);
Json to_json(const OptimizationResult& result);
Json to_json(const ExperimentReport& report);

QuorumParams quorum_from_json(const Json& j);
NoiseModel noise_from_json(const Json& j);

/// Reads and parses a JSON file; throws ParseError on I/O or syntax problems.
Json read_json_file(const std::filesystem::path& path);

QuorumParams load_quorum(const std::filesystem::path& path);

/// strategy,seed,q_geometric,q_noisy,entangling_time_total,t1,...,t5
std::string results_csv(std::span<const OptimizationResult> results);

/// scheme,zeta_or_r,n_states,total_shots,mean_infidelity,sem,seed
std::string reports_csv_header();
std::string reports_csv_row(const ExperimentReport& report);

/// Writes to path.tmp and renames over path.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace noisyqst
