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

#include "noisyqst/serialization.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace noisyqst {

double round_sig12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 12);
  double out = v;
  std::from_chars(buf.data(), res.ptr, out);
  return out;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), round_sig12(v));
  return std::string(buf.data(), res.ptr);
}

namespace {

Json triple(double a, double b, double c) {
  return Json::array({round_sig12(a), round_sig12(b), round_sig12(c)});
}

Json to_json(const SingleQubitParams& p) { return triple(p.phi, p.psi, p.chi); }

Json entangler_json(const Entangler& e) {
  if (const auto* h = std::get_if<HeisenbergTimes>(&e)) return triple(h->alpha1, h->alpha2, h->alpha3);
  const auto& c = std::get<CanonicalParams>(e);
  return triple(c.beta_x, c.beta_y, c.beta_z);
}

std::array<double, 3> read_triple(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  const Json& v = j.at(key);
  if (!v.is_array() || v.size() != 3) throw ParseError(std::string("'") + key + "' must be 3 numbers");
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!v[i].is_number()) throw ParseError(std::string("'") + key + "' must be 3 numbers");
    out[i] = v[i].get<double>();
    if (!std::isfinite(out[i])) throw ParseError(std::string("'") + key + "' is not finite");
  }
  return out;
}

SingleQubitParams read_local(const Json& j, const char* key) {
  const auto t = read_triple(j, key);
  return {t[0], t[1], t[2]};
}

std::string read_string(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw ParseError(std::string("missing string field '") + key + "'");
  return j.at(key).get<std::string>();
}

}  // namespace

Json to_json(const QuorumParams& q) {
  Json ms = Json::array();
  for (const auto& m : q.measurements)
    ms.push_back({{"pre1", to_json(m.pre1)},
                  {"pre2", to_json(m.pre2)},
                  {"entangler", entangler_json(m.entangler)},
                  {"post1", to_json(m.post1)},
                  {"post2", to_json(m.post2)}});
  return {{"interaction", std::string(to_string(q.interaction()))}, {"measurements", ms}};
}

Json to_json(const NoiseModel& noise) {
  return {{"channel", std::string(to_string(noise.channel))},
          {"interaction", std::string(to_string(noise.interaction))},
          {"strength", round_sig12(noise.strength)}};
}

Json to_json(const QualityReport& report) {
  Json qs = Json::array();
  for (const auto& row : report.per_measurement_q) {
    Json r = Json::array();
    for (double q : row) r.push_back(round_sig12(q));
    qs.push_back(r);
  }
  Json times = Json::array();
  for (double t : report.entangling_times) times.push_back(round_sig12(t));
  return {{"q_geometric", round_sig12(report.q_geometric)},
          {"q_noisy", round_sig12(report.q_noisy)},
          {"per_measurement_q", qs},
          {"entangling_times", times}};
}

Json to_json(const OptimizationResult& result) {
  Json traj = Json::array();
  for (const auto& p : result.trajectory) traj.push_back({p.iteration, round_sig12(p.objective)});
  Json times = Json::array();
  for (const auto& m : result.params.measurements) times.push_back(round_sig12(entangling_time(m)));
  return {{"strategy", result.strategy},
          {"start_label", result.start_label},
          {"seed", result.seed},
          {"q_geometric", round_sig12(result.q_geometric)},
          {"q_noisy", round_sig12(result.q_noisy)},
          {"start_q_noisy", round_sig12(result.start_q_noisy)},
          {"entangling_time_total", round_sig12(result.entangling_time_total)},
          {"entangling_times", times},
          {"params", to_json(result.params)},
          {"trajectory", traj}};
}

Json to_json(const ExperimentReport& report) {
  return {{"scheme", report.scheme_label},
          {"zeta_or_r", round_sig12(report.noise_strength)},
          {"n_states", report.n_states},
          {"total_shots", report.total_shots},
          {"mean_infidelity", round_sig12(report.mean_infidelity)},
          {"sem", round_sig12(report.sem)},
          {"seed", report.seed}};
}

QuorumParams quorum_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("quorum must be a JSON object");
  Interaction interaction;
  try {
    interaction = parse_interaction(read_string(j, "interaction"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  if (!j.contains("measurements") || !j.at("measurements").is_array() ||
      j.at("measurements").size() != static_cast<std::size_t>(kQuorumSize))
    throw ParseError("'measurements' must be an array of 5 objects");
  QuorumParams q;
  for (int i = 0; i < kQuorumSize; ++i) {
    const Json& m = j.at("measurements")[static_cast<std::size_t>(i)];
    if (!m.is_object()) throw ParseError("measurement entries must be objects");
    auto& out = q.measurements[i];
    out.pre1 = read_local(m, "pre1");
    out.pre2 = read_local(m, "pre2");
    const auto e = read_triple(m, "entangler");
    if (interaction == Interaction::heisenberg) {
      if (e[0] < 0 || e[1] < 0 || e[2] < 0) throw ParseError("exchange times must be non-negative");
      out.entangler = HeisenbergTimes{e[0], e[1], e[2]};
    } else {
      out.entangler = CanonicalParams{e[0], e[1], e[2]};
    }
    out.post1 = read_local(m, "post1");
    out.post2 = read_local(m, "post2");
  }
  return q;
}

NoiseModel noise_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("noise model must be a JSON object");
  NoiseModel n;
  try {
    n.channel = parse_channel(read_string(j, "channel"));
    n.interaction = parse_interaction(read_string(j, "interaction"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  if (!j.contains("strength") || !j.at("strength").is_number())
    throw ParseError("missing numeric field 'strength'");
  n.strength = j.at("strength").get<double>();
  try {
    n.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return n;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
}

QuorumParams load_quorum(const std::filesystem::path& path) {
  return quorum_from_json(read_json_file(path));
}

std::string results_csv(std::span<const OptimizationResult> results) {
  std::ostringstream out;
  out << "strategy,seed,q_geometric,q_noisy,entangling_time_total,t1,t2,t3,t4,t5\n";
  for (const auto& r : results) {
    out << r.strategy << ',' << r.seed << ',' << format_double(r.q_geometric) << ','
        << format_double(r.q_noisy) << ',' << format_double(r.entangling_time_total);
    for (const auto& m : r.params.measurements) out << ',' << format_double(entangling_time(m));
    out << '\n';
  }
  return out.str();
}

std::string reports_csv_header() {
  return "scheme,zeta_or_r,n_states,total_shots,mean_infidelity,sem,seed\n";
}

std::string reports_csv_row(const ExperimentReport& r) {
  std::ostringstream out;
  out << r.scheme_label << ',' << format_double(r.noise_strength) << ',' << r.n_states << ','
      << r.total_shots << ',' << format_double(r.mean_infidelity) << ',' << format_double(r.sem)
      << ',' << r.seed << '\n';
  return out.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace noisyqst
