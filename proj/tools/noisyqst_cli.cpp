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

// noisyqst: quorum quality, optimization and tomography sweeps from the command line.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "noisyqst/optimizer.hpp"
#include "noisyqst/quality.hpp"
#include "noisyqst/serialization.hpp"
#include "noisyqst/tomography.hpp"

namespace nq = noisyqst;

namespace {

// Bad input that should exit with the usage code.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string channel = "depolarizing";
  std::string interaction = "heisenberg";
  double strength = 0.0;
  std::uint64_t seed = 0;
  std::string out;
  int threads = 0;
  std::string config;
  bool verbose = false;

  nq::NoiseModel noise() const {
    try {
      nq::NoiseModel n{nq::parse_channel(channel), nq::parse_interaction(interaction), strength};
      n.validate();
      return n;
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  nq::Json json() const {
    return {{"channel", channel},
            {"interaction", interaction},
            {"zeta", nq::round_sig12(strength)},
            {"seed", seed}};
  }

  nq::LogSink log() const {
    if (!verbose) return {};
    return [](std::string_view line) { std::cerr << line << '\n'; };
  }
};

void add_common(CLI::App* sub, Common& c, bool with_seed = true) {
  sub->add_option("--channel", c.channel, "depolarizing | ou")->capture_default_str();
  sub->add_option("--interaction", c.interaction, "heisenberg | ising")->capture_default_str();
  sub->add_option("-r,--zeta", c.strength, "noise strength (zeta or r)")->capture_default_str();
  if (with_seed) sub->add_option("--seed", c.seed, "master seed")->capture_default_str();
  sub->add_option("--out", c.out, "output file (default: stdout)");
  sub->add_option("--threads", c.threads, "worker cap, 0 = all cores")->capture_default_str();
  sub->add_option("--config", c.config, "JSON file with option values");
  sub->add_flag("-v,--verbose", c.verbose, "log progress to stderr");
}

std::string config_value(const nq::Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string joined;
    for (const auto& item : v) joined += (joined.empty() ? "" : ",") + config_value(item);
    return joined;
  }
  return v.dump();
}

// Options given on the command line win over the config file.
void apply_config(CLI::App* sub, const std::string& path) {
  if (path.empty()) return;
  const nq::Json cfg = nq::read_json_file(path);
  if (!cfg.is_object()) throw nq::ParseError("config must be a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    // Echoed configs use snake_case; flags use dashes.
    std::string flag = key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    CLI::Option* opt = sub->get_option_no_throw("--" + flag);
    if (opt == nullptr || key == "config" || key == "help")
      throw nq::ParseError("unknown config key '" + key + "' for '" + sub->get_name() + "'");
    if (opt->count() > 0) continue;
    opt->add_result(config_value(value));
    opt->run_callback();
  }
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
  } else {
    nq::write_atomic(c.out, text);
  }
}

std::string dump(const nq::Json& j) { return j.dump(2) + "\n"; }

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      grid.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("invalid grid value '" + item + "'");
    }
  }
  if (grid.empty()) throw UsageError("empty noise grid");
  return grid;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

// ---------------------------------------------------------------------------

struct QualityCmd {
  Common c;
  std::string mub;
  std::string quorum;

  void run() {
    nq::QuorumParams q;
    if (!quorum.empty()) {
      q = nq::load_quorum(quorum);
      c.interaction = std::string(nq::to_string(q.interaction()));
    } else {
      try {
        q = nq::standard_mub_params(nq::parse_interaction(mub.empty() ? c.interaction : mub));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      c.interaction = std::string(nq::to_string(q.interaction()));
    }
    nq::Json cfg = c.json();
    if (!quorum.empty()) cfg["quorum"] = quorum;
    else cfg["mub"] = c.interaction;
    nq::Json out = nq::to_json(nq::evaluate_quorum(q, c.noise()));
    out["config"] = cfg;
    emit(c, dump(out));
  }
};

struct OptimizeCmd {
  Common c;
  std::string strategy = "mub-seeded";
  int max_iters = 200;
  std::string csv;

  void run() {
    nq::Strategy s;
    try {
      s = nq::parse_strategy(strategy);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    nq::OptimizerOptions opts;
    opts.seed = c.seed;
    opts.threads = c.threads;
    opts.max_iters = max_iters;
    const auto results = nq::optimize_quorum(c.noise(), s, opts, c.log());
    nq::Json cfg = c.json();
    cfg["strategy"] = strategy;
    cfg["max_iters"] = max_iters;
    nq::Json list = nq::Json::array();
    for (const auto& r : results) list.push_back(nq::to_json(r));
    emit(c, dump({{"config", cfg}, {"results", list}}));
    if (!csv.empty()) nq::write_atomic(csv, nq::results_csv(results));
  }
};

struct SweepCmd {
  Common c;
  std::string grid = "0,0.05,0.1";
  std::string schemes = "pauli9,mub,optimized";
  std::int64_t shots = 23040;
  int states = 1000;
  bool noise_ignorant = false;

  void run() {
    const auto points = parse_grid(grid);
    const auto names = split(schemes);
    for (const auto& n : names)
      if (n != "pauli9" && n != "mub" && n != "optimized")
        throw UsageError("unknown scheme '" + n + "'");
    nq::Json cfg = c.json();
    cfg.erase("zeta");
    cfg["grid"] = grid;
    cfg["schemes"] = schemes;
    cfg["shots"] = shots;
    cfg["states"] = states;
    cfg["noise_ignorant"] = noise_ignorant;

    std::string text = "# config " + cfg.dump() + "\n" + nq::reports_csv_header();
    for (double strength : points) {
      Common point = c;
      point.strength = strength;
      const nq::NoiseModel noise = point.noise();
      std::vector<nq::Scheme> list;
      for (const auto& n : names) {
        if (n == "pauli9") {
          list.push_back(nq::pauli_scheme());
        } else if (n == "mub") {
          list.push_back(nq::quorum_scheme(n, nq::standard_mub_params(noise.interaction), noise,
                                           !noise_ignorant));
        } else {
          nq::OptimizerOptions opts;
          opts.seed = c.seed;
          opts.threads = c.threads;
          const auto best = nq::optimize_quorum(noise, {}, opts).front();
          list.push_back(nq::quorum_scheme(n, best.params, noise, !noise_ignorant));
        }
      }
      nq::ExperimentOptions eo;
      eo.n_states = states;
      eo.total_shots = shots;
      eo.seed = c.seed;
      eo.threads = c.threads;
      for (const auto& r : nq::run_experiment(list, noise, eo, c.log()))
        text += nq::reports_csv_row(r);
    }
    emit(c, text);
  }
};

struct GateFidelityCmd {
  Common c;
  std::string gate = "cnot";

  void run() {
    if (gate != "cnot") throw UsageError("only the cnot gate is supported");
    nq::Json cfg = c.json();
    cfg.erase("seed");
    cfg["gate"] = gate;
    emit(c, dump({{"config", cfg}, {"fidelity", nq::round_sig12(nq::cnot_fidelity(c.noise()))}}));
  }
};

struct CoeffCmd {
  Common c;
  long samples = 1000000;
  int dim = 4;

  void run() {
    if (dim != 2 && dim != 4) throw UsageError("--dim must be 2 or 4");
    if (samples < 100000) throw UsageError("--samples must be at least 100000");
    nq::Rng rng(c.seed);
    const double slope = nq::estimate_log_coefficient(dim, samples, rng);
    nq::Json cfg = {{"seed", c.seed}, {"samples", samples}, {"dim", dim}};
    emit(c, dump({{"config", cfg}, {"coefficient", nq::round_sig12(slope)}}));
  }
};

struct SingleQubitCmd {
  Common c;
  double theta = -1.0;

  void run() {
    if (!(c.strength >= 0.0)) throw UsageError("r must be non-negative");
    const double opt = nq::single_qubit_optimal_angle(c.strength);
    nq::Json cfg = {{"r", nq::round_sig12(c.strength)}};
    nq::Json out = {{"theta_opt", nq::round_sig12(opt)},
                    {"q_noisy_opt", nq::round_sig12(nq::single_qubit_quality(opt, c.strength))}};
    if (theta >= 0.0) {
      cfg["theta"] = nq::round_sig12(theta);
      out["theta"] = nq::round_sig12(theta);
      out["q_noisy"] = nq::round_sig12(nq::single_qubit_quality(theta, c.strength));
    }
    out["config"] = cfg;
    emit(c, dump(out));
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quorum design for two-qubit state tomography with noisy entangling gates"};
  app.require_subcommand(1);

  QualityCmd quality;
  auto* q = app.add_subcommand("quality", "quality of a quorum under gate noise");
  add_common(q, quality.c, false);
  auto* mub_opt = q->add_option("--mub", quality.mub, "built-in MUB quorum: heisenberg | ising");
  q->add_option("--quorum", quality.quorum, "quorum JSON file")->excludes(mub_opt);

  OptimizeCmd optimize;
  auto* o = app.add_subcommand("optimize", "maximize the noisy quality");
  add_common(o, optimize.c);
  o->add_option("--strategy", optimize.strategy, "mub-seeded | multistart:N | annealing:N")
      ->capture_default_str();
  o->add_option("--max-iters", optimize.max_iters, "Powell iterations")->capture_default_str();
  o->add_option("--csv", optimize.csv, "also write a flat CSV here");

  SweepCmd sweep;
  auto* s = app.add_subcommand("sweep", "reconstruction infidelity over a noise grid");
  add_common(s, sweep.c);
  s->add_option("--grid", sweep.grid, "comma-separated noise strengths")->capture_default_str();
  s->add_option("--schemes", sweep.schemes, "pauli9,mub,optimized")->capture_default_str();
  s->add_option("--shots", sweep.shots, "total shots per state")->capture_default_str();
  s->add_option("--states", sweep.states, "random states per point")->capture_default_str();
  s->add_flag("--noise-ignorant", sweep.noise_ignorant, "reconstruct with the ideal POVMs");

  GateFidelityCmd gate;
  auto* g = app.add_subcommand("gate-fidelity", "average fidelity of the noisy CNOT");
  add_common(g, gate.c, false);
  g->add_option("--gate", gate.gate, "cnot")->capture_default_str();

  CoeffCmd coeff;
  auto* k = app.add_subcommand("coeff", "estimate the averaged log-probability slope");
  add_common(k, coeff.c);
  k->add_option("--samples", coeff.samples, "random states")->capture_default_str();
  k->add_option("--dim", coeff.dim, "2 or 4")->capture_default_str();

  SingleQubitCmd single;
  auto* sq = app.add_subcommand("single-qubit", "closed-form single-qubit optimum");
  add_common(sq, single.c, false);
  sq->add_option("--theta", single.theta, "also evaluate at this polar angle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (q->parsed()) {
      apply_config(q, quality.c.config);
      quality.run();
    } else if (o->parsed()) {
      apply_config(o, optimize.c.config);
      optimize.run();
    } else if (s->parsed()) {
      apply_config(s, sweep.c.config);
      sweep.run();
    } else if (g->parsed()) {
      apply_config(g, gate.c.config);
      gate.run();
    } else if (k->parsed()) {
      apply_config(k, coeff.c.config);
      coeff.run();
    } else if (sq->parsed()) {
      apply_config(sq, single.c.config);
      single.run();
    }
  } catch (const nq::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
