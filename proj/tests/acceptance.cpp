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


// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and time
// budgets are fixed here; the exit status is nonzero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "noisyqst/optimizer.hpp"
#include "noisyqst/quality.hpp"
#include "noisyqst/tomography.hpp"

namespace {

namespace nq = noisyqst;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) ok = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (cond ? "" : " [x]");
  }
};

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double max_abs(const nq::ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// 1. Geometric quality of the standard MUB quorum.
Outcome calibration() {
  Outcome o;
  for (auto interaction : {nq::Interaction::heisenberg, nq::Interaction::ising}) {
    const nq::NoiseModel noise{nq::Channel::depolarizing, interaction, 0.0};
    const auto povms = nq::effective_povms(nq::standard_mub_params(interaction), noise);
    const double q = nq::geometric_quality(std::span<const nq::Povm>(povms));
    o.require(std::abs(q - 1.0 / 32) < 1e-10,
              std::string(nq::to_string(interaction)) + " Q=" + fmt(q, 12));
  }
  return o;
}

// 2. Noisy CNOT fidelities: reported values and closed forms.
Outcome gate_fidelity() {
  Outcome o;
  const double pi = nq::kPi;
  struct Case {
    nq::NoiseModel noise;
    double reported, tol, closed_form;
  };
  const double qh = std::exp(-0.08 * pi), qi = std::exp(-0.034 * pi / 4), g = std::exp(-0.1 * pi);
  const std::vector<Case> cases{
      {{nq::Channel::depolarizing, nq::Interaction::heisenberg, 0.08}, 0.83, 0.005, (3 * qh + 1) / 4},
      {{nq::Channel::depolarizing, nq::Interaction::ising, 0.034}, 0.98, 0.002, (3 * qi + 1) / 4},
      {{nq::Channel::over_under_rotation, nq::Interaction::heisenberg, 0.2}, 0.85, 0.005,
       0.5 + 0.4 * g + 0.1 * g * g},
      {{nq::Channel::over_under_rotation, nq::Interaction::ising, 0.2}, 0.89, 0.005, 0.6 + 0.4 * g}};
  for (const auto& c : cases) {
    const double f = nq::cnot_fidelity(c.noise);
    o.require(std::abs(f - c.reported) <= c.tol && std::abs(f - c.closed_form) < 1e-12,
              std::string(nq::to_string(c.noise.channel)) + "/" +
                  std::string(nq::to_string(c.noise.interaction)) + " F=" + fmt(f));
  }
  return o;
}

// 3. MUB-seeded Powell recovers the closed-form optima.
Outcome closed_form_recovery() {
  Outcome o;
  for (double zeta : {0.01, 0.02, 0.03}) {
    for (auto interaction : {nq::Interaction::heisenberg, nq::Interaction::ising}) {
      const auto t0 = std::chrono::steady_clock::now();
      const nq::NoiseModel noise{nq::Channel::depolarizing, interaction, zeta};
      const nq::OptimizationResult r = nq::optimize_quorum(noise, {}, {}).front();
      double err = 0.0, expected_q = 0.0;
      if (interaction == nq::Interaction::heisenberg) {
        const double a = nq::analytic_alpha_max(zeta, nq::kTwoQubitExponent);
        for (int j : {3, 4}) {
          const auto h = std::get<nq::HeisenbergTimes>(r.params.measurements[j].entangler);
          err = std::max({err, std::abs(h.alpha1 - a), std::abs(h.alpha3 - a)});
        }
        expected_q = nq::heisenberg_family_quality(a, a, a, a, zeta, nq::kTwoQubitExponent);
      } else {
        const double b = nq::analytic_beta_max(zeta, nq::kTwoQubitExponent);
        for (int j : {3, 4}) {
          const auto c = std::get<nq::CanonicalParams>(r.params.measurements[j].entangler);
          err = std::max(err, std::abs(std::abs(c.beta_y) - b));
        }
        expected_q = nq::ising_family_quality(b, b, zeta, nq::kTwoQubitExponent);
      }
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const double q_err = std::abs(r.q_noisy - expected_q);
      o.require(err < 1e-3 && q_err < 1e-6 && secs < 120.0,
                std::string(nq::to_string(interaction)) + " zeta=" + fmt(zeta) + " dparam=" +
                    fmt(err, 2) + " dQ=" + fmt(q_err, 2) + " t=" + fmt(secs, 3) + "s");
    }
  }
  return o;
}

// 4. Single-qubit optimum angle: Powell on -Q_N against the closed form.
Outcome single_qubit() {
  Outcome o;
  double q0 = 0.0;
  for (double r : {0.0, 0.1, 0.3, 1.0}) {
    const nq::Objective f = [r](const Eigen::VectorXd& x) {
      return -nq::single_qubit_quality(x(0), r);
    };
    const nq::MinimizeResult m = nq::powell_minimize(f, Eigen::VectorXd::Constant(1, 0.5), {});
    const double numeric = std::abs(m.x(0));
    const double analytic = std::atan(std::sqrt(81 * r * r / 16 + 2) - 9 * r / 4);
    o.require(std::abs(numeric - analytic) < 1e-6,
              "r=" + fmt(r) + " dtheta=" + fmt(std::abs(numeric - analytic), 2));
    if (r == 0.0) q0 = -m.f;
  }
  o.require(std::abs(q0 - 1.0) < 1e-10, "Q(r=0)=" + fmt(q0, 12));
  return o;
}

// 5. Averaged log-probability slope for random two-qubit states.
Outcome coefficient() {
  Outcome o;
  nq::Rng rng(20240601);
  const double c = nq::estimate_log_coefficient(4, 1000000, rng);
  o.require(std::abs(c - 1.195) <= 0.05, "c=" + fmt(c));
  return o;
}

// 6. Reconstruction experiment at desk scale.
Outcome reconstruction() {
  Outcome o;
  nq::ExperimentOptions opts;
  opts.n_states = 1000;
  opts.total_shots = 23040;
  opts.seed = 1;
  const auto compare = [&](double zeta) {
    const nq::NoiseModel noise{nq::Channel::depolarizing, nq::Interaction::heisenberg, zeta};
    const std::vector<nq::Scheme> schemes{
        nq::pauli_scheme(), nq::quorum_scheme("mub", nq::standard_mub_params(noise.interaction), noise)};
    return nq::run_experiment(schemes, noise, opts);
  };

  const auto zero = compare(0.0);
  const double gap = zero[0].mean_infidelity - zero[1].mean_infidelity;
  const double sigma = std::hypot(zero[0].sem, zero[1].sem);
  o.require(gap > 2 * sigma, "(a) pauli=" + fmt(zero[0].mean_infidelity) +
                                 " mub=" + fmt(zero[1].mean_infidelity) + " sigma=" + fmt(sigma, 3));

  // (b) MUB ahead at the low end of the window and behind at the high end.
  std::vector<double> diff;
  std::vector<double> pauli;
  std::string trace;
  for (double zeta : {0.04, 0.06, 0.08, 0.1, 0.12, 0.15}) {
    const auto r = compare(zeta);
    diff.push_back(r[1].mean_infidelity - r[0].mean_infidelity);
    pauli.push_back(r[0].mean_infidelity);
    trace += (trace.empty() ? "" : ",") + fmt(zeta, 3) + ":" + fmt(diff.back(), 3);
  }
  o.require(diff.front() < 0 && diff.back() > 0, "(b) mub-pauli {" + trace + "}");

  bool invariant = zero[0].mean_infidelity == pauli.front();
  for (double p : pauli) invariant = invariant && p == pauli.front();
  o.require(invariant, "(c) pauli invariant");
  return o;
}

// 7. Channel algebra.
Outcome channel_algebra() {
  Outcome o;
  nq::Rng rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double completeness = 0.0, agreement = 0.0, closure = 0.0, q_roundtrip = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const nq::Gammas g{u(rng), u(rng), u(rng)};
    const double q = u(rng);
    const nq::KrausSet dep = nq::kraus_depolarizing(q), oh = nq::kraus_ou_heisenberg(g),
                       oi = nq::kraus_ou_ising(g);
    for (const nq::KrausSet* ks : {&dep, &oh, &oi}) {
      nq::ComplexMatrix sum = nq::ComplexMatrix::Zero(4, 4);
      for (const auto& m : ks->operators()) sum += m.adjoint() * m;
      completeness = std::max(completeness, max_abs(sum - nq::identity(4)));
    }
    for (int s = 0; s < 100; ++s) {
      const nq::DensityMatrix rho = nq::random_density(4, rng);
      agreement = std::max({agreement,
                            max_abs(nq::apply_depolarizing(rho, q).matrix() - dep.apply(rho.matrix())),
                            max_abs(nq::apply_ou_heisenberg(rho, g).matrix() - oh.apply(rho.matrix())),
                            max_abs(nq::apply_ou_ising(rho, g).matrix() - oi.apply(rho.matrix()))});
    }
  }
  for (auto channel : {nq::Channel::depolarizing, nq::Channel::over_under_rotation}) {
    for (auto interaction : {nq::Interaction::heisenberg, nq::Interaction::ising}) {
      const nq::NoiseModel noise{channel, interaction, 0.2};
      for (int trial = 0; trial < 10; ++trial) {
        for (const auto& p : nq::effective_povms(nq::random_quorum(interaction, rng), noise)) {
          nq::ComplexMatrix sum = nq::ComplexMatrix::Zero(4, 4);
          for (const auto& f : p.effects()) sum += f;
          closure = std::max(closure, max_abs(sum - nq::identity(4)));
        }
      }
    }
  }
  for (int trial = 0; trial < 20; ++trial) {
    const nq::ComplexMatrix w = nq::haar_random_unitary(4, rng).matrix();
    const double q = 0.05 + 0.95 * u(rng);
    std::array<nq::ComplexMatrix, 4> e;
    for (int k = 0; k < 4; ++k) {
      const nq::ComplexVector v = w.col(k);
      e[k] = q * (v * v.adjoint() - nq::identity(4) / 4.0) + nq::identity(4) / 4.0;
    }
    for (double qk : nq::Povm(e).qs()) q_roundtrip = std::max(q_roundtrip, std::abs(qk - q));
  }
  o.require(completeness < 1e-12, "completeness " + fmt(completeness, 2));
  o.require(agreement < 1e-12, "map/Kraus " + fmt(agreement, 2));
  o.require(closure < 1e-12, "closure " + fmt(closure, 2));
  o.require(q_roundtrip < 1e-9, "q round trip " + fmt(q_roundtrip, 2));
  return o;
}

// 8. Every CLI command twice under a fixed seed.
std::string run_cli(const std::string& args, int& status) {
  const auto path = std::filesystem::temp_directory_path() / "noisyqst_acceptance.out";
  const std::string cmd = std::string(NOISYQST_CLI) + " " + args + " > " + path.string() + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::string> commands{
      "quality --mub heisenberg --channel ou -r 0.1",
      "optimize --strategy multistart:4 --max-iters 10 --zeta 0.05 --seed 11",
      "optimize --strategy annealing:1 --max-iters 10 --interaction ising --zeta 0.03 --seed 11",
      "sweep --grid 0,0.1 --schemes pauli9,mub,optimized --states 20 --seed 11",
      "gate-fidelity --channel ou --interaction ising -r 0.2",
      "coeff --samples 100000 --seed 11",
      "single-qubit -r 0.3 --theta 0.8"};
  for (const auto& c : commands) {
    int s1 = 0, s2 = 0;
    const std::string a = run_cli(c, s1), b = run_cli(c, s2);
    o.require(s1 == 0 && s2 == 0 && !a.empty() && a == b, c.substr(0, c.find(' ')));
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "calibration", 1.0, calibration},
      {2, "gate fidelity", 1.0, gate_fidelity},
      {3, "closed-form optimum recovery", 6 * 120.0, closed_form_recovery},
      {4, "single qubit", 1.0, single_qubit},
      {5, "coefficient reproduction", 300.0, coefficient},
      {6, "reconstruction experiment", 1800.0, reconstruction},
      {7, "channel algebra", 10.0, channel_algebra},
      {8, "determinism", 600.0, determinism}};
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      o.ok = false;
      o.detail += "; over budget " + fmt(c.budget_s) + "s";
    }
    if (!o.ok) ++failures;
    std::printf("%s criterion %d (%s) %.2fs: %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
