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
#include <sstream>
#include <utility>

#include "noisyqst/optimizer.hpp"

namespace noisyqst {

void OptimizerOptions::validate() const {
  if (max_iters < 1) throw std::invalid_argument("max_iters must be positive");
  if (!(f_tol > 0.0) || !(x_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
  if (!(sa.t0 > 0.0)) throw std::invalid_argument("annealing t0 must be positive");
  if (!(sa.cooling > 0.0 && sa.cooling < 1.0))
    throw std::invalid_argument("annealing cooling must lie in (0, 1)");
  if (sa.steps_per_temp < 1) throw std::invalid_argument("steps_per_temp must be positive");
  if (!(sa.proposal_std > 0.0)) throw std::invalid_argument("proposal_std must be positive");
  if (!(sa.t_min_ratio > 0.0 && sa.t_min_ratio < 1.0))
    throw std::invalid_argument("t_min_ratio must lie in (0, 1)");
  if (threads < 0) throw std::invalid_argument("threads must be non-negative");
}

namespace {

constexpr double kGold = 1.618033988749895;
constexpr double kCGold = 0.3819660112501051;
constexpr double kTiny = 1e-21;

class Evaluator {
 public:
  explicit Evaluator(const Objective& f) : f_(f) {}

  double operator()(const Eigen::VectorXd& x) const {
    const double v = f_(x);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "objective returned " << v << " at x = [" << x.transpose() << "]";
      throw NonFiniteObjective(msg.str());
    }
    return v;
  }

 private:
  const Objective& f_;
};

struct LinePoint {
  double t;
  double f;
};

// Brackets a minimum of g along the line, starting from t = 0 and t = 1.
template <typename G>
void bracket(const G& g, LinePoint& a, LinePoint& b, LinePoint& c) {
  if (b.f > a.f) std::swap(a, b);
  c.t = b.t + kGold * (b.t - a.t);
  c.f = g(c.t);
  for (int guard = 0; b.f > c.f && guard < 200; ++guard) {
    const double r = (b.t - a.t) * (b.f - c.f);
    const double q = (b.t - c.t) * (b.f - a.f);
    const double denom = 2.0 * std::copysign(std::max(std::abs(q - r), kTiny), q - r);
    double u = b.t - ((b.t - c.t) * q - (b.t - a.t) * r) / denom;
    const double ulim = b.t + 100.0 * (c.t - b.t);
    double fu;
    if ((b.t - u) * (u - c.t) > 0.0) {
      fu = g(u);
      if (fu < c.f) {
        a = b;
        b = {u, fu};
        return;
      }
      if (fu > b.f) {
        c = {u, fu};
        return;
      }
      u = c.t + kGold * (c.t - b.t);
      fu = g(u);
    } else if ((c.t - u) * (u - ulim) > 0.0) {
      fu = g(u);
      if (fu < c.f) {
        b = c;
        c = {u, fu};
        u = c.t + kGold * (c.t - b.t);
        fu = g(u);
      }
    } else if ((u - ulim) * (ulim - c.t) >= 0.0) {
      u = ulim;
      fu = g(u);
    } else {
      u = c.t + kGold * (c.t - b.t);
      fu = g(u);
    }
    a = b;
    b = c;
    c = {u, fu};
  }
}

// Brent's parabolic/golden minimization inside a bracket.
template <typename G>
LinePoint brent(const G& g, LinePoint a, LinePoint b, LinePoint c, double tol) {
  double lo = std::min(a.t, c.t), hi = std::max(a.t, c.t);
  double x = b.t, w = b.t, v = b.t;
  double fx = b.f, fw = b.f, fv = b.f;
  double d = 0.0, e = 0.0;
  for (int iter = 0; iter < 500; ++iter) {
    const double xm = 0.5 * (lo + hi);
    const double tol1 = tol * std::abs(x) + 1e-12;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (hi - lo)) break;
    if (std::abs(e) > tol1) {
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double etemp = e;
      e = d;
      if (std::abs(p) >= std::abs(0.5 * q * etemp) || p <= q * (lo - x) || p >= q * (hi - x)) {
        e = x >= xm ? lo - x : hi - x;
        d = kCGold * e;
      } else {
        d = p / q;
        const double u = x + d;
        if (u - lo < tol2 || hi - u < tol2) d = std::copysign(tol1, xm - x);
      }
    } else {
      e = x >= xm ? lo - x : hi - x;
      d = kCGold * e;
    }
    const double u = std::abs(d) >= tol1 ? x + d : x + std::copysign(tol1, d);
    const double fu = g(u);
    if (fu <= fx) {
      (u >= x ? lo : hi) = x;
      v = w;
      w = x;
      x = u;
      fv = fw;
      fw = fx;
      fx = fu;
    } else {
      (u < x ? lo : hi) = u;
      if (fu <= fw || w == x) {
        v = w;
        w = u;
        fv = fw;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  return {x, fx};
}

// Minimizes along x + t dir; updates x and returns the new value. Never worsens fx.
double line_minimize(const Evaluator& f, Eigen::VectorXd& x, const Eigen::VectorXd& dir, double fx,
                     double tol) {
  auto g = [&](double t) { return f(x + t * dir); };
  LinePoint a{0.0, fx}, b{1.0, g(1.0)}, c{};
  bracket(g, a, b, c);
  const LinePoint best = brent(g, a, b, c, tol);
  if (best.f < fx) {
    x += best.t * dir;
    return best.f;
  }
  return fx;
}

}  // namespace

MinimizeResult powell_minimize(const Objective& objective, const Eigen::VectorXd& x0,
                               const OptimizerOptions& opts) {
  opts.validate();
  const Evaluator f(objective);
  const Eigen::Index n = x0.size();
  if (n == 0) throw std::invalid_argument("empty starting point");
  const double line_tol = std::max(opts.x_tol, 3e-8);

  MinimizeResult out;
  out.x = x0;
  out.f = f(out.x);
  out.trajectory.push_back({0, out.f});
  Eigen::MatrixXd dirs = Eigen::MatrixXd::Identity(n, n);

  for (int iter = 1; iter <= opts.max_iters; ++iter) {
    out.iterations = iter;
    const double f_start = out.f;
    const Eigen::VectorXd x_start = out.x;
    double biggest_drop = 0.0;
    Eigen::Index biggest = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double before = out.f;
      out.f = line_minimize(f, out.x, dirs.col(i), out.f, line_tol);
      if (before - out.f > biggest_drop) {
        biggest_drop = before - out.f;
        biggest = i;
      }
    }
    out.trajectory.push_back({iter, out.f});
    if (2.0 * (f_start - out.f) <= opts.f_tol * (std::abs(f_start) + std::abs(out.f)) + 1e-20)
      break;

    const Eigen::VectorXd step = out.x - x_start;
    const double f_ext = f(out.x + step);
    if (f_ext < f_start) {
      const double a = f_start - out.f - biggest_drop;
      const double b = f_start - f_ext;
      const double t = 2.0 * (f_start - 2.0 * out.f + f_ext) * a * a - biggest_drop * b * b;
      if (t < 0.0) {
        out.f = line_minimize(f, out.x, step, out.f, line_tol);
        dirs.col(biggest) = dirs.col(n - 1);
        dirs.col(n - 1) = step;
      }
    }
  }
  return out;
}

}  // namespace noisyqst
