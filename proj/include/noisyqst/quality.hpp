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

#include <array>
#include <span>

#include "noisyqst/core.hpp"
#include "noisyqst/gates.hpp"
#include "noisyqst/noise.hpp"

namespace noisyqst {

// Slopes of the Haar-averaged log-probability in (1 - q).
inline constexpr double kQubitLogSlope = 1.5;
inline constexpr double kTwoQubitLogSlope = 1.195;

/// Exponent applied to every effect's q in the per-effect noisy quality.
inline constexpr double kPerEffectExponent = kTwoQubitLogSlope / 2;

/// Exponent s applied to a measurement's q when it is the same for all four effects.
inline constexpr double kTwoQubitExponent = 4 * kPerEffectExponent;

struct QualityReport {
  double q_geometric = 0.0;
  double q_noisy = 0.0;
  std::array<std::array<double, 4>, kQuorumSize> per_measurement_q{};
  std::array<double, kQuorumSize> entangling_times{};
};

// Geometric quality: volume spanned by the traceless parts of three nominal
// projectors per measurement. When the q's of a measurement differ, the
// volume depends on which projector is dropped; we return the geometric mean
// over all 4^5 choices, vol(F) / prod q^(3/4), which reduces to the plain
// volume whenever the q's of each measurement agree.
double geometric_quality(std::span<const Povm> quorum);
double geometric_quality(std::span<const UnitaryMatrix> quorum);

/// Q * prod_jk q_jk^(1.195/2)
double noisy_quality(std::span<const Povm> quorum);

/// Q * prod_j q_j^s for per-measurement q's.
double noisy_quality_global(double q_geometric, std::span<const double> qs, double s);

QualityReport evaluate_quorum(const QuorumParams& quorum, const NoiseModel& noise);

/// ln Q_N without POVM validation; -infinity for degenerate quorums.
double log_noisy_quality(const QuorumParams& quorum, const NoiseModel& noise);

// ---------------------------------------------------------------------------
// Averaged log-probability coefficient

struct LogCoefficientOptions {
  int grid_points = 40;
  double q_min = 0.9;
  double q_max = 1.0;
};

/// Least-squares slope of <ln(p + (1-q)/(d q))> against (1 - q), averaged over
/// random density matrices and the d standard-basis projectors.
double estimate_log_coefficient(int d, long n_samples, Rng& rng,
                                const LogCoefficientOptions& opts = {});

/// Closed form of <ln(p + c)> for a qubit with states uniform in the Bloch ball.
double qubit_log_average(double c);

// ---------------------------------------------------------------------------
// Single qubit

/// Three measurements with Bloch vectors at polar angle theta and azimuths 0, 2pi/3, 4pi/3.
struct SingleQubitScheme {
  double theta = 0.0;
  std::array<double, 3> phases{0.0, 2 * kPi / 3, 4 * kPi / 3};
  double r = 0.0;
};

/// Evaluates the scheme through Bloch-volume and q^(3/2) factors.
double scheme_quality(const SingleQubitScheme& scheme);

/// (3 sqrt3 / 2) e^{-9 r |theta| / 2} cos(theta) sin^2(theta)
double single_qubit_quality(double theta, double r);

/// arctan(sqrt(81 r^2 / 16 + 2) - 9 r / 4)
double single_qubit_optimal_angle(double r);

// ---------------------------------------------------------------------------
// Closed forms for the MUB family with free entangling times under depolarizing noise

double analytic_alpha_max(double zeta, double s);
double analytic_beta_max(double zeta, double s);

/// Standard MUB quorum with U4, U5 entanglers (a41, 0, a43) and (a51, 0, a53).
QuorumParams heisenberg_mub_family(double a41, double a43, double a51, double a53);

/// Standard MUB quorum with U4, U5 entanglers (0, b4, 0) and (0, b5, 0).
QuorumParams ising_mub_family(double b4, double b5);

// Q_N of the families above. The exponent uses q_j = exp(-zeta pi T_j) for the
// normalized entangling time T_j of each measurement.
double heisenberg_family_quality(double a41, double a43, double a51, double a53, double zeta,
                                 double s);
double ising_family_quality(double b4, double b5, double zeta, double s);

}  // namespace noisyqst
