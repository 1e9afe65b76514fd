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

#include <cmath>
#include <vector>

#include "noisyqst/core.hpp"
#include "test_support.hpp"

namespace noisyqst {
namespace {

using testing::max_abs;
using testing::random_hermitian;
using testing::random_state_vector;

TEST(Pauli, Algebra) {
  const Complex i(0, 1);
  EXPECT_LT(max_abs(pauli(1) * pauli(2) - i * pauli(3)), 1e-15);
  for (int k = 1; k < 4; ++k) EXPECT_LT(max_abs(pauli(k) * pauli(k) - identity(2)), 1e-15);
  EXPECT_THROW(pauli(4), std::out_of_range);
}

TEST(Kron, MatchesBlockLayout) {
  const ComplexMatrix k = kron(pauli(1), pauli(3));
  ASSERT_EQ(k.rows(), 4);
  EXPECT_EQ(k(0, 2), Complex(1));
  EXPECT_EQ(k(1, 3), Complex(-1));
  EXPECT_EQ(k(0, 0), Complex(0));
}

TEST(Dimension, OnlyQubitAndTwoQubit) {
  Rng rng(1);
  EXPECT_THROW(haar_random_unitary(3, rng), UnsupportedDimension);
  EXPECT_THROW(random_density(8, rng), UnsupportedDimension);
  EXPECT_THROW(traceless_basis(3), UnsupportedDimension);
}

TEST(UnitaryMatrix, RejectsNonUnitary) {
  ComplexMatrix m = identity(2);
  m(0, 1) = 0.1;
  EXPECT_THROW(UnitaryMatrix{m}, std::invalid_argument);
  EXPECT_NO_THROW(UnitaryMatrix{pauli(2)});
}

TEST(DensityMatrix, Invariants) {
  ComplexMatrix m = identity(2) / 2.0;
  m(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{m}, std::invalid_argument);  // not Hermitian
  EXPECT_THROW(DensityMatrix{identity(2)}, std::invalid_argument);  // trace 2
  ComplexMatrix neg(2, 2);
  neg << 1.2, 0, 0, -0.2;
  EXPECT_THROW(DensityMatrix{neg}, std::invalid_argument);
  EXPECT_NEAR(DensityMatrix::maximally_mixed(4).purity(), 0.25, 1e-15);
}

TEST(Projector, RankAndValidation) {
  Rng rng(2);
  const Projector p = Projector::onto(random_state_vector(4, rng));
  EXPECT_EQ(p.rank(), 1);
  EXPECT_EQ(Projector(identity(4)).rank(), 4);
  EXPECT_THROW(Projector(identity(2) / 2.0), std::invalid_argument);
}

TEST(TracelessBasis, Orthonormal) {
  for (int d : {2, 4}) {
    const auto& b = traceless_basis(d);
    ASSERT_EQ(static_cast<int>(b.size()), d * d - 1);
    for (std::size_t i = 0; i < b.size(); ++i) {
      EXPECT_NEAR(std::abs(b[i].trace()), 0.0, 1e-15);
      EXPECT_TRUE(is_hermitian(b[i], 1e-15));
      for (std::size_t j = 0; j < b.size(); ++j)
        EXPECT_NEAR((b[i] * b[j]).trace().real(), i == j ? 1.0 : 0.0, 1e-14);
    }
  }
}

// Tr(A0 B0) for the traceless parts, computed directly.
TEST(TracelessVector, DotMatchesTraceInnerProduct) {
  Rng rng(3);
  for (int d : {2, 4}) {
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix a = random_hermitian(d, rng), b = random_hermitian(d, rng);
      const ComplexMatrix a0 = a - a.trace() / static_cast<double>(d) * identity(d);
      const ComplexMatrix b0 = b - b.trace() / static_cast<double>(d) * identity(d);
      const TracelessVector va = traceless_coordinates(a), vb = traceless_coordinates(b);
      EXPECT_NEAR(va.dot(vb), (a0 * b0).trace().real(), 1e-12);
      EXPECT_LT(max_abs(va.to_matrix() - a0), 1e-12);
    }
  }
}

TEST(TracelessVector, ProjectorNorm) {
  Rng rng(4);
  const TracelessVector t = traceless_part(Projector::onto(random_state_vector(4, rng)));
  EXPECT_NEAR(t.dot(t), 0.75, 1e-14);
}

TEST(GramVolume, OrthonormalAndDependent) {
  std::vector<TracelessVector> vs;
  for (int i = 0; i < 15; ++i) vs.emplace_back(4, Eigen::VectorXd::Unit(15, i));
  EXPECT_NEAR(gram_volume(vs), 1.0, 1e-14);
  vs[3] = vs[2];
  EXPECT_NEAR(gram_volume(vs), 0.0, 1e-14);
}

TEST(GramVolume, MatchesDeterminantOracle) {
  Rng rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int n : {1, 5, 15}) {
    std::vector<TracelessVector> vs;
    Eigen::MatrixXd a(n, 15);
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd c(15);
      for (int k = 0; k < 15; ++k) c(k) = g(rng);
      a.row(i) = c.transpose();
      vs.emplace_back(4, c);
    }
    const double oracle = std::sqrt((a * a.transpose()).determinant());
    EXPECT_NEAR(gram_volume(vs) / oracle, 1.0, 1e-10);
  }
}

TEST(GramVolume, Errors) {
  std::vector<TracelessVector> mixed{TracelessVector(2, Eigen::VectorXd::Unit(3, 0)),
                                     TracelessVector(4, Eigen::VectorXd::Unit(15, 0))};
  EXPECT_THROW(gram_volume(mixed), std::invalid_argument);
  std::vector<TracelessVector> many(4, TracelessVector(2, Eigen::VectorXd::Unit(3, 0)));
  EXPECT_THROW(gram_volume(many), std::invalid_argument);
}

TEST(GramVolume, BlochConvention) {
  // Unit Bloch vectors along x, y, z span volume 1.
  std::vector<TracelessVector> vs;
  for (int k = 1; k < 4; ++k) vs.push_back(traceless_part(Projector((identity(2) + pauli(k)) / 2.0)));
  EXPECT_NEAR(bloch_volume(vs), 1.0, 1e-14);
  EXPECT_NEAR(bloch_volume(vs) / gram_volume(vs), std::pow(2.0, 1.5), 1e-12);
}

TEST(GramVolume, TemplatedScalar) {
  Eigen::Matrix<float, 2, 3> rows;
  rows << 1, 0, 0, 0, 2, 0;
  EXPECT_FLOAT_EQ(gram_volume_rows(rows), 2.0f);
}

TEST(Haar, UnitaryAndDeterministic) {
  Rng a(7), b(7);
  for (int d : {2, 4}) {
    const UnitaryMatrix u = haar_random_unitary(d, a);
    EXPECT_LT(max_abs(u.matrix().adjoint() * u.matrix() - identity(d)), 1e-12);
    EXPECT_EQ(u.matrix(), haar_random_unitary(d, b).matrix());
  }
}

// Haar moments: E|U_00|^2 = 1/d and E|U_00|^4 = 2/(d(d+1)).
TEST(Haar, Moments) {
  Rng rng(8);
  const int n = 40000;
  double m2 = 0.0, m4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = std::norm(haar_random_unitary(4, rng).matrix()(0, 0));
    m2 += x;
    m4 += x * x;
  }
  EXPECT_NEAR(m2 / n, 0.25, 0.005);
  EXPECT_NEAR(m4 / n, 0.1, 0.004);
}

// The phase fix makes the eigenphases uniform, so E[Tr U] = 0 and E|Tr U|^2 = 1.
TEST(Haar, TraceMoments) {
  Rng rng(9);
  const int n = 40000;
  Complex mean(0);
  double second = 0.0;
  for (int i = 0; i < n; ++i) {
    const Complex t = haar_random_unitary(4, rng).matrix().trace();
    mean += t;
    second += std::norm(t);
  }
  EXPECT_LT(std::abs(mean / static_cast<double>(n)), 0.02);
  EXPECT_NEAR(second / n, 1.0, 0.03);
}

TEST(RandomDensity, Valid) {
  Rng rng(10);
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho = random_density(4, rng);
    EXPECT_LE(rho.purity(), 1.0 + 1e-12);
    EXPECT_GE(rho.purity(), 0.25 - 1e-12);
  }
}

// Eigenvalues uniform on the simplex give E[sum l_i^2] = 2/(d+1).
TEST(RandomDensity, MeanPurity) {
  Rng rng(11);
  const int n = 20000;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += random_density(4, rng).purity();
  EXPECT_NEAR(acc / n, 0.4, 0.005);
}

TEST(Fidelity, Properties) {
  Rng rng(12);
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix a = random_density(4, rng), b = random_density(4, rng);
    EXPECT_NEAR(state_fidelity(a, a), 1.0, 1e-9);
    EXPECT_NEAR(state_fidelity(a, b), state_fidelity(b, a), 1e-9);
    const double f = state_fidelity(a, b);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
}

TEST(Fidelity, PureStateOverlap) {
  Rng rng(13);
  for (int i = 0; i < 20; ++i) {
    const ComplexVector x = random_state_vector(4, rng), y = random_state_vector(4, rng);
    EXPECT_NEAR(state_fidelity(DensityMatrix::pure(x), DensityMatrix::pure(y)),
                std::norm(x.dot(y)), 1e-7);
  }
}

// F(rho, 1/d) = (Tr sqrt(rho))^2 / d.
TEST(Fidelity, AgainstMaximallyMixed) {
  Rng rng(14);
  const DensityMatrix rho = random_density(4, rng);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
  const double s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  EXPECT_NEAR(state_fidelity(rho, DensityMatrix::maximally_mixed(4)), s * s / 4, 1e-10);
}

TEST(PsdSqrt, Squares) {
  Rng rng(15);
  const DensityMatrix rho = random_density(4, rng);
  const ComplexMatrix r = psd_sqrt(rho.matrix());
  EXPECT_LT(max_abs(r * r - rho.matrix()), 1e-12);
}

TEST(Substream, DeterministicAndDistinct) {
  Rng a = substream(42, 1, 0), b = substream(42, 1, 0), c = substream(42, 1, 1),
      d = substream(42, 2, 0);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
}

}  // namespace
}  // namespace noisyqst
