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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace noisyqst {

// Small dense complex matrices. The dimension is a runtime value (2 or 4),
// storage is bounded at 4x4 so nothing hits the heap.
template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic,
                              Eigen::ColMajor, 4, 4>;
template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;
using Rng = std::mt19937_64;

inline constexpr double kPi = 3.14159265358979323846;

/// Thrown for dimensions other than the supported qubit (2) and two-qubit (4) cases.
class UnsupportedDimension : public std::invalid_argument {
 public:
  explicit UnsupportedDimension(Eigen::Index d);
};

void require_supported_dim(Eigen::Index d);

/// Pauli matrix sigma_k with sigma_0 = identity.
const ComplexMatrix& pauli(int k);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix identity(Eigen::Index d);

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(ComplexMatrix m, double tol = 1e-10);

  const ComplexMatrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }
  UnitaryMatrix adjoint() const;
  UnitaryMatrix operator*(const UnitaryMatrix& rhs) const;

 private:
  struct Unchecked {};
  UnitaryMatrix(ComplexMatrix m, Unchecked) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, double tol = 1e-10);

  static DensityMatrix maximally_mixed(Eigen::Index d);
  static DensityMatrix pure(const ComplexVector& psi);

  const ComplexMatrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }
  double purity() const;

 private:
  ComplexMatrix mat_;
};

class Projector {
 public:
  explicit Projector(ComplexMatrix m, double tol = 1e-10);

  /// Rank-1 projector onto the normalized direction of psi.
  static Projector onto(const ComplexVector& psi);

  const ComplexMatrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }
  int rank() const { return rank_; }

 private:
  ComplexMatrix mat_;
  int rank_;
};

// Coordinates of a traceless Hermitian operator in the orthonormal basis
// {sigma_k (x) sigma_l / 2} (d = 4) or {sigma_k / sqrt 2} (d = 2), so that
// Tr(AB) is the Euclidean dot product of the coordinates.
class TracelessVector {
 public:
  TracelessVector(Eigen::Index dim, Eigen::VectorXd coords);

  Eigen::Index dim() const { return dim_; }
  const Eigen::VectorXd& coords() const { return coords_; }
  double dot(const TracelessVector& other) const;
  ComplexMatrix to_matrix() const;

 private:
  Eigen::Index dim_;
  Eigen::VectorXd coords_;
};

/// Orthonormal traceless Hermitian basis used by TracelessVector, d^2 - 1 entries.
const std::vector<ComplexMatrix>& traceless_basis(Eigen::Index d);

/// Coordinates of the traceless part of a Hermitian matrix.
TracelessVector traceless_coordinates(const ComplexMatrix& hermitian);

TracelessVector traceless_part(const Projector& p);

UnitaryMatrix haar_random_unitary(int d, Rng& rng);
DensityMatrix random_density(int d, Rng& rng);

/// Hermitian square root with negative eigenvalues clamped to zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// sqrt(det(A A^T)) for the rows of A, computed from a QR factorization of A^T.
template <typename Derived>
typename Derived::Scalar gram_volume_rows(const Eigen::MatrixBase<Derived>& rows) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (rows.rows() == 0) return Scalar(1);
  if (rows.rows() > rows.cols()) return Scalar(0);
  Eigen::HouseholderQR<Matrix> qr(rows.transpose());
  const Matrix& r = qr.matrixQR();
  Scalar volume(1);
  for (Eigen::Index i = 0; i < rows.rows(); ++i) volume *= std::abs(r(i, i));
  return volume;
}

/// Volume of the parallelepiped spanned by the vectors in the trace inner product.
double gram_volume(std::span<const TracelessVector> vs);

/// d = 2 volume in unit-Bloch-vector convention, 2^(3/2) times gram_volume.
double bloch_volume(std::span<const TracelessVector> vs);

/// Deterministic substream of a master seed, keyed by a tag and an index.
Rng substream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index);

}  // namespace noisyqst
