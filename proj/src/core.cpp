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

#include "noisyqst/core.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace noisyqst {

UnsupportedDimension::UnsupportedDimension(Eigen::Index d)
    : std::invalid_argument("unsupported dimension " + std::to_string(d) +
                            " (expected 2 or 4)") {}

void require_supported_dim(Eigen::Index d) {
  if (d != 2 && d != 4) throw UnsupportedDimension(d);
}

const ComplexMatrix& pauli(int k) {
  static const std::array<ComplexMatrix, 4> paulis = [] {
    const Complex i(0, 1);
    std::array<ComplexMatrix, 4> p;
    for (auto& m : p) m.resize(2, 2);
    p[0] << 1, 0, 0, 1;
    p[1] << 0, 1, 1, 0;
    p[2] << 0, -i, i, 0;
    p[3] << 1, 0, 0, -1;
    return p;
  }();
  return paulis.at(static_cast<std::size_t>(k));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix identity(Eigen::Index d) { return ComplexMatrix::Identity(d, d); }

// ---------------------------------------------------------------------------

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tol) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols()) throw std::invalid_argument("unitary must be square");
  require_supported_dim(mat_.rows());
  if (!mat_.allFinite()) throw std::invalid_argument("unitary has non-finite entries");
  const double dev = (mat_.adjoint() * mat_ - identity(mat_.rows())).cwiseAbs().maxCoeff();
  if (dev > tol) throw std::invalid_argument("matrix is not unitary (deviation " +
                                             std::to_string(dev) + ")");
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return {mat_.adjoint(), Unchecked{}}; }

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& rhs) const {
  if (dim() != rhs.dim()) throw std::invalid_argument("dimension mismatch");
  return {mat_ * rhs.mat_, Unchecked{}};
}

DensityMatrix::DensityMatrix(ComplexMatrix m, double tol) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols()) throw std::invalid_argument("density matrix must be square");
  require_supported_dim(mat_.rows());
  if (!mat_.allFinite()) throw std::invalid_argument("density matrix has non-finite entries");
  if (!is_hermitian(mat_, tol)) throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(mat_.trace() - Complex(1)) > tol)
    throw std::invalid_argument("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mat_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index d) {
  require_supported_dim(d);
  return DensityMatrix(identity(d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const ComplexVector n = psi.normalized();
  return DensityMatrix(n * n.adjoint());
}

double DensityMatrix::purity() const { return (mat_ * mat_).trace().real(); }

Projector::Projector(ComplexMatrix m, double tol) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols()) throw std::invalid_argument("projector must be square");
  require_supported_dim(mat_.rows());
  if (!is_hermitian(mat_, tol)) throw std::invalid_argument("projector is not Hermitian");
  if ((mat_ * mat_ - mat_).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("projector is not idempotent");
  const double tr = mat_.trace().real();
  rank_ = static_cast<int>(std::lround(tr));
  if (std::abs(tr - rank_) > 1e-9) throw std::invalid_argument("projector trace is not integral");
}

Projector Projector::onto(const ComplexVector& psi) {
  const ComplexVector n = psi.normalized();
  return Projector(n * n.adjoint());
}

// ---------------------------------------------------------------------------

TracelessVector::TracelessVector(Eigen::Index dim, Eigen::VectorXd coords)
    : dim_(dim), coords_(std::move(coords)) {
  require_supported_dim(dim_);
  if (coords_.size() != dim_ * dim_ - 1)
    throw std::invalid_argument("traceless coordinate count must be d^2 - 1");
}

double TracelessVector::dot(const TracelessVector& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("dimension mismatch");
  return coords_.dot(other.coords_);
}

ComplexMatrix TracelessVector::to_matrix() const {
  const auto& basis = traceless_basis(dim_);
  ComplexMatrix m = ComplexMatrix::Zero(dim_, dim_);
  for (Eigen::Index i = 0; i < coords_.size(); ++i) m += coords_(i) * basis[i];
  return m;
}

const std::vector<ComplexMatrix>& traceless_basis(Eigen::Index d) {
  static const std::vector<ComplexMatrix> qubit = [] {
    std::vector<ComplexMatrix> b;
    for (int k = 1; k < 4; ++k) b.push_back(pauli(k) / std::sqrt(2.0));
    return b;
  }();
  static const std::vector<ComplexMatrix> two_qubit = [] {
    std::vector<ComplexMatrix> b;
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l)
        if (k != 0 || l != 0) b.push_back(kron(pauli(k), pauli(l)) / 2.0);
    return b;
  }();
  require_supported_dim(d);
  return d == 2 ? qubit : two_qubit;
}

TracelessVector traceless_coordinates(const ComplexMatrix& hermitian) {
  const Eigen::Index d = hermitian.rows();
  const auto& basis = traceless_basis(d);
  Eigen::VectorXd c(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    c(static_cast<Eigen::Index>(i)) = (basis[i].cwiseProduct(hermitian.transpose())).sum().real();
  return TracelessVector(d, std::move(c));
}

TracelessVector traceless_part(const Projector& p) { return traceless_coordinates(p.matrix()); }

// ---------------------------------------------------------------------------

UnitaryMatrix haar_random_unitary(int d, Rng& rng) {
  require_supported_dim(d);
  std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(2.0));
  ComplexMatrix z(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) z(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= mag > 0 ? rjj / mag : Complex(1);
  }
  return UnitaryMatrix(std::move(q), 1e-9);
}

DensityMatrix random_density(int d, Rng& rng) {
  require_supported_dim(d);
  const UnitaryMatrix u = haar_random_unitary(d, rng);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::array<double, 5> cuts{};
  cuts[0] = 0.0;
  for (int i = 1; i < d; ++i) cuts[i] = uniform(rng);
  cuts[d] = 1.0;
  std::sort(cuts.begin() + 1, cuts.begin() + d);
  ComplexMatrix diag = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) diag(i, i) = cuts[i + 1] - cuts[i];
  ComplexMatrix rho = u.matrix() * diag * u.matrix().adjoint();
  rho = (rho + rho.adjoint()) / 2.0;
  return DensityMatrix(std::move(rho));
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("dimension mismatch");
  const ComplexMatrix s = psd_sqrt(rho.matrix());
  ComplexMatrix inner = s * sigma.matrix() * s;
  inner = (inner + inner.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(inner, Eigen::EigenvaluesOnly);
  const double root_trace = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(root_trace * root_trace, 0.0, 1.0);
}

double gram_volume(std::span<const TracelessVector> vs) {
  if (vs.empty()) return 1.0;
  const Eigen::Index d = vs.front().dim();
  const Eigen::Index n = d * d - 1;
  if (static_cast<Eigen::Index>(vs.size()) > n)
    throw std::invalid_argument("more vectors than the traceless space dimension");
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(vs.size()), n);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].dim() != d) throw std::invalid_argument("mixed dimensions in gram_volume");
    rows.row(static_cast<Eigen::Index>(i)) = vs[i].coords().transpose();
  }
  return gram_volume_rows(rows);
}

double bloch_volume(std::span<const TracelessVector> vs) {
  if (!vs.empty() && vs.front().dim() != 2)
    throw std::invalid_argument("Bloch convention applies to d = 2 only");
  return std::pow(2.0, 1.5) * gram_volume(vs);
}

Rng substream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

}  // namespace noisyqst
