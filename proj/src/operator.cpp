// Copyright 2026 The eqham Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eqham/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace eqham {

namespace {

double scale_of(const Matrix& A) { return std::max(1.0, A.norm()); }

std::string describe(std::string_view what, std::string_view role, double defect, double tol) {
  std::ostringstream os;
  os << what << " is not " << role << ": defect " << defect << " exceeds tolerance " << tol;
  return os.str();
}

}  // namespace

double hermitian_defect(const Matrix& A) {
  if (A.rows() != A.cols()) return std::numeric_limits<double>::infinity();
  return (A - A.adjoint()).cwiseAbs().maxCoeff();
}

double skew_hermitian_defect(const Matrix& A) {
  if (A.rows() != A.cols()) return std::numeric_limits<double>::infinity();
  return (A + A.adjoint()).cwiseAbs().maxCoeff();
}

double unitary_defect(const Matrix& A) {
  if (A.rows() != A.cols()) return std::numeric_limits<double>::infinity();
  return (A.adjoint() * A - Matrix::Identity(A.rows(), A.cols())).norm();
}

bool is_hermitian(const Matrix& A, double tol) {
  return A.rows() == A.cols() && hermitian_defect(A) <= tol * scale_of(A);
}

bool is_skew_hermitian(const Matrix& A, double tol) {
  return A.rows() == A.cols() && skew_hermitian_defect(A) <= tol * scale_of(A);
}

bool is_unitary(const Matrix& A, double tol) {
  return A.rows() == A.cols() && unitary_defect(A) <= tol * static_cast<double>(A.rows());
}

void require_square(const Matrix& A, std::string_view what) {
  if (A.rows() != A.cols() || A.rows() < 1) {
    std::ostringstream os;
    os << what << " must be a non-empty square matrix, got " << A.rows() << "x" << A.cols();
    throw ValidationError(os.str());
  }
}

void require_hermitian(const Matrix& A, std::string_view what) {
  require_square(A, what);
  const double tol = kHermitianTol * scale_of(A);
  const double defect = hermitian_defect(A);
  if (!(defect <= tol)) throw ValidationError(describe(what, "Hermitian", defect, tol));
}

void require_skew_hermitian(const Matrix& A, std::string_view what) {
  require_square(A, what);
  const double tol = kHermitianTol * scale_of(A);
  const double defect = skew_hermitian_defect(A);
  if (!(defect <= tol)) throw ValidationError(describe(what, "skew-Hermitian", defect, tol));
}

void require_unitary(const Matrix& A, std::string_view what) {
  require_square(A, what);
  const double tol = kUnitaryTol * static_cast<double>(A.rows());
  const double defect = unitary_defect(A);
  if (!(defect <= tol)) throw ValidationError(describe(what, "unitary", defect, tol));
}

void require_same_dim(const Matrix& A, const Matrix& B, std::string_view what) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    std::ostringstream os;
    os << what << ": dimension mismatch " << A.rows() << "x" << A.cols() << " vs " << B.rows()
       << "x" << B.cols();
    throw ValidationError(os.str());
  }
}

double grouping_tolerance(const Matrix& A) { return kGroupingTol * scale_of(A); }

BlockStructure::BlockStructure(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  for (const auto& b : blocks_) {
    if (b.size < 1) throw ValidationError("block sizes must be positive");
  }
}

BlockStructure BlockStructure::group(std::span<const Complex> values, double tol) {
  std::vector<Block> blocks;
  for (const Complex& v : values) {
    if (!blocks.empty() && std::abs(v - blocks.back().value) <= tol) {
      ++blocks.back().size;
    } else {
      blocks.push_back({v, 1});
    }
  }
  return BlockStructure(std::move(blocks));
}

BlockStructure BlockStructure::group(const RealVector& values, double tol) {
  std::vector<Complex> cv(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) cv[i] = values[i];
  return group(std::span<const Complex>(cv), tol);
}

BlockStructure BlockStructure::from_sizes(std::span<const int> sizes) {
  std::vector<Block> blocks;
  blocks.reserve(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    blocks.push_back({Complex(static_cast<double>(i), 0.0), sizes[i]});
  }
  return BlockStructure(std::move(blocks));
}

int BlockStructure::dim() const {
  int d = 0;
  for (const auto& b : blocks_) d += b.size;
  return d;
}

std::vector<int> BlockStructure::sizes() const {
  std::vector<int> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(b.size);
  return out;
}

std::vector<int> BlockStructure::offsets() const {
  std::vector<int> out;
  out.reserve(blocks_.size());
  int at = 0;
  for (const auto& b : blocks_) {
    out.push_back(at);
    at += b.size;
  }
  return out;
}

int BlockStructure::group_dim() const {
  int n = 0;
  for (const auto& b : blocks_) n += b.size * b.size;
  return n;
}

bool BlockStructure::is_canonical(double tol) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks_.size(); ++j) {
      if (std::abs(blocks_[i].value - blocks_[j].value) <= tol) return false;
    }
  }
  return true;
}

namespace {

void check_conforming(const Matrix& X, const BlockStructure& blocks) {
  if (X.rows() != X.cols() || X.rows() != blocks.dim()) {
    std::ostringstream os;
    os << "block structure of dimension " << blocks.dim() << " does not match a " << X.rows()
       << "x" << X.cols() << " matrix";
    throw ValidationError(os.str());
  }
}

}  // namespace

double off_block_norm(const Matrix& X, const BlockStructure& blocks) {
  check_conforming(X, blocks);
  return (X - block_diagonal_part(X, blocks)).norm();
}

Matrix block_diagonal_part(const Matrix& X, const BlockStructure& blocks) {
  check_conforming(X, blocks);
  Matrix out = Matrix::Zero(X.rows(), X.cols());
  int at = 0;
  for (const auto& b : blocks.blocks()) {
    out.block(at, at, b.size, b.size) = X.block(at, at, b.size, b.size);
    at += b.size;
  }
  return out;
}

HermitianEigen eig_hermitian(const Matrix& A) {
  require_hermitian(A, "eig_hermitian input");
  // Symmetrize so the solver sees an exactly Hermitian matrix.
  const Matrix sym = 0.5 * (A + A.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed");
  const Eigen::Index n = A.rows();
  HermitianEigen out{RealVector(n), Matrix(n, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values[j] = solver.eigenvalues()[n - 1 - j];
    out.vectors.col(j) = solver.eigenvectors().col(n - 1 - j);
  }
  return out;
}

Vector Diagonalization::eigenvalues() const {
  Vector t(phases.size());
  for (Eigen::Index j = 0; j < phases.size(); ++j) t[j] = std::polar(1.0, phases[j]);
  return t;
}

Matrix Diagonalization::reconstruct() const {
  return V * eigenvalues().asDiagonal() * V.adjoint();
}

Diagonalization eig_unitary(const Matrix& W) {
  require_unitary(W, "eig_unitary input");
  const Eigen::Index n = W.rows();
  const double tol = grouping_tolerance(W);

  // Hermitian part carries cos(phi); the anti-Hermitian part separates
  // +phi from -phi inside each cos-degenerate cluster.
  const Matrix re_part = 0.5 * (W + W.adjoint());
  const Matrix im_part = (W - W.adjoint()) / Complex(0.0, 2.0);
  HermitianEigen outer = eig_hermitian(re_part);
  Matrix V = outer.vectors;

  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && std::abs(outer.values[stop] - outer.values[start]) <= tol) ++stop;
    const Eigen::Index width = stop - start;
    if (width > 1) {
      const Matrix Q = V.middleCols(start, width);
      const Matrix projected = Q.adjoint() * im_part * Q;
      HermitianEigen inner = eig_hermitian(0.5 * (projected + projected.adjoint()));
      V.middleCols(start, width) = Q * inner.vectors;
    }
    start = stop;
  }

  const Matrix rayleigh = V.adjoint() * W * V;
  std::vector<double> raw(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double phi = std::arg(rayleigh(j, j));
    if (phi <= -std::numbers::pi + tol) phi = std::numbers::pi;
    raw[j] = phi;
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return raw[a] > raw[b]; });

  Diagonalization out{Matrix(n, n), RealVector(n), {}};
  std::vector<Complex> values(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.V.col(j) = V.col(order[j]);
    out.phases[j] = raw[order[j]];
    values[j] = std::polar(1.0, raw[order[j]]);
  }
  out.blocks = BlockStructure::group(std::span<const Complex>(values), tol);
  return out;
}

Matrix exp_skew_hermitian(const Matrix& S) {
  require_skew_hermitian(S, "exp_skew_hermitian input");
  // iS is Hermitian: iS = V diag(mu) V^dag, so exp(S) = V diag(exp(-i mu)) V^dag.
  const Matrix herm = Complex(0.0, 1.0) * S;
  HermitianEigen eig = eig_hermitian(0.5 * (herm + herm.adjoint()));
  Vector phases(eig.values.size());
  for (Eigen::Index j = 0; j < phases.size(); ++j) phases[j] = std::polar(1.0, -eig.values[j]);
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

Matrix evolution_operator(const Matrix& H, double t) {
  require_hermitian(H, "evolution_operator Hamiltonian");
  HermitianEigen eig = eig_hermitian(H);
  Vector phases(eig.values.size());
  for (Eigen::Index j = 0; j < phases.size(); ++j) phases[j] = std::polar(1.0, -t * eig.values[j]);
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

Complex hs_inner(const Matrix& A, const Matrix& B) {
  require_same_dim(A, B, "hs_inner");
  return A.conjugate().cwiseProduct(B).sum();
}

double hs_norm(const Matrix& A) { return A.norm(); }

RealVector skew_coordinates(const Matrix& A) {
  const Eigen::Index d = A.rows();
  RealVector c(d * d);
  Eigen::Index at = 0;
  for (Eigen::Index j = 0; j < d; ++j) c[at++] = A(j, j).imag();
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = j + 1; k < d; ++k) {
      c[at++] = std::numbers::sqrt2 * A(j, k).real();
      c[at++] = std::numbers::sqrt2 * A(j, k).imag();
    }
  }
  return c;
}

Matrix skew_from_coordinates(const RealVector& c, int dim) {
  if (c.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw ValidationError("skew coordinate vector has the wrong length");
  }
  Matrix A = Matrix::Zero(dim, dim);
  Eigen::Index at = 0;
  for (int j = 0; j < dim; ++j) A(j, j) = Complex(0.0, c[at++]);
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      const Complex z(c[at] / std::numbers::sqrt2, c[at + 1] / std::numbers::sqrt2);
      at += 2;
      A(j, k) = z;
      A(k, j) = -std::conj(z);
    }
  }
  return A;
}

}  // namespace eqham
