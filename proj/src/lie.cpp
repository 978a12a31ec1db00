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

#include "eqham/lie.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

namespace eqham {

namespace {

constexpr double kOrthonormalTol = 1e-8;

std::vector<Matrix> elements_from_frame(const RealMatrix& frame, int dim) {
  std::vector<Matrix> out;
  out.reserve(frame.cols());
  for (Eigen::Index k = 0; k < frame.cols(); ++k) {
    out.push_back(skew_from_coordinates(frame.col(k), dim));
  }
  return out;
}

// Orthonormal frame in u(d) coordinates, grown one batch of candidates at a
// time. Within a batch the candidate with the largest relative residual is
// accepted first, so nearly dependent directions are only taken once nothing
// better conditioned is left.
class FrameBuilder {
 public:
  explicit FrameBuilder(int dim) : rows_(static_cast<Eigen::Index>(dim) * dim) {
    storage_.resize(rows_, std::min<Eigen::Index>(rows_, 16));
  }

  Eigen::Index size() const { return count_; }
  auto frame() const { return storage_.leftCols(count_); }

  // Returns the number of accepted columns; they are appended in order.
  Eigen::Index absorb(RealMatrix batch, double rank_tol) {
    const Eigen::Index m = batch.cols();
    if (m == 0) return 0;
    RealVector scale(m);
    for (Eigen::Index j = 0; j < m; ++j) scale[j] = std::max(batch.col(j).norm(), 1.0);
    for (int pass = 0; pass < 2 && count_ > 0; ++pass) {
      const RealMatrix overlap = frame().transpose() * batch;
      batch.noalias() -= frame() * overlap;
    }
    std::vector<bool> used(static_cast<std::size_t>(m), false);
    const Eigen::Index start = count_;
    while (count_ < rows_) {
      Eigen::Index best = -1;
      double best_ratio = rank_tol;
      for (Eigen::Index j = 0; j < m; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double ratio = batch.col(j).norm() / scale[j];
        if (ratio > best_ratio) {
          best_ratio = ratio;
          best = j;
        }
      }
      if (best < 0) break;
      used[static_cast<std::size_t>(best)] = true;
      RealVector q = batch.col(best);
      // Second pass against everything accepted so far.
      q -= frame() * (frame().transpose() * q);
      const double qn = q.norm();
      if (!(qn > rank_tol * scale[best])) continue;
      q /= qn;
      append(q);
      const RowVector proj = q.transpose() * batch;
      batch.noalias() -= q * proj;
    }
    return count_ - start;
  }

  RealMatrix release() const { return storage_.leftCols(count_); }

 private:
  using RowVector = Eigen::RowVectorXd;

  void append(const RealVector& q) {
    if (count_ == storage_.cols()) {
      storage_.conservativeResize(Eigen::NoChange, std::min<Eigen::Index>(rows_, 2 * count_));
    }
    storage_.col(count_++) = q;
  }

  Eigen::Index rows_;
  RealMatrix storage_;
  Eigen::Index count_ = 0;
};

}  // namespace

AlgebraBasis::AlgebraBasis(int dim) : dim_(dim), frame_(static_cast<Eigen::Index>(dim) * dim, 0) {
  if (dim < 1) throw ValidationError("algebra dimension must be positive");
}

AlgebraBasis::AlgebraBasis(int dim, std::vector<Matrix> elements)
    : dim_(dim), elements_(std::move(elements)) {
  if (dim < 1) throw ValidationError("algebra dimension must be positive");
  if (elements_.size() > static_cast<std::size_t>(dim) * dim) {
    throw ValidationError("more basis elements than the real dimension of u(d)");
  }
  frame_.resize(static_cast<Eigen::Index>(dim) * dim, static_cast<Eigen::Index>(elements_.size()));
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    const Matrix& e = elements_[k];
    if (e.rows() != dim || e.cols() != dim) {
      throw ValidationError("basis element has the wrong dimension");
    }
    require_skew_hermitian(e, "basis element");
    frame_.col(static_cast<Eigen::Index>(k)) = skew_coordinates(e);
  }
  const RealMatrix g = gram();
  const double defect =
      (g - RealMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
  if (!elements_.empty() && defect > kOrthonormalTol) {
    std::ostringstream os;
    os << "basis is not orthonormal: Gram defect " << defect;
    throw ValidationError(os.str());
  }
}

AlgebraBasis::AlgebraBasis(int dim, RealMatrix frame, TrustedFrame)
    : dim_(dim), elements_(elements_from_frame(frame, dim)), frame_(std::move(frame)) {}

RealMatrix AlgebraBasis::gram() const { return frame_.transpose() * frame_; }

RealVector AlgebraBasis::coordinates(const Matrix& A) const {
  if (A.rows() != dim_ || A.cols() != dim_) throw ValidationError("coordinates: dimension mismatch");
  return frame_.transpose() * skew_coordinates(A);
}

Matrix AlgebraBasis::combine(const RealVector& coords) const {
  if (coords.size() != frame_.cols()) throw ValidationError("combine: coordinate length mismatch");
  return skew_from_coordinates(frame_ * coords, dim_);
}

Matrix AlgebraBasis::project(const Matrix& A) const {
  if (A.rows() != dim_ || A.cols() != dim_) throw ValidationError("project: dimension mismatch");
  const RealVector c = skew_coordinates(A);
  return skew_from_coordinates(frame_ * (frame_.transpose() * c), dim_);
}

AlgebraBasis lie_closure(const std::vector<Matrix>& generators, double rank_tol) {
  if (generators.empty()) throw ValidationError("lie_closure needs at least one generator");
  if (!(rank_tol > 0.0)) throw ValidationError("rank_tol must be positive");
  const auto dim = static_cast<int>(generators.front().rows());
  std::vector<Matrix> normalized;
  for (const Matrix& g : generators) {
    require_skew_hermitian(g, "generator");
    if (g.rows() != dim) throw ValidationError("generators have mismatched dimensions");
    const double n = g.norm();
    if (n > 0.0) normalized.push_back(g / n);
  }

  FrameBuilder builder(dim);
  RealMatrix batch(static_cast<Eigen::Index>(dim) * dim, static_cast<Eigen::Index>(normalized.size()));
  for (std::size_t k = 0; k < normalized.size(); ++k) {
    batch.col(static_cast<Eigen::Index>(k)) = skew_coordinates(normalized[k]);
  }
  // Breadth-first levels: bracket every generator with the previous level.
  Eigen::Index level_begin = 0;
  Eigen::Index level_size = builder.absorb(std::move(batch), rank_tol);
  while (level_size > 0) {
    const auto g_count = static_cast<Eigen::Index>(normalized.size());
    RealMatrix next(static_cast<Eigen::Index>(dim) * dim, level_size * g_count);
    for (Eigen::Index j = 0; j < level_size; ++j) {
      const Matrix element = skew_from_coordinates(builder.frame().col(level_begin + j), dim);
      for (Eigen::Index g = 0; g < g_count; ++g) {
        next.col(j * g_count + g) = skew_coordinates(commutator(normalized[static_cast<std::size_t>(g)], element));
      }
    }
    level_begin += level_size;
    level_size = builder.absorb(std::move(next), rank_tol);
  }
  return AlgebraBasis(dim, builder.release(), AlgebraBasis::TrustedFrame{});
}

AlgebraBasis eigenvector_stabilizer_subspace(const AlgebraBasis& basis, const Vector& v,
                                             double rank_tol) {
  if (v.size() != basis.dim()) throw ValidationError("stabilized vector has the wrong dimension");
  const double vn = v.norm();
  if (vn == 0.0) throw ValidationError("stabilized vector is zero");
  const Vector u = v / vn;
  const auto m = static_cast<Eigen::Index>(basis.size());
  if (m == 0) return AlgebraBasis(basis.dim());

  // Column k: real and imaginary parts of (I - u u^dag) A_k u.
  const Eigen::Index d = basis.dim();
  RealMatrix leak(2 * d, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Vector Au = basis[static_cast<std::size_t>(k)] * u;
    const Vector perp = Au - u * u.dot(Au);
    leak.col(k).head(d) = perp.real();
    leak.col(k).tail(d) = perp.imag();
  }
  Eigen::BDCSVD<RealMatrix> svd(leak, Eigen::ComputeFullV);
  const RealVector& sigma = svd.singularValues();
  const double cutoff = rank_tol * std::max(1.0, sigma.size() ? sigma[0] : 0.0);
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma[rank] > cutoff) ++rank;
  const RealMatrix null = svd.matrixV().rightCols(m - rank);
  return AlgebraBasis(basis.dim(), basis.frame() * null, AlgebraBasis::TrustedFrame{});
}

Matrix hs_project(const Matrix& H, const AlgebraBasis& subspace) {
  require_hermitian(H, "hs_project input");
  if (H.rows() != subspace.dim()) throw ValidationError("hs_project: dimension mismatch");
  const Complex i(0.0, 1.0);
  Matrix P = i * subspace.project(-i * H);
  return 0.5 * (P + P.adjoint());
}

}  // namespace eqham
