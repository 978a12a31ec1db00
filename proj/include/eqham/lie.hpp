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

#pragma once

#include <vector>

#include "eqham/operator.hpp"

namespace eqham {

inline constexpr double kDefaultRankTol = 1e-9;

/// Orthonormal real basis (inner product Re trace(A^dag B)) of a linear
/// space of skew-Hermitian matrices.
class AlgebraBasis {
 public:
  explicit AlgebraBasis(int dim);
  /// Validates skew-Hermiticity and orthonormality of `elements`.
  AlgebraBasis(int dim, std::vector<Matrix> elements);

  /// Builds from a coordinate frame whose columns are already orthonormal.
  struct TrustedFrame {};
  AlgebraBasis(int dim, RealMatrix frame, TrustedFrame);

  int dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const std::vector<Matrix>& elements() const { return elements_; }
  const Matrix& operator[](std::size_t i) const { return elements_[i]; }

  /// Columns are skew_coordinates() of the elements.
  const RealMatrix& frame() const { return frame_; }

  RealMatrix gram() const;
  /// Coordinates Re trace(E_k^dag A) of a skew-Hermitian A.
  RealVector coordinates(const Matrix& A) const;
  Matrix combine(const RealVector& coords) const;
  /// Orthogonal projection of a skew-Hermitian matrix onto the span.
  Matrix project(const Matrix& A) const;

 private:
  int dim_ = 0;
  std::vector<Matrix> elements_;
  RealMatrix frame_;
};

/// Smallest real Lie algebra containing the skew-Hermitian generators.
///
/// Generators are orthonormalized first, in input order. Every accepted
/// element E is then bracketed with each normalized generator g; the
/// bracket [g, E] is kept when its residual after two Gram-Schmidt passes
/// exceeds rank_tol * max(1, ||[g, E]||). Right-nested brackets of
/// generators span the generated algebra, so the result is closed.
AlgebraBasis lie_closure(const std::vector<Matrix>& generators, double rank_tol = kDefaultRankTol);

/// Orthonormal basis of {A in span(basis) : (I - v v^dag) A v = 0}.
AlgebraBasis eigenvector_stabilizer_subspace(const AlgebraBasis& basis, const Vector& v,
                                             double rank_tol = kDefaultRankTol);

/// Projection of a Hermitian H onto i * span(subspace).
Matrix hs_project(const Matrix& H, const AlgebraBasis& subspace);

}  // namespace eqham
