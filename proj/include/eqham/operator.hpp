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

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace eqham {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Raised whenever an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Role tolerances. Hermitian/skew checks are relative to max(1, ||A||_F);
// the unitary check is ||A^dag A - I||_F <= kUnitaryTol * dim.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-9;
inline constexpr double kGroupingTol = 1e-8;

/// max |A - A^dag| over entries.
double hermitian_defect(const Matrix& A);
/// max |A + A^dag| over entries.
double skew_hermitian_defect(const Matrix& A);
/// ||A^dag A - I||_F.
double unitary_defect(const Matrix& A);

bool is_hermitian(const Matrix& A, double tol = kHermitianTol);
bool is_skew_hermitian(const Matrix& A, double tol = kHermitianTol);
bool is_unitary(const Matrix& A, double tol = kUnitaryTol);

void require_square(const Matrix& A, std::string_view what);
void require_hermitian(const Matrix& A, std::string_view what);
void require_skew_hermitian(const Matrix& A, std::string_view what);
void require_unitary(const Matrix& A, std::string_view what);
void require_same_dim(const Matrix& A, const Matrix& B, std::string_view what);

/// Grouping tolerance for eigenvalues of A: kGroupingTol * max(1, ||A||_F).
double grouping_tolerance(const Matrix& A);

struct Block {
  Complex value;
  int size = 0;
};

/// Ordered diagonal blocks, each a scalar multiple of an identity.
///
/// A canonical structure (as produced by the eigensolvers) has pairwise
/// distinct block values. Structures describing a permuted diagonal may
/// repeat a value in non-adjacent runs; see is_canonical().
class BlockStructure {
 public:
  BlockStructure() = default;
  explicit BlockStructure(std::vector<Block> blocks);

  /// Groups consecutive entries of `values` whose distance to the first
  /// entry of the current run is <= tol.
  static BlockStructure group(std::span<const Complex> values, double tol);
  static BlockStructure group(const RealVector& values, double tol);
  /// Blocks of the given sizes with values 0, 1, 2, ...
  static BlockStructure from_sizes(std::span<const int> sizes);

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t count() const { return blocks_.size(); }
  int dim() const;
  std::vector<int> sizes() const;
  std::vector<int> offsets() const;
  /// Real dimension of the block-diagonal unitary group, sum of size^2.
  int group_dim() const;
  bool is_canonical(double tol = kGroupingTol) const;

 private:
  std::vector<Block> blocks_;
};

/// Frobenius norm of the entries of X lying outside the diagonal blocks.
double off_block_norm(const Matrix& X, const BlockStructure& blocks);
/// Zeroes every entry of X outside the diagonal blocks.
Matrix block_diagonal_part(const Matrix& X, const BlockStructure& blocks);

struct HermitianEigen {
  RealVector values;  // descending
  Matrix vectors;     // columns orthonormal
};

/// A = V diag(values) V^dag with values sorted descending.
HermitianEigen eig_hermitian(const Matrix& A);

/// One diagonalization (V, T) of a unitary with T = diag(exp(i phases)).
struct Diagonalization {
  Matrix V;
  RealVector phases;  // in (-pi, pi]
  BlockStructure blocks;

  Vector eigenvalues() const;
  Matrix reconstruct() const;
};

/// Phases descending, ties in first-occurrence column order; blocks group
/// phases whose exp(i phi) agree within the grouping tolerance.
Diagonalization eig_unitary(const Matrix& W);

Matrix exp_skew_hermitian(const Matrix& S);
/// exp(-i t H) for Hermitian H.
Matrix evolution_operator(const Matrix& H, double t);

/// trace(A^dag B)
Complex hs_inner(const Matrix& A, const Matrix& B);
double hs_norm(const Matrix& A);

inline Matrix commutator(const Matrix& A, const Matrix& B) { return A * B - B * A; }

/// Orthonormal real coordinates of a skew-Hermitian matrix in u(d), length d^2.
/// The Euclidean inner product of two coordinate vectors equals
/// Re trace(A^dag B).
RealVector skew_coordinates(const Matrix& A);
Matrix skew_from_coordinates(const RealVector& c, int dim);

}  // namespace eqham
