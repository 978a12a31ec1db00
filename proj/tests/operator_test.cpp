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
#include <numbers>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace eqham {
namespace {

using testing::pauli;
using testing::Rng;

const Complex kI(0.0, 1.0);

TEST(RoleChecks, DetectHermitianSkewAndUnitary) {
  EXPECT_TRUE(is_hermitian(pauli('Y')));
  EXPECT_FALSE(is_hermitian(kI * pauli('Y')));
  EXPECT_TRUE(is_skew_hermitian(kI * pauli('X')));
  EXPECT_TRUE(is_unitary(pauli('Z')));
  EXPECT_FALSE(is_unitary(2.0 * pauli('Z')));
  EXPECT_THROW(require_square(Matrix::Zero(2, 3), "A"), ValidationError);
  EXPECT_THROW(require_same_dim(pauli('X'), Matrix::Identity(4, 4), "A vs B"), ValidationError);
}

TEST(RoleChecks, HermitianToleranceIsRelative) {
  Matrix A = 1e6 * pauli('X');
  A(0, 1) += 1e-6;
  EXPECT_TRUE(is_hermitian(A));
  Matrix B = pauli('X');
  B(0, 1) += 1e-6;
  EXPECT_FALSE(is_hermitian(B));
}

TEST(BlockStructure, GroupsConsecutiveRuns) {
  const RealVector v = (RealVector(6) << 3.0, 3.0 + 1e-12, 1.0, 1.0, 1.0, -2.0).finished();
  const BlockStructure b = BlockStructure::group(v, 1e-8);
  EXPECT_EQ(b.sizes(), (std::vector<int>{2, 3, 1}));
  EXPECT_EQ(b.offsets(), (std::vector<int>{0, 2, 5}));
  EXPECT_EQ(b.dim(), 6);
  EXPECT_EQ(b.group_dim(), 4 + 9 + 1);
  EXPECT_TRUE(b.is_canonical());
}

TEST(BlockStructure, RepeatedValueIsNotCanonical) {
  const std::vector<Block> blocks{{1.0, 1}, {2.0, 1}, {1.0, 1}};
  EXPECT_FALSE(BlockStructure(blocks).is_canonical());
}

TEST(BlockStructure, RejectsEmptyBlock) {
  EXPECT_THROW(BlockStructure(std::vector<Block>{{1.0, 0}}), ValidationError);
}

TEST(BlockStructure, BlockDiagonalPartAndOffBlockMass) {
  const std::vector<int> sizes{1, 2};
  const BlockStructure b = BlockStructure::from_sizes(sizes);
  Matrix X = Matrix::Constant(3, 3, 1.0);
  const Matrix P = block_diagonal_part(X, b);
  EXPECT_EQ(P(0, 1), Complex(0.0));
  EXPECT_EQ(P(2, 1), Complex(1.0));
  EXPECT_NEAR(off_block_norm(X, b), 2.0, 1e-15);
  EXPECT_THROW(off_block_norm(Matrix::Identity(4, 4), b), ValidationError);
}

TEST(EigHermitian, Identity) {
  const HermitianEigen e = eig_hermitian(Matrix::Identity(2, 2));
  EXPECT_NEAR(e.values[0], 1.0, 1e-15);
  EXPECT_NEAR(e.values[1], 1.0, 1e-15);
  EXPECT_NEAR((e.vectors * e.vectors.adjoint() - Matrix::Identity(2, 2)).norm(), 0.0, 1e-14);
}

TEST(EigHermitian, PauliZIsAlreadyDiagonal) {
  const HermitianEigen e = eig_hermitian(pauli('Z'));
  EXPECT_NEAR(e.values[0], 1.0, 1e-15);
  EXPECT_NEAR(e.values[1], -1.0, 1e-15);
  EXPECT_NEAR(std::abs(e.vectors(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(e.vectors(1, 1)), 1.0, 1e-15);
}

TEST(EigHermitian, RejectsNonHermitian) {
  EXPECT_THROW(eig_hermitian(kI * pauli('X')), ValidationError);
}

TEST(EigHermitian, MatchesCharacteristicPolynomialRoots) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix H = rng.hermitian(4);
    const HermitianEigen e = eig_hermitian(H);
    const Matrix R = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    EXPECT_LE((R - H).norm(), 1e-10);

    std::vector<Complex> roots = testing::polynomial_roots(testing::characteristic_polynomial(H));
    std::vector<double> oracle;
    for (const Complex& r : roots) {
      EXPECT_LE(std::abs(r.imag()), 1e-8);
      oracle.push_back(r.real());
    }
    std::sort(oracle.begin(), oracle.end(), std::greater<>());
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(e.values[k], oracle[static_cast<std::size_t>(k)], 1e-8);
  }
}

TEST(EigHermitian, ReconstructsOverManySeeds) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(seed % 7);
    const Matrix H = rng.hermitian(d);
    const HermitianEigen e = eig_hermitian(H);
    ASSERT_LE((e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint() - H).norm(),
              1e-10 * std::max(1.0, H.norm()))
        << "seed " << seed;
    for (Eigen::Index k = 1; k < d; ++k) ASSERT_GE(e.values[k - 1], e.values[k]);
  }
}

TEST(EigUnitary, IdentityIsOneBlock) {
  const Diagonalization dz = eig_unitary(Matrix::Identity(5, 5));
  EXPECT_LE(dz.phases.cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(dz.blocks.sizes(), std::vector<int>{5});
}

TEST(EigUnitary, DiagonalPhases) {
  Matrix W = Matrix::Zero(2, 2);
  W(0, 0) = -kI;
  W(1, 1) = kI;
  const Diagonalization dz = eig_unitary(W);
  EXPECT_NEAR(dz.phases[0], std::numbers::pi / 2, 1e-14);
  EXPECT_NEAR(dz.phases[1], -std::numbers::pi / 2, 1e-14);
  EXPECT_EQ(dz.blocks.count(), 2u);
}

TEST(EigUnitary, MinusOneMapsToPlusPi) {
  const Diagonalization dz = eig_unitary(-Matrix::Identity(3, 3));
  for (Eigen::Index k = 0; k < 3; ++k) EXPECT_NEAR(dz.phases[k], std::numbers::pi, 1e-14);
  EXPECT_EQ(dz.blocks.count(), 1u);
}

TEST(EigUnitary, RejectsNonUnitary) { EXPECT_THROW(eig_unitary(2.0 * pauli('X')), ValidationError); }

TEST(EigUnitary, PhasesAreNegatedHamiltonianEigenvalues) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix H = rng.hermitian(5);
    const double spread = eig_hermitian(H).values.cwiseAbs().maxCoeff();
    H *= 3.0 / spread;
    const Matrix W = testing::taylor_exp(-kI * H);
    const Diagonalization dz = eig_unitary(W);
    RealVector expected = -eig_hermitian(H).values;
    std::sort(expected.begin(), expected.end(), std::greater<>());
    EXPECT_LE((dz.phases - expected).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LE((dz.reconstruct() - W).norm(), 1e-9);
  }
}

TEST(EigUnitary, SplitsDegenerateHermitianPart) {
  // e^{i a} and e^{-i a} share a real part.
  Rng rng(8);
  const Matrix Q = rng.unitary(4);
  Vector phases(4);
  phases << std::exp(kI * 0.7), std::exp(-kI * 0.7), std::exp(kI * 0.7), 1.0;
  const Matrix W = Q * phases.asDiagonal() * Q.adjoint();
  const Diagonalization dz = eig_unitary(W);
  EXPECT_LE((dz.reconstruct() - W).norm(), 1e-9);
  EXPECT_EQ(dz.blocks.sizes(), (std::vector<int>{2, 1, 1}));
  EXPECT_NEAR(dz.phases[0], 0.7, 1e-9);
  EXPECT_NEAR(dz.phases[3], -0.7, 1e-9);
}

TEST(EigUnitary, ReconstructsOverManySeeds) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(1000 + seed);
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(seed % 7);
    const Matrix W = rng.unitary(d);
    const Diagonalization dz = eig_unitary(W);
    ASSERT_LE((dz.reconstruct() - W).norm(), 1e-9) << "seed " << seed;
    ASSERT_LE((dz.V.adjoint() * dz.V - Matrix::Identity(d, d)).norm(), 1e-9);
    for (Eigen::Index k = 0; k < d; ++k) {
      ASSERT_GT(dz.phases[k], -std::numbers::pi);
      ASSERT_LE(dz.phases[k], std::numbers::pi);
      if (k > 0) ASSERT_GE(dz.phases[k - 1], dz.phases[k]);
    }
  }
}

TEST(ExpSkewHermitian, ZeroIsIdentity) {
  EXPECT_LE((exp_skew_hermitian(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)).norm(), 1e-15);
}

TEST(ExpSkewHermitian, PauliRotationByPi) {
  const Matrix U = exp_skew_hermitian(-kI * std::numbers::pi * pauli('X') / 2.0);
  EXPECT_LE((U - (-kI) * pauli('X')).norm(), 1e-14);
}

TEST(ExpSkewHermitian, RejectsHermitianInput) {
  EXPECT_THROW(exp_skew_hermitian(pauli('X')), ValidationError);
}

TEST(ExpSkewHermitian, MatchesTaylorOracle) {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index d = 2 + trial % 6;
    const Matrix S = rng.skew_hermitian(d);
    const Matrix U = exp_skew_hermitian(S);
    EXPECT_TRUE(is_unitary(U));
    EXPECT_LE((U - testing::taylor_exp(S)).norm(), 1e-9);
    EXPECT_NEAR(std::abs(U.determinant()), 1.0, 1e-9);
  }
}

TEST(EvolutionOperator, IsExpOfMinusIHt) {
  Rng rng(3);
  const Matrix H = rng.hermitian(4);
  EXPECT_LE((evolution_operator(H, 0.37) - testing::taylor_exp(-kI * 0.37 * H)).norm(), 1e-9);
}

TEST(HilbertSchmidt, PauliInnerProducts) {
  EXPECT_NEAR(std::abs(hs_inner(pauli('X'), pauli('X')) - Complex(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(hs_inner(pauli('X'), pauli('Y'))), 0.0, 1e-15);
  EXPECT_NEAR(hs_norm(pauli('Z')), std::sqrt(2.0), 1e-15);
  EXPECT_THROW(hs_inner(pauli('X'), Matrix::Identity(4, 4)), ValidationError);
}

TEST(HilbertSchmidt, ConjugateSymmetry) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix A = rng.ginibre(3), B = rng.ginibre(3);
    EXPECT_NEAR(std::abs(hs_inner(A, B) - std::conj(hs_inner(B, A))), 0.0, 1e-12);
    EXPECT_GE(hs_norm(A), 0.0);
  }
}

TEST(SkewCoordinates, RoundTripAndIsometry) {
  Rng rng(6);
  const Matrix A = rng.skew_hermitian(4), B = rng.skew_hermitian(4);
  const RealVector a = skew_coordinates(A), b = skew_coordinates(B);
  EXPECT_EQ(a.size(), 16);
  EXPECT_LE((skew_from_coordinates(a, 4) - A).norm(), 1e-14);
  EXPECT_NEAR(a.dot(b), hs_inner(A, B).real(), 1e-12);
}

// A diagonal T with distinct block values is fixed by conjugation exactly
// when the conjugating matrix is block-diagonal.
TEST(StabilizerProperty, BothDirections) {
  Rng rng(77);
  const std::vector<int> sizes{1, 2, 3};
  const BlockStructure blocks = BlockStructure::from_sizes(sizes);
  Vector t(6);
  t << 2.0, kI, kI, -1.5, -1.5, -1.5;
  const Matrix T = t.asDiagonal();
  for (int trial = 0; trial < 200; ++trial) {
    const bool block = trial % 2 == 0;
    const Matrix X = block ? rng.block_diagonal(sizes, [&](int s) { return rng.ginibre(s); })
                           : rng.ginibre(6);
    const double fixed = (X * T * X.inverse() - T).norm();
    const double off = off_block_norm(X, blocks) / X.norm();
    if (block) {
      EXPECT_LE(fixed, 1e-9);
      EXPECT_LE(off, 1e-9);
    } else {
      EXPECT_GT(fixed, 1e-6);
      EXPECT_GT(off, 1e-6);
    }
  }
}

}  // namespace
}  // namespace eqham
