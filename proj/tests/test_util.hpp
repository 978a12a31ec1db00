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

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/QR>

#include "eqham/operator.hpp"

// Independent helpers for tests. Nothing here calls into the library's
// numerical routines, so they can serve as oracles.
namespace eqham::testing {

inline Matrix pauli(char axis) {
  Matrix P = Matrix::Zero(2, 2);
  const Complex i(0.0, 1.0);
  switch (axis) {
    case 'X': P << 0, 1, 1, 0; break;
    case 'Y': P << 0, -i, i, 0; break;
    case 'Z': P << 1, 0, 0, -1; break;
    default: P = Matrix::Identity(2, 2);
  }
  return P;
}

inline Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
      K.block(r * B.rows(), c * B.cols(), B.rows(), B.cols()) = A(r, c) * B;
    }
  }
  return K;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double normal() { return normal_(gen_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  Matrix ginibre(Eigen::Index rows, Eigen::Index cols) {
    Matrix A(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (Eigen::Index r = 0; r < rows; ++r) A(r, c) = Complex(normal(), normal());
    }
    return A;
  }
  Matrix ginibre(Eigen::Index d) { return ginibre(d, d); }

  Matrix hermitian(Eigen::Index d) {
    const Matrix A = ginibre(d);
    return 0.5 * (A + A.adjoint());
  }

  Matrix skew_hermitian(Eigen::Index d) {
    const Matrix A = ginibre(d);
    return 0.5 * (A - A.adjoint());
  }

  // Haar-distributed unitary from a phase-corrected QR factorization.
  Matrix unitary(Eigen::Index d) {
    const Eigen::HouseholderQR<Matrix> qr(ginibre(d));
    Matrix Q = qr.householderQ();
    const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < d; ++j) {
      const Complex r = R(j, j);
      Q.col(j) *= r / std::abs(r);
    }
    return Q;
  }

  Vector state(Eigen::Index d) {
    Vector v(d);
    for (Eigen::Index i = 0; i < d; ++i) v[i] = Complex(normal(), normal());
    return v.normalized();
  }

  // Block-diagonal matrix whose blocks are drawn by `draw(size)`.
  template <typename Draw>
  Matrix block_diagonal(const std::vector<int>& sizes, Draw&& draw) {
    int d = 0;
    for (int s : sizes) d += s;
    Matrix M = Matrix::Zero(d, d);
    int off = 0;
    for (int s : sizes) {
      M.block(off, off, s, s) = draw(s);
      off += s;
    }
    return M;
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_;
};

// Truncated Taylor series with scaling and squaring.
inline Matrix taylor_exp(const Matrix& A) {
  int squarings = 0;
  double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.25) {
    norm /= 2.0;
    ++squarings;
  }
  const Matrix B = A / std::pow(2.0, squarings);
  Matrix term = Matrix::Identity(A.rows(), A.cols());
  Matrix sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * B / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

// Coefficients c_0..c_n of det(lambda I - A) = sum c_k lambda^k via
// Faddeev-LeVerrier.
inline std::vector<Complex> characteristic_polynomial(const Matrix& A) {
  const Eigen::Index n = A.rows();
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(n)] = 1.0;
  Matrix M = Matrix::Zero(n, n);
  const Matrix I = Matrix::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    M = A * M + c[static_cast<std::size_t>(n - k + 1)] * I;
    c[static_cast<std::size_t>(n - k)] = -(A * M).trace() / static_cast<double>(k);
  }
  return c;
}

// All roots of a monic polynomial by Durand-Kerner iteration.
inline std::vector<Complex> polynomial_roots(const std::vector<Complex>& c) {
  const std::size_t n = c.size() - 1;
  auto eval = [&](Complex z) {
    Complex v = c[n];
    for (std::size_t k = n; k-- > 0;) v = v * z + c[k];
    return v;
  };
  std::vector<Complex> z(n);
  const Complex seed(0.4, 0.9);
  double radius = 1.0;
  for (std::size_t k = 0; k < n; ++k) radius = std::max(radius, 1.0 + std::abs(c[k]));
  for (std::size_t k = 0; k < n; ++k) z[k] = radius * std::pow(seed, static_cast<double>(k));
  for (int iter = 0; iter < 2000; ++iter) {
    double change = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      Complex denom = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) denom *= z[k] - z[j];
      }
      const Complex step = eval(z[k]) / denom;
      z[k] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15) break;
  }
  // Newton polish.
  for (Complex& r : z) {
    for (int iter = 0; iter < 5; ++iter) {
      Complex p = c[n], dp = 0.0;
      for (std::size_t k = n; k-- > 0;) {
        dp = dp * r + p;
        p = p * r + c[k];
      }
      if (std::abs(dp) == 0.0) break;
      r -= p / dp;
    }
  }
  return z;
}

inline Matrix projector(const Vector& v) { return v * v.adjoint(); }

}  // namespace eqham::testing
