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

#include "eqham/spin.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

namespace eqham::spin {

namespace {

Matrix single(Axis axis) {
  Matrix s = Matrix::Zero(2, 2);
  switch (axis) {
    case Axis::X:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case Axis::Y:
      s(0, 1) = Complex(0.0, -1.0);
      s(1, 0) = Complex(0.0, 1.0);
      break;
    case Axis::Z:
      s(0, 0) = 1.0;
      s(1, 1) = -1.0;
      break;
  }
  return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void check_register(int n) {
  if (n < 1 || n > 12) throw ValidationError("register size must be in [1, 12]");
}

}  // namespace

void ChainSpec::validate() const {
  if (n_qubits < 2 || n_qubits > 8) throw ValidationError("chain length must be in [2, 8]");
  if (!(coupling_scale > 0.0)) throw ValidationError("coupling_scale must be positive");
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
}

ChainSpec preset(std::string_view name) {
  if (name.starts_with("chain")) {
    const std::string digits(name.substr(5));
    if (digits == "4" || digits == "5" || digits == "6") {
      return ChainSpec{std::stoi(digits), 1.0, 1.0};
    }
  }
  throw ValidationError("unknown chain preset '" + std::string(name) + "'");
}

Matrix pauli_on(Axis axis, int site, int n) {
  check_register(n);
  if (site < 1 || site > n) {
    std::ostringstream os;
    os << "site " << site << " out of range [1, " << n << "]";
    throw ValidationError(os.str());
  }
  const Matrix id = Matrix::Identity(2, 2);
  Matrix out = Matrix::Identity(1, 1);
  for (int k = 1; k <= n; ++k) out = kron(out, k == site ? single(axis) : id);
  return out;
}

Matrix dipolar_hamiltonian(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n_qubits;
  Matrix H = Matrix::Zero(spec.dim(), spec.dim());
  for (int k = 1; k <= n; ++k) {
    for (int l = k + 1; l <= n; ++l) {
      const double J = spec.coupling_scale / std::pow(static_cast<double>(l - k), 3);
      H += J * (pauli_on(Axis::X, k, n) * pauli_on(Axis::X, l, n) +
                pauli_on(Axis::Y, k, n) * pauli_on(Axis::Y, l, n) -
                2.0 * pauli_on(Axis::Z, k, n) * pauli_on(Axis::Z, l, n));
    }
  }
  return H;
}

Matrix global_control(Axis axis, int n) {
  check_register(n);
  Matrix H = Matrix::Zero(1 << n, 1 << n);
  for (int k = 1; k <= n; ++k) H += pauli_on(axis, k, n);
  return H;
}

std::vector<double> christandl_couplings(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n_qubits;
  std::vector<double> c;
  c.reserve(n - 1);
  for (int k = 1; k < n; ++k) c.push_back(0.5 * spec.lambda * std::sqrt(double(k) * (n - k)));
  return c;
}

Matrix xy_christandl(const ChainSpec& spec) {
  const std::vector<double> c = christandl_couplings(spec);
  const int n = spec.n_qubits;
  Matrix H = Matrix::Zero(spec.dim(), spec.dim());
  for (int k = 1; k < n; ++k) {
    H += 0.5 * c[k - 1] *
         (pauli_on(Axis::X, k, n) * pauli_on(Axis::X, k + 1, n) +
          pauli_on(Axis::Y, k, n) * pauli_on(Axis::Y, k + 1, n));
  }
  return H;
}

Matrix total_z(int n) { return global_control(Axis::Z, n); }

Vector basis_state(const std::vector<Spin>& pattern) {
  if (pattern.empty()) throw ValidationError("basis_state needs a non-empty pattern");
  check_register(static_cast<int>(pattern.size()));
  Eigen::Index index = 0;
  for (Spin s : pattern) index = 2 * index + (s == Spin::Down ? 1 : 0);
  Vector v = Vector::Zero(Eigen::Index{1} << pattern.size());
  v[index] = 1.0;
  return v;
}

Vector basis_state(std::string_view pattern) {
  std::vector<Spin> spins;
  for (char ch : pattern) {
    if (ch == 'u' || ch == 'U' || ch == '0') {
      spins.push_back(Spin::Up);
    } else if (ch == 'd' || ch == 'D' || ch == '1') {
      spins.push_back(Spin::Down);
    } else {
      throw ValidationError("basis_state pattern must contain only u/d or 0/1");
    }
  }
  return basis_state(spins);
}

}  // namespace eqham::spin
