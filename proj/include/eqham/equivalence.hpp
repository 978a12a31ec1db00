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

#include <cstdint>
#include <vector>

#include "eqham/operator.hpp"

// Equivalent-Hamiltonian sets for a fixed state-to-state map.
//
// The state first evolves under H_int for eta*t0/2, then under a control
// Hamiltonian for (1 - eta)*t0, then under H_int again for eta*t0/2. The
// unitaries W taking rho_minus to rho_plus form the two-sided coset
//
//     G_U = U_plus * U(p_1, ..., p_m) * U_minus^dag
//
// of the block-diagonal unitary group whose block sizes are the eigenvalue
// multiplicities of rho_minus. Every matrix logarithm of such a W has the
// form V X_T diag(-phi_j + 2 pi k_j) X_T^{-1} V^dag / ((1 - eta) t0), with
// (V, diag(exp(i phi))) a diagonalization of W and X_T in the centralizer of
// diag(exp(i phi)); it is Hermitian iff X_T^dag X_T commutes with the
// diagonal. Note that U(p_1, ..., p_m) has real dimension sum p_j^2, which
// is 1 + (d-1)^2 for a pure state (U(1) x U(d-1), global phase included).
namespace eqham {

struct Problem {
  Matrix rho_i;  // initial density matrix
  Matrix H_d;    // desired Hamiltonian
  Matrix H_int;  // internal Hamiltonian
  double t0 = 1.0;
  double eta = 0.0;

  void validate() const;
  int dim() const { return static_cast<int>(rho_i.rows()); }
  double control_time() const { return (1.0 - eta) * t0; }
};

struct EquivalenceFrame {
  Matrix U_int;  // exp(-i (eta/2) t0 H_int)
  Matrix U_d;    // exp(-i t0 H_d)
  Matrix U_minus;
  Matrix U_plus;  // U_int^dag U_d U_int^dag U_minus
  RealVector d_values;  // eigenvalues of rho_minus, descending
  BlockStructure D;
  Matrix rho_f;
  Matrix rho_minus;
  Matrix rho_plus;
  double t0 = 1.0;
  double eta = 0.0;

  int dim() const { return static_cast<int>(U_minus.rows()); }
  double control_time() const { return (1.0 - eta) * t0; }
};

/// One point of G_H together with the freedoms that produced it.
struct GHCandidate {
  Matrix block_unitary;  // U_plus^dag W U_minus
  Diagonalization diag_choice;
  std::vector<std::int64_t> k;
  Matrix X_T;
  Matrix H;  // the realized logarithm; Hermitian iff `hermitian`
  bool hermitian = true;
};

/// perm[j] is the source column placed at position j.
using Permutation = std::vector<int>;

EquivalenceFrame build_frame(const Problem& p);

/// Off-block Frobenius mass of U_plus^dag W U_minus.
double gu_membership_defect(const EquivalenceFrame& frame, const Matrix& W);
/// Membership tolerance 1e-8 * sqrt(d) on gu_membership_defect.
bool in_gu(const EquivalenceFrame& frame, const Matrix& W);

/// W = U_plus U_block U_minus^dag.
Matrix gu_element(const EquivalenceFrame& frame, const Matrix& U_block);

/// k = 0, X_T = I, diagonalization chosen by eig_unitary.
GHCandidate principal_hamiltonian(const EquivalenceFrame& frame, const Matrix& W);

GHCandidate gh_element(const EquivalenceFrame& frame, const Matrix& W,
                       const Diagonalization& diag_choice, const std::vector<std::int64_t>& k,
                       const Matrix& X_T);

/// ||[X_T^dag X_T, diag(-phi_j + 2 pi k_j)]||_F
double hermiticity_defect(const Matrix& X_T, const RealVector& phases,
                          const std::vector<std::int64_t>& k);

/// (V W_block P, P^dag T P): another diagonalization of the same unitary.
Diagonalization enumerate_du(const Diagonalization& diag_choice, const Matrix& W_block,
                             const Permutation& P);

}  // namespace eqham
