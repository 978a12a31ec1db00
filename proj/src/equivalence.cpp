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

#include "eqham/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/LU>

namespace eqham {

namespace {

constexpr double kStateTol = 1e-10;
constexpr double kMembershipTol = 1e-8;
constexpr double kReconstructTol = 1e-9;
constexpr double kCentralizerTol = 1e-9;

Matrix hermitize(const Matrix& A) { return 0.5 * (A + A.adjoint()); }

RealVector log_diagonal(const RealVector& phases, const std::vector<std::int64_t>& k) {
  RealVector out(phases.size());
  for (Eigen::Index j = 0; j < phases.size(); ++j) {
    out[j] = -phases[j] + 2.0 * std::numbers::pi * static_cast<double>(k[j]);
  }
  return out;
}

void require_in_gu(const EquivalenceFrame& frame, const Matrix& W) {
  require_unitary(W, "G_U candidate");
  if (W.rows() != frame.dim()) throw ValidationError("G_U candidate has the wrong dimension");
  const double defect = gu_membership_defect(frame, W);
  const double tol = kMembershipTol * std::sqrt(static_cast<double>(frame.dim()));
  if (!(defect <= tol)) {
    std::ostringstream os;
    os << "unitary is not in G_U: off-block mass " << defect << " exceeds " << tol;
    throw ValidationError(os.str());
  }
}

}  // namespace

void Problem::validate() const {
  require_hermitian(rho_i, "rho_i");
  require_hermitian(H_d, "H_d");
  require_hermitian(H_int, "H_int");
  require_same_dim(rho_i, H_d, "H_d vs rho_i");
  require_same_dim(rho_i, H_int, "H_int vs rho_i");
  if (!(t0 > 0.0)) throw ValidationError("t0 must be positive");
  if (!(eta >= 0.0 && eta < 1.0)) throw ValidationError("eta must lie in [0, 1)");
  const double trace = rho_i.trace().real();
  if (std::abs(trace - 1.0) > kStateTol) {
    std::ostringstream os;
    os << "rho_i must have unit trace, got " << trace;
    throw ValidationError(os.str());
  }
  const HermitianEigen eig = eig_hermitian(rho_i);
  if (eig.values[eig.values.size() - 1] < -kStateTol) {
    throw ValidationError("rho_i must be positive semidefinite");
  }
}

EquivalenceFrame build_frame(const Problem& p) {
  p.validate();
  EquivalenceFrame f;
  f.t0 = p.t0;
  f.eta = p.eta;
  f.U_int = evolution_operator(p.H_int, 0.5 * p.eta * p.t0);
  f.U_d = evolution_operator(p.H_d, p.t0);
  f.rho_f = hermitize(f.U_d * p.rho_i * f.U_d.adjoint());
  f.rho_minus = hermitize(f.U_int * p.rho_i * f.U_int.adjoint());
  f.rho_plus = hermitize(f.U_int.adjoint() * f.rho_f * f.U_int);
  const HermitianEigen eig = eig_hermitian(f.rho_minus);
  f.U_minus = eig.vectors;
  f.d_values = eig.values;
  f.D = BlockStructure::group(eig.values, grouping_tolerance(f.rho_minus));
  f.U_plus = f.U_int.adjoint() * f.U_d * f.U_int.adjoint() * f.U_minus;
  return f;
}

double gu_membership_defect(const EquivalenceFrame& frame, const Matrix& W) {
  return off_block_norm(frame.U_plus.adjoint() * W * frame.U_minus, frame.D);
}

bool in_gu(const EquivalenceFrame& frame, const Matrix& W) {
  return W.rows() == frame.dim() && W.cols() == frame.dim() &&
         gu_membership_defect(frame, W) <= kMembershipTol * std::sqrt(double(frame.dim()));
}

Matrix gu_element(const EquivalenceFrame& frame, const Matrix& U_block) {
  require_unitary(U_block, "block unitary");
  if (U_block.rows() != frame.dim()) throw ValidationError("block unitary has the wrong dimension");
  const double defect = off_block_norm(U_block, frame.D);
  const double tol = kMembershipTol * std::sqrt(static_cast<double>(frame.dim()));
  if (!(defect <= tol)) {
    std::ostringstream os;
    os << "block unitary does not conform to the block structure of D: off-block mass " << defect;
    throw ValidationError(os.str());
  }
  return frame.U_plus * U_block * frame.U_minus.adjoint();
}

GHCandidate principal_hamiltonian(const EquivalenceFrame& frame, const Matrix& W) {
  require_in_gu(frame, W);
  GHCandidate c;
  c.block_unitary = frame.U_plus.adjoint() * W * frame.U_minus;
  c.diag_choice = eig_unitary(W);
  c.k.assign(static_cast<std::size_t>(frame.dim()), 0);
  c.X_T = Matrix::Identity(frame.dim(), frame.dim());
  const RealVector lam = -c.diag_choice.phases / frame.control_time();
  c.H = hermitize(c.diag_choice.V * lam.cast<Complex>().asDiagonal() * c.diag_choice.V.adjoint());
  c.hermitian = true;
  return c;
}

double hermiticity_defect(const Matrix& X_T, const RealVector& phases,
                          const std::vector<std::int64_t>& k) {
  const Matrix gram = X_T.adjoint() * X_T;
  const RealVector lam = log_diagonal(phases, k);
  const Vector lc = lam.cast<Complex>();
  const auto L = lc.asDiagonal();
  return (gram * L - L * gram).norm();
}

GHCandidate gh_element(const EquivalenceFrame& frame, const Matrix& W,
                       const Diagonalization& diag_choice, const std::vector<std::int64_t>& k,
                       const Matrix& X_T) {
  require_in_gu(frame, W);
  const int d = frame.dim();
  if (diag_choice.V.rows() != d || diag_choice.phases.size() != d) {
    throw ValidationError("diagonalization has the wrong dimension");
  }
  if (static_cast<int>(k.size()) != d) throw ValidationError("branch integer list has the wrong length");
  require_square(X_T, "X_T");
  if (X_T.rows() != d) throw ValidationError("X_T has the wrong dimension");
  require_unitary(diag_choice.V, "diagonalizing matrix V");
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  const double recon = (diag_choice.reconstruct() - W).norm();
  if (!(recon <= kReconstructTol * sqrt_d)) {
    std::ostringstream os;
    os << "diagonalization does not reconstruct W: error " << recon;
    throw ValidationError(os.str());
  }

  Eigen::FullPivLU<Matrix> lu(X_T);
  if (!lu.isInvertible()) throw ValidationError("X_T is singular");
  const Vector t = diag_choice.eigenvalues();
  const auto T = t.asDiagonal();
  const double central = (X_T * T - T * X_T).norm();
  if (!(central <= kCentralizerTol * std::max(1.0, X_T.norm()))) {
    std::ostringstream os;
    os << "X_T does not commute with T: defect " << central;
    throw ValidationError(os.str());
  }

  const RealVector lam = log_diagonal(diag_choice.phases, k);
  const Matrix inner = X_T * lam.cast<Complex>().asDiagonal() * lu.inverse();
  GHCandidate c;
  c.block_unitary = frame.U_plus.adjoint() * W * frame.U_minus;
  c.diag_choice = diag_choice;
  c.k = k;
  c.X_T = X_T;
  c.H = diag_choice.V * inner * diag_choice.V.adjoint() / frame.control_time();
  const Matrix gram = X_T.adjoint() * X_T;
  c.hermitian = hermiticity_defect(X_T, diag_choice.phases, k) <=
                kCentralizerTol * std::max(1.0, gram.norm() * lam.norm());
  if (c.hermitian) c.H = hermitize(c.H);
  return c;
}

Diagonalization enumerate_du(const Diagonalization& diag_choice, const Matrix& W_block,
                             const Permutation& P) {
  const Eigen::Index d = diag_choice.V.rows();
  if (diag_choice.blocks.dim() != d) throw ValidationError("diagonalization block structure is inconsistent");
  require_unitary(W_block, "W_block");
  if (W_block.rows() != d) throw ValidationError("W_block has the wrong dimension");
  const double defect = off_block_norm(W_block, diag_choice.blocks);
  if (!(defect <= kReconstructTol * std::sqrt(static_cast<double>(d)))) {
    std::ostringstream os;
    os << "W_block does not conform to the phase degeneracy blocks: off-block mass " << defect;
    throw ValidationError(os.str());
  }
  if (static_cast<Eigen::Index>(P.size()) != d) throw ValidationError("permutation has the wrong length");
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  for (int j : P) {
    if (j < 0 || j >= d || seen[static_cast<std::size_t>(j)]) {
      throw ValidationError("P is not a permutation");
    }
    seen[static_cast<std::size_t>(j)] = true;
  }

  const Matrix rotated = diag_choice.V * W_block;
  Diagonalization out{Matrix(d, d), RealVector(d), {}};
  std::vector<Complex> values(static_cast<std::size_t>(d));
  for (Eigen::Index j = 0; j < d; ++j) {
    const int src = P[static_cast<std::size_t>(j)];
    out.V.col(j) = rotated.col(src);
    out.phases[j] = diag_choice.phases[src];
    values[static_cast<std::size_t>(j)] = std::polar(1.0, out.phases[j]);
  }
  out.blocks = BlockStructure::group(std::span<const Complex>(values), kGroupingTol * std::sqrt(double(d)));
  return out;
}

}  // namespace eqham
