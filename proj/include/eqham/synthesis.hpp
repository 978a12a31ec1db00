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
#include <optional>
#include <stdexcept>
#include <vector>

#include "eqham/equivalence.hpp"
#include "eqham/lie.hpp"

namespace eqham {

/// The requested implementable subspace is empty.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OptimizerConfig {
  int max_iters = 2000;
  double grad_step = 1e-5;  // central finite-difference step
  double init_step = 1.0;   // first trial step length of the line search
  double cost_tol = 1e-8;   // absolute
  int restarts = 8;
  std::uint64_t seed = 42;
  int threads = 0;  // 0: hardware concurrency
  /// With a stabilized vector and a pure initial state, also require the
  /// relative phase between the transferred state and the stabilized vector
  /// to match the desired evolution (otherwise superpositions pick up a
  /// spurious relative phase even at zero cost).
  bool align_phase = true;

  void validate() const;
};

/// Orthonormal basis of the block-diagonal skew-Hermitian matrices, i.e. the
/// tangent space of U(p_1, ..., p_m) at the identity. Per block: the
/// diagonal i E_jj, then (E_jk - E_kj)/sqrt2 and i (E_jk + E_kj)/sqrt2 for
/// j < k in row-major order.
class BlockTangentBasis {
 public:
  explicit BlockTangentBasis(const BlockStructure& blocks);

  int size() const { return static_cast<int>(entries_.size()); }
  int dim() const { return dim_; }
  /// S(theta) = sum_k theta_k B_k
  Matrix generator(const RealVector& theta) const;
  /// exp(S(theta)), exponentiated block by block.
  Matrix retract(const RealVector& theta) const;

 private:
  struct Entry {
    int row, col;
    enum Kind { Diagonal, Real, Imag } kind;
  };
  int dim_ = 0;
  BlockStructure blocks_;
  std::vector<Entry> entries_;
};

/// Extra residual making the full evolution act on the initial pure state
/// and on the stabilized vector with the same phase as exp(-i t0 H_d).
struct PhaseAnchor {
  Vector initial_state;
  Vector stabilized;
};

struct Evaluation {
  Matrix U_block;
  Matrix W;
  Matrix H;
  RealVector residual;  // projection residual, then (optionally) 2 phase entries
  double cost = 0.0;            // ||H - P(H)||_F
  double phase_mismatch = 0.0;  // |phase residual|, 0 without an anchor
  double objective = 0.0;       // ||residual||
  bool near_branch_cut = false;
};

class SynthesisObjective {
 public:
  SynthesisObjective(EquivalenceFrame frame, AlgebraBasis subspace,
                     std::optional<PhaseAnchor> anchor = std::nullopt);

  const EquivalenceFrame& frame() const { return frame_; }
  const AlgebraBasis& subspace() const { return subspace_; }
  const BlockTangentBasis& tangent() const { return tangent_; }
  bool aligns_phase() const { return anchor_.has_value(); }
  int parameter_count() const { return tangent_.size(); }
  Eigen::Index residual_size() const;

  Evaluation evaluate(const Matrix& U_block) const;
  /// U_block = base * exp(S(theta)).
  Evaluation evaluate_at(const Matrix& base, const RealVector& theta) const;
  double cost(const Matrix& base, const RealVector& theta) const;

 private:
  EquivalenceFrame frame_;
  AlgebraBasis subspace_;
  BlockTangentBasis tangent_;
  std::optional<PhaseAnchor> anchor_;
  // <left|W|right> pairs for the phase residual.
  Vector left_state_, right_state_, left_stab_, right_stab_;
};

/// Phases within this distance of +-pi are treated as on the branch cut.
inline constexpr double kBranchCutBand = 1e-3;

/// ||H - hs_project(H, subspace)||_F at U_block = exp(S(theta)).
double cost(const EquivalenceFrame& frame, const AlgebraBasis& subspace, const RealVector& theta);

/// Central finite-difference gradient of the cost in tangent coordinates.
RealVector finite_difference_gradient(const SynthesisObjective& objective, const Matrix& base,
                                      const RealVector& theta, double step, int threads = 1);

/// Central finite-difference Jacobian of the residual at base (theta = 0).
RealMatrix finite_difference_jacobian(const SynthesisObjective& objective, const Matrix& base,
                                      double step, int threads = 1);

struct TracePoint {
  int iteration = 0;
  double cost = 0.0;
  double objective = 0.0;
};

struct Verification {
  double mapping_error = 0.0;      // ||e^{-i tau H} rho_- e^{i tau H} - rho_+||_F
  double stabilized_leak = 0.0;    // ||(I - v v^dag) W_full v||
  double transfer_fidelity = 0.0;  // |<U_d psi | W_full psi>|^2
  double superposition_fidelity = 0.0;
};

struct SynthesisResult {
  GHCandidate candidate;
  double cost = 0.0;
  double phase_mismatch = 0.0;
  double objective = 0.0;
  bool converged = false;
  int iterations = 0;
  int restart_index = 0;
  int restarts_run = 0;
  std::vector<TracePoint> trace;
  int algebra_dim = 0;
  int subspace_dim = 0;
  std::optional<Verification> verification;
};

/// Levenberg-Marquardt over the block-unitary freedom of G_H with
/// finite-difference Jacobians, retraction U <- U exp(S(delta)) and a
/// backtracking line search on each damped step. Restart 0 starts at the
/// identity, later ones at exp(S(0.1 g)) with g standard normal drawn from
/// a generator seeded with cfg.seed. Stops at the first converged restart;
/// otherwise returns the lowest-objective run (ties: lowest index).
SynthesisResult minimize(const SynthesisObjective& objective, const OptimizerConfig& cfg);

/// Leading eigenvector of rho when rho is pure, otherwise nullopt.
std::optional<Vector> pure_state(const Matrix& rho);

Verification verify(const EquivalenceFrame& frame, const Matrix& H, const Vector& initial_state,
                    const std::optional<Vector>& stabilized);

/// Full pipeline: closure of {-i H_int, -i controls}, optional stabilizing
/// subspace, then minimize(). Throws InfeasibleError when the stabilizing
/// subspace is empty.
SynthesisResult synthesize(const Problem& p, const std::vector<Matrix>& controls,
                           const std::optional<Vector>& stabilized_vector,
                           const OptimizerConfig& cfg);

/// Same, with the implementable subspace supplied by the caller.
SynthesisResult synthesize(const Problem& p, const AlgebraBasis& subspace,
                           const std::optional<Vector>& stabilized_vector,
                           const OptimizerConfig& cfg);

}  // namespace eqham
