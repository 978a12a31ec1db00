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

#include "eqham/synthesis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <thread>

#include <Eigen/Cholesky>

namespace eqham {

namespace {

constexpr double kPureTol = 1e-10;

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, n). Each index writes only its own output slot, so
// results do not depend on the number of workers.
void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  const int workers = std::min(resolve_threads(threads), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) fn(i);
    });
  }
}

}  // namespace

void OptimizerConfig::validate() const {
  if (max_iters < 1) throw ValidationError("max_iters must be positive");
  if (!(grad_step > 0.0)) throw ValidationError("grad_step must be positive");
  if (!(init_step > 0.0)) throw ValidationError("init_step must be positive");
  if (!(cost_tol > 0.0)) throw ValidationError("cost_tol must be positive");
  if (restarts < 1) throw ValidationError("restarts must be at least 1");
  if (threads < 0) throw ValidationError("threads must be non-negative");
}

BlockTangentBasis::BlockTangentBasis(const BlockStructure& blocks)
    : dim_(blocks.dim()), blocks_(blocks) {
  int at = 0;
  for (const Block& b : blocks.blocks()) {
    for (int j = at; j < at + b.size; ++j) entries_.push_back({j, j, Entry::Diagonal});
    for (int j = at; j < at + b.size; ++j) {
      for (int k = j + 1; k < at + b.size; ++k) {
        entries_.push_back({j, k, Entry::Real});
        entries_.push_back({j, k, Entry::Imag});
      }
    }
    at += b.size;
  }
}

Matrix BlockTangentBasis::generator(const RealVector& theta) const {
  if (theta.size() != size()) throw ValidationError("tangent coordinate vector has the wrong length");
  Matrix S = Matrix::Zero(dim_, dim_);
  for (std::size_t n = 0; n < entries_.size(); ++n) {
    const Entry& e = entries_[n];
    const double t = theta[static_cast<Eigen::Index>(n)];
    switch (e.kind) {
      case Entry::Diagonal:
        S(e.row, e.col) += Complex(0.0, t);
        break;
      case Entry::Real:
        S(e.row, e.col) += t / std::numbers::sqrt2;
        S(e.col, e.row) -= t / std::numbers::sqrt2;
        break;
      case Entry::Imag:
        S(e.row, e.col) += Complex(0.0, t / std::numbers::sqrt2);
        S(e.col, e.row) += Complex(0.0, t / std::numbers::sqrt2);
        break;
    }
  }
  return S;
}

Matrix BlockTangentBasis::retract(const RealVector& theta) const {
  const Matrix S = generator(theta);
  Matrix U = Matrix::Zero(dim_, dim_);
  int at = 0;
  for (const Block& b : blocks_.blocks()) {
    U.block(at, at, b.size, b.size) = exp_skew_hermitian(S.block(at, at, b.size, b.size));
    at += b.size;
  }
  return U;
}

SynthesisObjective::SynthesisObjective(EquivalenceFrame frame, AlgebraBasis subspace,
                                       std::optional<PhaseAnchor> anchor)
    : frame_(std::move(frame)),
      subspace_(std::move(subspace)),
      tangent_(frame_.D),
      anchor_(std::move(anchor)) {
  if (subspace_.dim() != frame_.dim()) throw ValidationError("subspace dimension does not match the frame");
  if (anchor_) {
    const Vector& psi = anchor_->initial_state;
    const Vector& v = anchor_->stabilized;
    if (psi.size() != frame_.dim() || v.size() != frame_.dim()) {
      throw ValidationError("phase anchor states have the wrong dimension");
    }
    // <U_d x | U_int W U_int x> = <U_int^dag U_d x | W | U_int x>
    const Matrix back = frame_.U_int.adjoint() * frame_.U_d;
    left_state_ = back * psi.normalized();
    right_state_ = frame_.U_int * psi.normalized();
    left_stab_ = back * v.normalized();
    right_stab_ = frame_.U_int * v.normalized();
  }
}

Eigen::Index SynthesisObjective::residual_size() const {
  const Eigen::Index d = frame_.dim();
  return d * d + (anchor_ ? 2 : 0);
}

Evaluation SynthesisObjective::evaluate(const Matrix& U_block) const {
  Evaluation ev;
  ev.U_block = U_block;
  ev.W = frame_.U_plus * U_block * frame_.U_minus.adjoint();
  const Diagonalization diag = eig_unitary(ev.W);
  const RealVector lam = -diag.phases / frame_.control_time();
  ev.H = diag.V * lam.cast<Complex>().asDiagonal() * diag.V.adjoint();
  ev.H = 0.5 * (ev.H + ev.H.adjoint());
  ev.near_branch_cut = diag.phases.cwiseAbs().maxCoeff() > std::numbers::pi - kBranchCutBand;

  // -iH in u(d) coordinates minus its projection onto the subspace.
  const RealVector c = skew_coordinates(Complex(0.0, -1.0) * ev.H);
  const RealMatrix& F = subspace_.frame();
  RealVector proj_residual = c;
  if (F.cols() > 0) proj_residual.noalias() -= F * (F.transpose() * c);
  ev.cost = proj_residual.norm();

  ev.residual.resize(residual_size());
  ev.residual.head(proj_residual.size()) = proj_residual;
  if (anchor_) {
    const Complex z = left_stab_.dot(ev.W * right_stab_) - left_state_.dot(ev.W * right_state_);
    ev.residual[proj_residual.size()] = z.real();
    ev.residual[proj_residual.size() + 1] = z.imag();
    ev.phase_mismatch = std::abs(z);
  }
  ev.objective = ev.residual.norm();
  return ev;
}

Evaluation SynthesisObjective::evaluate_at(const Matrix& base, const RealVector& theta) const {
  return evaluate(base * tangent_.retract(theta));
}

double SynthesisObjective::cost(const Matrix& base, const RealVector& theta) const {
  return evaluate_at(base, theta).cost;
}

double cost(const EquivalenceFrame& frame, const AlgebraBasis& subspace, const RealVector& theta) {
  SynthesisObjective objective(frame, subspace);
  if (theta.size() != objective.parameter_count()) {
    throw ValidationError("theta length must equal the real dimension of the block group");
  }
  return objective.cost(Matrix::Identity(frame.dim(), frame.dim()), theta);
}

RealVector finite_difference_gradient(const SynthesisObjective& objective, const Matrix& base,
                                      const RealVector& theta, double step, int threads) {
  const int n = objective.parameter_count();
  if (theta.size() != n) throw ValidationError("theta has the wrong length");
  RealVector grad(n);
  parallel_for(n, threads, [&](int j) {
    RealVector plus = theta, minus = theta;
    plus[j] += step;
    minus[j] -= step;
    grad[j] = (objective.cost(base, plus) - objective.cost(base, minus)) / (2.0 * step);
  });
  return grad;
}

RealMatrix finite_difference_jacobian(const SynthesisObjective& objective, const Matrix& base,
                                      double step, int threads) {
  const int n = objective.parameter_count();
  RealMatrix J(objective.residual_size(), n);
  parallel_for(n, threads, [&](int j) {
    RealVector delta = RealVector::Zero(n);
    delta[j] = step;
    const RealVector plus = objective.evaluate_at(base, delta).residual;
    const RealVector minus = objective.evaluate_at(base, -delta).residual;
    J.col(j) = (plus - minus) / (2.0 * step);
  });
  return J;
}

namespace {

struct RunOutcome {
  Evaluation best;
  int iterations = 0;
  std::vector<TracePoint> trace;
};

RunOutcome run_once(const SynthesisObjective& objective, const Matrix& start,
                    const OptimizerConfig& cfg) {
  RunOutcome out;
  out.best = objective.evaluate(start);
  out.trace.push_back({0, out.best.cost, out.best.objective});
  const int n = objective.parameter_count();
  double mu = -1.0;

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    if (out.best.objective <= cfg.cost_tol) break;
    const RealMatrix J = finite_difference_jacobian(objective, out.best.U_block, cfg.grad_step, cfg.threads);
    RealMatrix normal = RealMatrix::Zero(n, n);
    normal.selfadjointView<Eigen::Lower>().rankUpdate(J.transpose());
    normal = normal.selfadjointView<Eigen::Lower>();
    const RealVector gradient = J.transpose() * out.best.residual;
    const double scale = std::max(normal.diagonal().maxCoeff(), 1e-300);
    if (mu < 0.0) mu = 1e-3 * scale;

    bool accepted = false;
    while (!accepted && mu <= 1e12 * scale) {
      RealMatrix damped = normal;
      damped.diagonal().array() += mu;
      const RealVector step = -damped.llt().solve(gradient);
      double alpha = cfg.init_step;
      for (int ls = 0; ls < 8 && !accepted; ++ls, alpha *= 0.5) {
        Evaluation trial = objective.evaluate_at(out.best.U_block, alpha * step);
        if (!trial.near_branch_cut && trial.objective < out.best.objective) {
          out.best = std::move(trial);
          accepted = true;
        }
      }
      mu = accepted ? std::max(mu / 3.0, 1e-15 * scale) : 10.0 * mu;
    }
    if (!accepted) break;  // stalled
    out.iterations = iter;
    out.trace.push_back({iter, out.best.cost, out.best.objective});
  }
  return out;
}

}  // namespace

SynthesisResult minimize(const SynthesisObjective& objective, const OptimizerConfig& cfg) {
  cfg.validate();
  const int d = objective.frame().dim();
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::optional<RunOutcome> best;
  int best_index = 0;
  int runs = 0;
  for (int r = 0; r < cfg.restarts; ++r) {
    Matrix start = Matrix::Identity(d, d);
    if (r > 0) {
      RealVector theta(objective.parameter_count());
      for (Eigen::Index j = 0; j < theta.size(); ++j) theta[j] = 0.1 * normal(rng);
      start = objective.tangent().retract(theta);
    }
    RunOutcome run = run_once(objective, start, cfg);
    ++runs;
    if (!best || run.best.objective < best->best.objective) {
      best = std::move(run);
      best_index = r;
    }
    if (best->best.objective <= cfg.cost_tol) break;
  }

  SynthesisResult result;
  const Evaluation& ev = best->best;
  result.candidate = principal_hamiltonian(objective.frame(), ev.W);
  result.candidate.H = ev.H;
  result.cost = ev.cost;
  result.phase_mismatch = ev.phase_mismatch;
  result.objective = ev.objective;
  result.converged = ev.objective <= cfg.cost_tol;
  result.iterations = best->iterations;
  result.restart_index = best_index;
  result.restarts_run = runs;
  result.trace = std::move(best->trace);
  result.subspace_dim = static_cast<int>(objective.subspace().size());
  return result;
}

std::optional<Vector> pure_state(const Matrix& rho) {
  const HermitianEigen eig = eig_hermitian(rho);
  if (std::abs(eig.values[0] - 1.0) > kPureTol) return std::nullopt;
  return Vector(eig.vectors.col(0));
}

Verification verify(const EquivalenceFrame& frame, const Matrix& H, const Vector& initial_state,
                    const std::optional<Vector>& stabilized) {
  Verification v;
  const Matrix U = evolution_operator(H, frame.control_time());
  v.mapping_error = (U * frame.rho_minus * U.adjoint() - frame.rho_plus).norm();
  const Matrix full = frame.U_int * U * frame.U_int;
  const Vector psi = initial_state.normalized();
  v.transfer_fidelity = std::norm((frame.U_d * psi).dot(full * psi));
  if (stabilized) {
    const Vector s = stabilized->normalized();
    const Vector image = full * s;
    v.stabilized_leak = (image - s * s.dot(image)).norm();
    const Vector sup = (psi + s).normalized();
    v.superposition_fidelity = std::norm((frame.U_d * sup).dot(full * sup));
  }
  return v;
}

SynthesisResult synthesize(const Problem& p, const std::vector<Matrix>& controls,
                           const std::optional<Vector>& stabilized_vector,
                           const OptimizerConfig& cfg) {
  p.validate();
  if (controls.empty()) throw ValidationError("synthesize needs at least one control Hamiltonian");
  const Complex minus_i(0.0, -1.0);
  std::vector<Matrix> generators{minus_i * p.H_int};
  for (const Matrix& h : controls) {
    require_hermitian(h, "control Hamiltonian");
    require_same_dim(h, p.H_int, "control vs H_int");
    generators.push_back(minus_i * h);
  }
  const AlgebraBasis algebra = lie_closure(generators);
  AlgebraBasis subspace = algebra;
  if (stabilized_vector) subspace = eigenvector_stabilizer_subspace(algebra, *stabilized_vector);
  SynthesisResult result = synthesize(p, subspace, stabilized_vector, cfg);
  result.algebra_dim = static_cast<int>(algebra.size());
  return result;
}

SynthesisResult synthesize(const Problem& p, const AlgebraBasis& subspace,
                           const std::optional<Vector>& stabilized_vector,
                           const OptimizerConfig& cfg) {
  cfg.validate();
  if (stabilized_vector && subspace.empty()) {
    throw InfeasibleError("no element of the control algebra keeps the stabilized vector as an eigenvector");
  }
  EquivalenceFrame frame = build_frame(p);
  const std::optional<Vector> psi = pure_state(p.rho_i);
  std::optional<PhaseAnchor> anchor;
  if (cfg.align_phase && stabilized_vector && psi) anchor = PhaseAnchor{*psi, *stabilized_vector};

  const SynthesisObjective objective(frame, subspace, anchor);
  SynthesisResult result = minimize(objective, cfg);
  result.subspace_dim = static_cast<int>(subspace.size());
  if (psi) result.verification = verify(frame, result.candidate.H, *psi, stabilized_vector);
  return result;
}

}  // namespace eqham
