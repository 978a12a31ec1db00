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

#include "eqham/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace eqham {

namespace {

constexpr double kTimeSlack = 1e-12;
constexpr double kNormTol = 1e-10;

Vector apply_segment(const HermitianEigen& eig, const Vector& psi, double tau) {
  Vector coeffs = eig.vectors.adjoint() * psi;
  for (Eigen::Index j = 0; j < coeffs.size(); ++j) coeffs[j] *= std::polar(1.0, -tau * eig.values[j]);
  return eig.vectors * coeffs;
}

}  // namespace

double Schedule::total_duration() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

void Schedule::validate() const {
  if (segments.empty()) throw ValidationError("schedule has no segments");
  for (const auto& s : segments) {
    require_hermitian(s.H, "segment Hamiltonian");
    require_same_dim(s.H, segments.front().H, "segment Hamiltonian");
    if (!(s.duration >= 0.0)) throw ValidationError("segment durations must be non-negative");
  }
}

Propagator::Propagator(const Schedule& schedule) {
  schedule.validate();
  segments_.reserve(schedule.segments.size());
  for (const auto& s : schedule.segments) {
    segments_.push_back({eig_hermitian(s.H), s.duration});
    total_ += s.duration;
  }
}

Vector Propagator::evolve(const Vector& psi0, double t) const {
  const Eigen::Index d = segments_.front().eig.vectors.rows();
  if (psi0.size() != d) throw ValidationError("initial state has the wrong dimension");
  if (std::abs(psi0.norm() - 1.0) > kNormTol) throw ValidationError("initial state must be normalized");
  if (!(t >= 0.0 && t <= total_ + kTimeSlack * std::max(1.0, total_))) {
    std::ostringstream os;
    os << "time " << t << " outside [0, " << total_ << "]";
    throw ValidationError(os.str());
  }
  Vector psi = psi0;
  double remaining = t;
  for (const auto& seg : segments_) {
    if (remaining <= 0.0) break;
    const double tau = std::min(remaining, seg.duration);
    psi = apply_segment(seg.eig, psi, tau);
    remaining -= tau;
  }
  return psi;
}

Matrix Propagator::full_unitary() const {
  const Eigen::Index d = segments_.front().eig.vectors.rows();
  Matrix U = Matrix::Identity(d, d);
  for (const auto& seg : segments_) {
    Vector phases(d);
    for (Eigen::Index j = 0; j < d; ++j) phases[j] = std::polar(1.0, -seg.duration * seg.eig.values[j]);
    U = seg.eig.vectors * phases.asDiagonal() * seg.eig.vectors.adjoint() * U;
  }
  return U;
}

Vector evolve(const Schedule& schedule, const Vector& psi0, double t) {
  return Propagator(schedule).evolve(psi0, t);
}

FidelityCurve fidelity_curve(const Schedule& schedule, const Vector& psi0, const Vector& target,
                             int n_points) {
  if (n_points < 2) throw ValidationError("fidelity_curve needs at least two samples");
  const Propagator prop(schedule);
  if (target.size() != psi0.size()) throw ValidationError("target state has the wrong dimension");
  const Vector tgt = target.normalized();
  const double total = prop.total_duration();
  FidelityCurve curve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    const double t = i == n_points - 1 ? total : total * i / (n_points - 1);
    const double f = std::norm(tgt.dot(prop.evolve(psi0, t)));
    curve[static_cast<std::size_t>(i)] = {t, std::clamp(f, 0.0, 1.0)};
  }
  return curve;
}

Schedule paper_schedule(const EquivalenceFrame& frame, const Matrix& H_calc, const Problem& p) {
  require_hermitian(H_calc, "H_calc");
  if (H_calc.rows() != frame.dim()) throw ValidationError("H_calc has the wrong dimension");
  Schedule s;
  if (p.eta == 0.0) {
    s.segments.push_back({H_calc, p.t0});
    return s;
  }
  const double outer = 0.5 * p.eta * p.t0;
  s.segments.push_back({p.H_int, outer});
  s.segments.push_back({H_calc, p.control_time()});
  s.segments.push_back({p.H_int, outer});
  return s;
}

void write_fidelity_csv(std::ostream& os, const FidelityCurve& curve) {
  os << "t,fidelity\n";
  os << std::setprecision(15);
  for (const auto& [t, f] : curve) os << t << ',' << f << '\n';
}

}  // namespace eqham
