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

#include <ostream>
#include <utility>
#include <vector>

#include "eqham/equivalence.hpp"
#include "eqham/operator.hpp"

namespace eqham {

struct Segment {
  Matrix H;
  double duration = 0.0;
};

/// Piecewise-constant Hamiltonian.
struct Schedule {
  std::vector<Segment> segments;

  double total_duration() const;
  void validate() const;
};

/// Caches one eigendecomposition per segment so that sampling many times
/// costs only matrix-vector work.
class Propagator {
 public:
  explicit Propagator(const Schedule& schedule);

  double total_duration() const { return total_; }
  /// psi(t) for 0 <= t <= total_duration().
  Vector evolve(const Vector& psi0, double t) const;
  /// Product of all segment unitaries.
  Matrix full_unitary() const;

 private:
  struct Cached {
    HermitianEigen eig;
    double duration;
  };
  std::vector<Cached> segments_;
  double total_ = 0.0;
};

Vector evolve(const Schedule& schedule, const Vector& psi0, double t);

using FidelityCurve = std::vector<std::pair<double, double>>;

/// F(t) = |<target|psi(t)>|^2 on n_points uniform samples of [0, total].
FidelityCurve fidelity_curve(const Schedule& schedule, const Vector& psi0, const Vector& target,
                             int n_points);

/// (H_int, eta t0/2), (H_calc, (1 - eta) t0), (H_int, eta t0/2); a single
/// H_calc segment when eta = 0.
Schedule paper_schedule(const EquivalenceFrame& frame, const Matrix& H_calc, const Problem& p);

/// Header "t,fidelity", 15 significant digits.
void write_fidelity_csv(std::ostream& os, const FidelityCurve& curve);

}  // namespace eqham
