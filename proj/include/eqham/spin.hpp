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

#include <string_view>
#include <vector>

#include "eqham/operator.hpp"

// Spin-chain operators. Conventions: up = |0> with Z|0> = +|0>; site 1 is
// the leftmost tensor factor, i.e. the most significant bit of the index.
namespace eqham::spin {

enum class Axis { X, Y, Z };
enum class Spin { Up, Down };

struct ChainSpec {
  int n_qubits = 4;
  double coupling_scale = 1.0;
  double lambda = 1.0;

  void validate() const;
  int dim() const { return 1 << n_qubits; }
};

/// Presets "chain4", "chain5", "chain6".
ChainSpec preset(std::string_view name);

/// sigma_axis acting on `site` (1-based) of an n-qubit register.
Matrix pauli_on(Axis axis, int site, int n);

/// sum_{k<l} scale/|k-l|^3 (X_k X_l + Y_k Y_l - 2 Z_k Z_l)
Matrix dipolar_hamiltonian(const ChainSpec& spec);

/// sum_k sigma_axis^(k)
Matrix global_control(Axis axis, int n);

/// C_k = (lambda/2) sqrt(k (n - k)), k = 1..n-1.
std::vector<double> christandl_couplings(const ChainSpec& spec);

/// Nearest-neighbour XY chain with Christandl couplings, written in the
/// hopping form sum_k C_k (X_k X_{k+1} + Y_k Y_{k+1}) / 2
/// = sum_k C_k (s+_k s-_{k+1} + s-_k s+_{k+1}). The single-excitation block
/// is lambda * J_x of spin (n-1)/2, so the end-to-end transfer completes at
/// t = pi / lambda.
Matrix xy_christandl(const ChainSpec& spec);

/// Sum of Z over all sites.
Matrix total_z(int n);

Vector basis_state(const std::vector<Spin>& pattern);
/// Pattern string of 'u'/'d' (or '0'/'1'), e.g. "uddd".
Vector basis_state(std::string_view pattern);

}  // namespace eqham::spin
