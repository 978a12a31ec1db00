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
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "eqham/equivalence.hpp"

namespace eqham::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kBadInput = 2,
  kUnconverged = 3,
  kInfeasible = 4,
};

struct RunConfig {
  std::string preset = "chain4";  // preset name or path to a system JSON file
  std::optional<double> eta;      // default 0.95 (or the system file's value)
  std::optional<double> t0;       // default pi / lambda (or the system file's value)
  double lambda = 1.0;
  std::uint64_t seed = 42;
  int restarts = 8;
  int max_iters = 2000;
  double cost_tol = 1e-8;
  int samples = 401;
  int threads = 0;
  std::filesystem::path output_dir = ".";
  std::string format = "json";  // json | csv
  std::optional<std::filesystem::path> hamiltonian_path;
};

/// A fully specified synthesis problem with its controls.
struct System {
  std::string name;
  Problem problem;
  std::vector<Matrix> controls;
  std::optional<Vector> stabilized_vector;
};

/// Presets: chain4, chain5, chain6, qubit-x. Anything else is read as a
/// system JSON file {"H_int", "controls", "H_d", "rho_i",
/// "stabilized_vector" (vector or null), optional "t0", "eta"}.
System load_system(const RunConfig& cfg);

int cmd_closure(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_subspace(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_fidelity(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a command.
int run(int argc, char** argv);

}  // namespace eqham::cli
