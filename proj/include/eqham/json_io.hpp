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

#include <json.hpp>

#include "eqham/equivalence.hpp"
#include "eqham/lie.hpp"
#include "eqham/synthesis.hpp"

// JSON encodings shared by the CLI and its consumers.
//
//   matrix:  {"dim": d, "entries": [[re, im], ...]}   (row-major, d*d pairs)
//   vector:  {"dim": d, "entries": [[re, im], ...]}   (d pairs)
//   basis:   {"dim": d, "elements": [matrix, ...]}
namespace eqham::json_io {

using Json = nlohmann::json;

Json matrix_to_json(const Matrix& A);
Matrix matrix_from_json(const Json& j);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json basis_to_json(const AlgebraBasis& basis);
AlgebraBasis basis_from_json(const Json& j);

/// {"H", "hermitian", "k", "cost"}
Json candidate_to_json(const GHCandidate& c, double cost);

/// {"U_int", "U_minus", "U_plus", "D_values", "D_sizes"}
Json frame_to_json(const EquivalenceFrame& f);

/// Summary of a synthesis run, including the convergence trace.
Json result_to_json(const SynthesisResult& r);

}  // namespace eqham::json_io
