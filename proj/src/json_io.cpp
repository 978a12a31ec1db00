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

#include "eqham/json_io.hpp"

#include <string>

namespace eqham::json_io {

namespace {

Json pairs(const Complex* data, Eigen::Index n) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < n; ++i) out.push_back({data[i].real(), data[i].imag()});
  return out;
}

Complex pair_at(const Json& entries, std::size_t i) {
  const Json& e = entries.at(i);
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
    throw ValidationError("entry " + std::to_string(i) + " is not a [re, im] number pair");
  }
  return {e[0].get<double>(), e[1].get<double>()};
}

std::size_t read_dim(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw ValidationError("expected an object with \"dim\" and \"entries\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
    throw ValidationError("\"dim\" must be a positive integer");
  }
  if (!j["entries"].is_array()) throw ValidationError("\"entries\" must be an array");
  return j["dim"].get<std::size_t>();
}

}  // namespace

Json matrix_to_json(const Matrix& A) {
  require_square(A, "matrix");
  const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = A;
  return {{"dim", A.rows()}, {"entries", pairs(rm.data(), rm.size())}};
}

Matrix matrix_from_json(const Json& j) {
  const std::size_t d = read_dim(j);
  const Json& entries = j["entries"];
  if (entries.size() != d * d) {
    throw ValidationError("matrix JSON has " + std::to_string(entries.size()) + " entries, expected " +
                          std::to_string(d * d));
  }
  Matrix A(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = pair_at(entries, r * d + c);
    }
  }
  return A;
}

Json vector_to_json(const Vector& v) {
  return {{"dim", v.size()}, {"entries", pairs(v.data(), v.size())}};
}

Vector vector_from_json(const Json& j) {
  const std::size_t d = read_dim(j);
  const Json& entries = j["entries"];
  if (entries.size() != d) throw ValidationError("vector JSON entry count does not match dim");
  Vector v(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) v[static_cast<Eigen::Index>(i)] = pair_at(entries, i);
  return v;
}

Json basis_to_json(const AlgebraBasis& basis) {
  Json elements = Json::array();
  for (const Matrix& e : basis.elements()) elements.push_back(matrix_to_json(e));
  return {{"dim", basis.dim()}, {"elements", elements}};
}

AlgebraBasis basis_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("elements") || !j["elements"].is_array()) {
    throw ValidationError("basis JSON needs \"dim\" and \"elements\"");
  }
  const int d = j["dim"].get<int>();
  std::vector<Matrix> elements;
  for (const Json& e : j["elements"]) elements.push_back(matrix_from_json(e));
  return AlgebraBasis(d, std::move(elements));
}

Json candidate_to_json(const GHCandidate& c, double cost) {
  return {{"H", matrix_to_json(c.H)}, {"hermitian", c.hermitian}, {"k", c.k}, {"cost", cost}};
}

Json frame_to_json(const EquivalenceFrame& f) {
  Json values = Json::array();
  for (Eigen::Index i = 0; i < f.d_values.size(); ++i) values.push_back(f.d_values[i]);
  return {{"U_int", matrix_to_json(f.U_int)},
          {"U_minus", matrix_to_json(f.U_minus)},
          {"U_plus", matrix_to_json(f.U_plus)},
          {"D_values", values},
          {"D_sizes", f.D.sizes()}};
}

Json result_to_json(const SynthesisResult& r) {
  Json trace = Json::array();
  for (const TracePoint& p : r.trace) trace.push_back({p.iteration, p.cost, p.objective});
  Json out{{"cost", r.cost},
           {"phase_mismatch", r.phase_mismatch},
           {"objective", r.objective},
           {"converged", r.converged},
           {"iterations", r.iterations},
           {"restart_index", r.restart_index},
           {"restarts_run", r.restarts_run},
           {"algebra_dim", r.algebra_dim},
           {"subspace_dim", r.subspace_dim},
           {"h_norm", r.candidate.H.norm()},
           {"trace", trace}};
  if (r.verification) {
    const Verification& v = *r.verification;
    out["verification"] = {{"mapping_error", v.mapping_error},
                           {"stabilized_leak", v.stabilized_leak},
                           {"transfer_fidelity", v.transfer_fidelity},
                           {"superposition_fidelity", v.superposition_fidelity}};
  }
  return out;
}

}  // namespace eqham::json_io
