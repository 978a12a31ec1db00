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

#include "eqham/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "eqham/dynamics.hpp"
#include "eqham/json_io.hpp"
#include "eqham/lie.hpp"
#include "eqham/spin.hpp"
#include "eqham/synthesis.hpp"

namespace eqham::cli {

namespace fs = std::filesystem;
using json_io::Json;

namespace {

constexpr double kDefaultEta = 0.95;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Matrix projector(const Vector& v) { return v * v.adjoint(); }

System chain_system(const RunConfig& cfg) {
  spin::ChainSpec spec = spin::preset(cfg.preset);
  spec.lambda = cfg.lambda;
  spec.validate();
  const int n = spec.n_qubits;
  System s;
  s.name = cfg.preset;
  s.problem.H_int = spin::dipolar_hamiltonian(spec);
  s.problem.H_d = spin::xy_christandl(spec);
  s.problem.rho_i = projector(spin::basis_state("u" + std::string(n - 1, 'd')));
  s.problem.t0 = cfg.t0.value_or(std::numbers::pi / spec.lambda);
  s.problem.eta = cfg.eta.value_or(kDefaultEta);
  s.controls = {spin::global_control(spin::Axis::X, n), spin::global_control(spin::Axis::Y, n)};
  s.stabilized_vector = spin::basis_state(std::string(n, 'd'));
  return s;
}

System qubit_system(const RunConfig& cfg) {
  System s;
  s.name = cfg.preset;
  s.problem.H_int = spin::pauli_on(spin::Axis::X, 1, 1);
  s.problem.H_d = spin::pauli_on(spin::Axis::Z, 1, 1);
  s.problem.rho_i = projector(spin::basis_state("u"));
  s.problem.t0 = cfg.t0.value_or(1.0);
  s.problem.eta = cfg.eta.value_or(kDefaultEta);
  s.controls = {spin::pauli_on(spin::Axis::X, 1, 1)};
  return s;
}

Json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

System file_system(const RunConfig& cfg) {
  const Json j = read_json_file(cfg.preset);
  for (const char* key : {"H_int", "controls", "H_d", "rho_i"}) {
    if (!j.contains(key)) throw InputError(std::string("system file is missing \"") + key + "\"");
  }
  System s;
  s.name = cfg.preset;
  s.problem.H_int = json_io::matrix_from_json(j["H_int"]);
  s.problem.H_d = json_io::matrix_from_json(j["H_d"]);
  s.problem.rho_i = json_io::matrix_from_json(j["rho_i"]);
  if (!j["controls"].is_array()) throw InputError("\"controls\" must be an array");
  for (const Json& c : j["controls"]) s.controls.push_back(json_io::matrix_from_json(c));
  if (j.contains("stabilized_vector") && !j["stabilized_vector"].is_null()) {
    s.stabilized_vector = json_io::vector_from_json(j["stabilized_vector"]);
  }
  s.problem.t0 = cfg.t0.value_or(j.value("t0", 1.0));
  s.problem.eta = cfg.eta.value_or(j.value("eta", 0.0));
  return s;
}

std::vector<Matrix> generators_of(const System& s) {
  const Complex minus_i(0.0, -1.0);
  std::vector<Matrix> g{minus_i * s.problem.H_int};
  for (const Matrix& c : s.controls) {
    require_hermitian(c, "control Hamiltonian");
    require_same_dim(c, s.problem.H_int, "control vs H_int");
    g.push_back(minus_i * c);
  }
  return g;
}

OptimizerConfig optimizer_config(const RunConfig& cfg) {
  OptimizerConfig o;
  o.seed = cfg.seed;
  o.restarts = cfg.restarts;
  o.max_iters = cfg.max_iters;
  o.cost_tol = cfg.cost_tol;
  o.threads = cfg.threads;
  return o;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

// Runs a command body, mapping exceptions to exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

void check_format(const RunConfig& cfg) {
  if (cfg.format != "json" && cfg.format != "csv") throw InputError("--format must be json or csv");
}

}  // namespace

System load_system(const RunConfig& cfg) {
  if (cfg.preset.starts_with("chain")) {
    try {
      return chain_system(cfg);
    } catch (const ValidationError& e) {
      if (!fs::exists(cfg.preset)) throw InputError(e.what());
    }
  }
  if (cfg.preset == "qubit-x") return qubit_system(cfg);
  if (!fs::exists(cfg.preset)) throw InputError("unknown preset or missing system file '" + cfg.preset + "'");
  return file_system(cfg);
}

int cmd_closure(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_format(cfg);
    const System sys = load_system(cfg);
    const AlgebraBasis algebra = lie_closure(generators_of(sys));
    const Matrix& Hd = sys.problem.H_d;
    const double distance = (Hd - hs_project(Hd, algebra)).norm();
    const double relative = Hd.norm() > 0.0 ? distance / Hd.norm() : 0.0;
    const auto ambient = static_cast<long long>(algebra.dim()) * algebra.dim();

    out << "system:            " << sys.name << "\n"
        << "algebra_dim:       " << algebra.size() << "\n"
        << "ambient_dim:       " << ambient << "\n"
        << "hd_distance:       " << distance << " (relative " << relative << ")\n";
    const Json report{{"algebra_dim", algebra.size()},
                      {"ambient_dim", ambient},
                      {"hxy_distance", distance},
                      {"hxy_relative_distance", relative}};
    if (cfg.format == "csv") {
      std::ostringstream os;
      os << std::setprecision(15) << "algebra_dim,ambient_dim,hxy_distance,hxy_relative_distance\n"
         << algebra.size() << ',' << ambient << ',' << distance << ',' << relative << '\n';
      write_text(cfg.output_dir / "closure.csv", os.str());
    } else {
      write_json(cfg.output_dir / "closure.json", report);
    }
    return static_cast<int>(kOk);
  });
}

int cmd_subspace(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_format(cfg);
    const System sys = load_system(cfg);
    if (!sys.stabilized_vector) throw InputError("system has no stabilized vector");
    const AlgebraBasis algebra = lie_closure(generators_of(sys));
    const AlgebraBasis sub = eigenvector_stabilizer_subspace(algebra, *sys.stabilized_vector);
    out << "system:            " << sys.name << "\n"
        << "algebra_dim:       " << algebra.size() << "\n"
        << "subspace_dim:      " << sub.size() << "\n";
    write_json(cfg.output_dir / "subspace.json",
               {{"algebra_dim", algebra.size()},
                {"subspace_dim", sub.size()},
                {"basis", json_io::basis_to_json(sub)}});
    return static_cast<int>(sub.empty() ? kInfeasible : kOk);
  });
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_format(cfg);
    const System sys = load_system(cfg);
    if (sys.controls.empty()) throw InputError("system has no controls");
    const SynthesisResult r =
        synthesize(sys.problem, sys.controls, sys.stabilized_vector, optimizer_config(cfg));

    write_json(cfg.output_dir / "hamiltonian.json", json_io::candidate_to_json(r.candidate, r.cost));
    write_json(cfg.output_dir / "result.json", json_io::result_to_json(r));
    if (cfg.format == "csv") {
      std::ostringstream os;
      os << std::setprecision(15) << "iteration,cost,objective\n";
      for (const TracePoint& p : r.trace) os << p.iteration << ',' << p.cost << ',' << p.objective << '\n';
      write_text(cfg.output_dir / "trace.csv", os.str());
    }

    out << "system:            " << sys.name << "\n"
        << "algebra_dim:       " << r.algebra_dim << "\n"
        << "subspace_dim:      " << r.subspace_dim << "\n"
        << "converged:         " << (r.converged ? "yes" : "no") << "\n"
        << "cost:              " << r.cost << "\n"
        << "phase_mismatch:    " << r.phase_mismatch << "\n"
        << "||H||_F:           " << r.candidate.H.norm() << "\n"
        << "iterations:        " << r.iterations << " (restart " << r.restart_index << ")\n";
    if (r.verification) {
      out << "transfer fidelity: " << std::setprecision(15) << r.verification->transfer_fidelity << "\n";
      if (sys.stabilized_vector) {
        out << "superposition:     " << r.verification->superposition_fidelity << "\n";
      }
    }
    return static_cast<int>(r.converged ? kOk : kUnconverged);
  });
}

int cmd_fidelity(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.samples < 2) throw InputError("--samples must be at least 2");
    const System sys = load_system(cfg);
    const fs::path hpath = cfg.hamiltonian_path.value_or(cfg.output_dir / "hamiltonian.json");
    const Json hj = read_json_file(hpath);
    if (!hj.contains("H")) throw InputError("hamiltonian file has no \"H\"");
    Matrix H;
    try {
      H = json_io::matrix_from_json(hj["H"]);
    } catch (const ValidationError& e) {
      throw InputError(std::string("hamiltonian file: ") + e.what());
    }
    if (H.rows() != sys.problem.dim()) throw InputError("hamiltonian dimension does not match the system");
    if (!is_hermitian(H)) throw InputError("hamiltonian in file is not Hermitian");

    const Problem& p = sys.problem;
    const EquivalenceFrame frame = build_frame(p);
    const std::optional<Vector> psi = pure_state(p.rho_i);
    if (!psi) throw InputError("fidelity curves need a pure initial state");
    const Vector target = frame.U_d * *psi;

    // Re-verify the stored cost against the implementable subspace.
    const AlgebraBasis algebra = lie_closure(generators_of(sys));
    const AlgebraBasis sub =
        sys.stabilized_vector ? eigenvector_stabilizer_subspace(algebra, *sys.stabilized_vector) : algebra;
    const double recomputed = (H - hs_project(H, sub)).norm();

    struct Curve {
      std::string file;
      FidelityCurve data;
    };
    std::vector<Curve> curves;
    const Schedule synth = paper_schedule(frame, H, p);
    curves.push_back({"fidelity_synth.csv", fidelity_curve(synth, *psi, target, cfg.samples)});
    if (sys.stabilized_vector) {
      const Vector v = sys.stabilized_vector->normalized();
      curves.push_back({"fidelity_synth_stabilized.csv", fidelity_curve(synth, v, v, cfg.samples)});
    }
    curves.push_back({"fidelity_xy.csv", fidelity_curve(Schedule{{{p.H_d, p.t0}}}, *psi, target, cfg.samples)});
    curves.push_back({"fidelity_int.csv", fidelity_curve(Schedule{{{p.H_int, p.t0}}}, *psi, target, cfg.samples)});

    Json summary{{"recomputed_cost", recomputed}};
    if (hj.contains("cost") && hj["cost"].is_number()) summary["stored_cost"] = hj["cost"];
    out << std::setprecision(15);
    out << "recomputed cost:   " << recomputed << "\n";
    for (const Curve& c : curves) {
      std::ostringstream os;
      write_fidelity_csv(os, c.data);
      write_text(cfg.output_dir / c.file, os.str());
      summary["endpoints"][c.file] = c.data.back().second;
      out << c.file << ": F(t0) = " << c.data.back().second << "\n";
    }
    write_json(cfg.output_dir / "fidelity.json", summary);
    return static_cast<int>(kOk);
  });
}

int run(int argc, char** argv) {
  CLI::App app{"Equivalent-Hamiltonian synthesis for state-to-state transfer"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string hamiltonian;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--preset", cfg.preset, "chain4 | chain5 | chain6 | qubit-x | path to system JSON");
    sub->add_option("--eta", cfg.eta, "fraction of t0 spent under H_int");
    sub->add_option("--t0", cfg.t0, "total evolution time (default pi/lambda)");
    sub->add_option("--lambda", cfg.lambda, "XY transfer rate");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--out", cfg.output_dir, "output directory");
    sub->add_option("--format", cfg.format, "json | csv");
  };

  CLI::App* closure = app.add_subcommand("closure", "Lie closure dimension and distance of H_d");
  CLI::App* subspace = app.add_subcommand("subspace", "eigenvector-stabilizing subspace of the algebra");
  CLI::App* solve = app.add_subcommand("solve", "search G_H for an implementable Hamiltonian");
  CLI::App* fidelity = app.add_subcommand("fidelity", "fidelity-vs-time curves as CSV");
  for (CLI::App* sub : {closure, subspace, solve, fidelity}) add_common(sub);
  for (CLI::App* sub : {solve}) {
    sub->add_option("--restarts", cfg.restarts, "optimizer restarts");
    sub->add_option("--max-iters", cfg.max_iters, "iterations per restart");
    sub->add_option("--cost-tol", cfg.cost_tol, "absolute convergence threshold");
    sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  }
  fidelity->add_option("--samples", cfg.samples, "samples per curve");
  fidelity->add_option("--hamiltonian", hamiltonian, "hamiltonian.json from solve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(kBadInput);
  }
  if (!hamiltonian.empty()) cfg.hamiltonian_path = hamiltonian;

  if (*closure) return cmd_closure(cfg, std::cout, std::cerr);
  if (*subspace) return cmd_subspace(cfg, std::cout, std::cerr);
  if (*solve) return cmd_solve(cfg, std::cout, std::cerr);
  return cmd_fidelity(cfg, std::cout, std::cerr);
}

}  // namespace eqham::cli
