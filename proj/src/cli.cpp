#include "drsplit/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "drsplit/drs_engine.hpp"
#include "drsplit/equivalence.hpp"
#include "drsplit/errors.hpp"
#include "drsplit/mono_check.hpp"
#include "drsplit/operator_json.hpp"

namespace drsplit::cli {

namespace {

const std::vector<std::string> kCommands = {"run-drs",           "check-equivalence", "check-cycle",
                                            "witness-skew",      "classify-resolvent", "moreau-check"};

Json load_json(const std::string& path) {
  if (path.empty()) throw Error(ErrorCode::InvalidArgument, "--problem is required");
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open problem file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("malformed problem JSON: ") + e.what());
  }
}

std::optional<Index> json_dim(const Json& j) {
  if (!j.contains("dim")) return std::nullopt;
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0) {
    throw Error(ErrorCode::Parse, "'dim' must be a positive integer");
  }
  return static_cast<Index>(j["dim"].get<long long>());
}

double json_number(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw Error(ErrorCode::Parse, std::string("'") + key + "' must be a number");
  return j[key].get<double>();
}

DrsProblem load_problem(const Json& j, const RunConfig& cfg) {
  if (!j.is_object() || !j.contains("A") || !j.contains("B")) {
    throw Error(ErrorCode::Parse, "problem needs operators 'A' and 'B'");
  }
  DrsProblem p;
  p.A = operator_from_json(j["A"]);
  p.B = operator_from_json(j["B"]);
  p.tau = cfg.tau.value_or(json_number(j, "tau", 1.0));
  p.gamma = cfg.gamma.value_or(json_number(j, "gamma", 1.0));
  p.stop_tol = cfg.stop_tol.value_or(json_number(j, "stop_tol", 1e-10));
  p.max_iters = cfg.iters.value_or(static_cast<int>(json_number(j, "max_iters", 100000)));
  p.seed = cfg.seed;
  p.validate();
  return p;
}

Index problem_dim(const Json& j, const DrsProblem& p) {
  const auto own = p.dimension();
  const auto declared = json_dim(j);
  if (own && declared && *own != *declared) throw Error(ErrorCode::DimensionMismatch, "'dim' disagrees with A/B");
  if (own) return *own;
  if (declared) return *declared;
  if (j.contains("z0")) return vector_from_json(j["z0"]).size();
  throw Error(ErrorCode::InvalidArgument, "cannot infer dimension: give 'dim' or 'z0'");
}

std::vector<Vector> gaussian_points(Index dim, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<Vector> pts;
  for (int i = 0; i < count; ++i) {
    Vector x(dim);
    for (Index k = 0; k < dim; ++k) x(k) = gauss(rng);
    pts.push_back(std::move(x));
  }
  return pts;
}

// Writes to cfg.out_path when set, otherwise to `out`.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + cfg.out_path + "'");
  file << text;
}

std::string format_vector(const Vector& v) {
  std::ostringstream s;
  s << vector_to_json(v).dump();
  return s.str();
}

int cmd_run_drs(const RunConfig& cfg, std::ostream& out) {
  const Json j = load_json(cfg.problem_path);
  const DrsProblem p = load_problem(j, cfg);
  const Index n = problem_dim(j, p);
  const Vector z0 = j.contains("z0") ? vector_from_json(j["z0"]) : Vector::Zero(n);

  const TrajectoryRecord rec = run(p, z0);
  if (!cfg.out_path.empty()) {
    std::ostringstream body;
    if (cfg.format == "json") {
      body << to_json(rec).dump(2) << '\n';
    } else {
      write_csv(rec, body);
    }
    emit(cfg, out, body.str());
  }
  const TrajectoryRow& last = rec.last();
  const bool certified =
      rec.status == RunStatus::Converged && solution_certificate(p, last.z, 100.0 * p.stop_tol);
  out << "status: " << to_string(rec.status) << '\n'
      << "iterations: " << last.k << '\n'
      << "x: " << format_vector(last.x) << '\n'
      << "certificate: " << (certified ? "pass" : "fail") << '\n';
  if (rec.relaxation_at_limit) out << "warning: gamma = 2 gives a nonexpansive map only\n";
  return certified ? kSuccess : kNotConverged;
}

int cmd_check_equivalence(const RunConfig& cfg, std::ostream& out) {
  const Json j = load_json(cfg.problem_path);
  const DrsProblem p = load_problem(j, cfg);
  const Index n = problem_dim(j, p);
  const std::vector<Vector> starts =
      j.contains("z0") ? std::vector<Vector>{vector_from_json(j["z0"])} : gaussian_points(n, cfg.trials.value_or(10), cfg.seed);
  const EquivalenceReport report = check_equivalence(p, starts, cfg.iters.value_or(100));
  emit(cfg, out, to_json(report).dump(2) + "\n");
  return report.max_deviation <= 1e-8 ? kSuccess : kNotConverged;
}

int cmd_check_cycle(const RunConfig& cfg, std::ostream& out) {
  const Json j = load_json(cfg.problem_path);
  const char* key = j.contains("op") ? "op" : "A";
  if (!j.contains(key)) throw Error(ErrorCode::Parse, "check-cycle needs an operator under 'op' or 'A'");
  const OperatorSpec op = operator_from_json(j[key]);
  SamplingOptions options;
  options.dim = op.dimension() ? std::nullopt : json_dim(j);
  const int trials = cfg.trials.value_or(1000);
  const auto witness = sample_cycles(op, cfg.n_max, trials, cfg.seed, options);
  Json report{{"n_max", cfg.n_max}, {"trials", trials}, {"seed", cfg.seed},
              {"violation_found", witness.has_value()}};
  report["witness"] = witness ? to_json(*witness) : Json(nullptr);
  emit(cfg, out, report.dump(2) + "\n");
  return kSuccess;
}

int cmd_witness_skew(const RunConfig& cfg, std::ostream& out) {
  const Json j = load_json(cfg.problem_path);
  if (!j.is_object() || !j.contains("C")) throw Error(ErrorCode::Parse, "witness-skew needs a coupling matrix 'C'");
  const Matrix C = matrix_from_json(j["C"]);
  if (C.isZero(0.0)) throw Error(ErrorCode::ZeroCoupling, "coupling C must be nonzero");

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss;
  auto draw = [&](Index size) {
    Vector v(size);
    for (Index k = 0; k < size; ++k) v(k) = gauss(rng);
    return v;
  };
  Vector a1;
  if (j.contains("a1")) {
    a1 = vector_from_json(j["a1"]);
  } else {
    // Retry until a1 leaves ker C.
    do {
      a1 = draw(C.cols());
    } while ((C * a1).norm() == 0.0);
  }
  const Vector b1 = j.contains("b1") ? vector_from_json(j["b1"]) : draw(C.rows());

  const CycleWitness w = skew_three_cycle(C, a1, b1);
  emit(cfg, out, to_json(w).dump(2) + "\n");
  const bool ok = *w.xi > 0.0 && std::abs(*w.xi - w.cycle_sum) <= 1e-10;
  return ok ? kSuccess : kNotConverged;
}

int cmd_classify_resolvent(const RunConfig& cfg, std::ostream& out) {
  const Json j = load_json(cfg.problem_path);
  const DrsProblem p = load_problem(j, cfg);
  const Index n = problem_dim(j, p);
  const ResolventClassification c = classify_resolvent(drs_map_matrix(p, n));
  emit(cfg, out, to_json(c).dump(2) + "\n");
  return kSuccess;
}

int cmd_moreau_check(const RunConfig& cfg, std::ostream& out) {
  const Json j = load_json(cfg.problem_path);
  if (!j.is_object()) throw Error(ErrorCode::Parse, "problem must be a JSON object");
  const double tau = cfg.tau.value_or(json_number(j, "tau", 1.0));
  const int count = cfg.trials.value_or(100);
  double worst = 0.0;
  Json per_op = Json::object();
  for (const char* key : {"A", "B", "op"}) {
    if (!j.contains(key)) continue;
    const OperatorSpec op = operator_from_json(j[key]);
    const auto dim = op.dimension() ? op.dimension() : json_dim(j);
    if (!dim) throw Error(ErrorCode::InvalidArgument, std::string("operator '") + key + "' needs 'dim'");
    double op_worst = 0.0;
    for (const Vector& x : gaussian_points(*dim, count, cfg.seed)) {
      op_worst = std::max(op_worst, moreau_residual(op, tau, x));
    }
    per_op[key] = op_worst;
    worst = std::max(worst, op_worst);
  }
  if (per_op.empty()) throw Error(ErrorCode::Parse, "moreau-check needs at least one of 'A', 'B', 'op'");
  Json report{{"tau", tau}, {"points", count}, {"max_residual", worst}, {"per_operator", per_op}};
  emit(cfg, out, report.dump(2) + "\n");
  return worst <= 1e-10 ? kSuccess : kNotConverged;
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.format != "csv" && cfg.format != "json") {
      throw Error(ErrorCode::InvalidArgument, "--format must be csv or json");
    }
    if (cfg.command == "run-drs") return cmd_run_drs(cfg, out);
    if (cfg.command == "check-equivalence") return cmd_check_equivalence(cfg, out);
    if (cfg.command == "check-cycle") return cmd_check_cycle(cfg, out);
    if (cfg.command == "witness-skew") return cmd_witness_skew(cfg, out);
    if (cfg.command == "classify-resolvent") return cmd_classify_resolvent(cfg, out);
    if (cfg.command == "moreau-check") return cmd_moreau_check(cfg, out);
    throw Error(ErrorCode::InvalidArgument, "unknown command '" + cfg.command + "'");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const Json::exception& e) {
    err << "error: Parse: " << e.what() << '\n';
  }
  return kError;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Douglas-Rachford splitting laboratory"};
  RunConfig cfg;
  app.add_option("command", cfg.command, "Command to run")->required()->check(CLI::IsMember(kCommands));
  app.add_option("--problem", cfg.problem_path, "Problem JSON file");
  app.add_option("--tau", cfg.tau, "Step size (overrides the problem file)")->check(CLI::PositiveNumber);
  app.add_option("--gamma", cfg.gamma, "Relaxation in (0, 2]")->check(CLI::Range(0.0, 2.0));
  app.add_option("--iters", cfg.iters, "Iteration cap")->check(CLI::PositiveNumber);
  app.add_option("--stop-tol", cfg.stop_tol, "Fixed-point residual tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--n-max", cfg.n_max, "Longest cycle for check-cycle")->check(CLI::Range(2, 1000));
  app.add_option("--trials", cfg.trials, "Trials per cycle length / number of starts or points")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out_path, "Output file");
  app.add_option("--format", cfg.format, "Trajectory format for run-drs")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kError;
  }
  return execute(cfg, out, err);
}

}  // namespace drsplit::cli
