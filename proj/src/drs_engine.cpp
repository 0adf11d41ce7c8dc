#include "drsplit/drs_engine.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "drsplit/errors.hpp"
#include "drsplit/operator_json.hpp"

namespace drsplit {

void DrsProblem::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw Error(ErrorCode::InvalidArgument, "tau must be positive");
  if (!(gamma > 0.0 && gamma <= 2.0)) throw Error(ErrorCode::InvalidArgument, "gamma must lie in (0, 2]");
  if (!(stop_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "stop_tol must be positive");
  if (max_iters <= 0) throw Error(ErrorCode::InvalidArgument, "max_iters must be positive");
  (void)dimension();
}

Vector douglas_rachford_map(const OperatorSpec& a, const OperatorSpec& b, double tau, const Vector& z) {
  const Vector x = resolve(b, tau, z);
  const Vector w = resolve(a, tau, 2.0 * x - z);
  return z - x + w;
}

Vector drs_step(const DrsProblem& p, const Vector& z) { return douglas_rachford_map(p.A, p.B, p.tau, z); }

Vector relaxed_step(const DrsProblem& p, const Vector& z) {
  if (p.gamma == 1.0) return drs_step(p, z);
  return (1.0 - p.gamma) * z + p.gamma * drs_step(p, z);
}

TrajectoryRecord run(const DrsProblem& p, const Vector& z0) {
  p.validate();
  if (auto d = p.dimension(); d && *d != z0.size()) {
    throw Error(ErrorCode::DimensionMismatch, "initial point does not match problem dimension");
  }
  TrajectoryRecord rec;
  rec.relaxation_at_limit = p.gamma == 2.0;
  Vector z = z0;
  for (int k = 1; k <= p.max_iters; ++k) {
    TrajectoryRow row;
    row.k = k;
    row.x = resolve(p.B, p.tau, z);
    row.w = resolve(p.A, p.tau, 2.0 * row.x - z);
    // Same arithmetic as relaxed_step, reusing the two resolvents.
    Vector next = z - row.x + row.w;
    if (p.gamma != 1.0) next = (1.0 - p.gamma) * z + p.gamma * next;
    row.residual = (next - z).norm();
    row.z = next;
    z = std::move(next);
    const bool done = row.residual <= p.stop_tol;
    rec.rows.push_back(std::move(row));
    if (done) {
      rec.status = RunStatus::Converged;
      return rec;
    }
  }
  rec.status = RunStatus::MaxIters;
  return rec;
}

bool solution_certificate(const DrsProblem& p, const Vector& z, double tol) {
  const Vector x = resolve(p.B, p.tau, z);
  const Vector u = (z - x) / p.tau;
  return graph_member(p.B, x, u, tol) && graph_member(p.A, x, -u, tol);
}

std::string_view to_string(RunStatus status) {
  return status == RunStatus::Converged ? "Converged" : "MaxIters";
}

namespace {

void put_double(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

void put_vector(std::ostream& out, const Vector& v) {
  for (Index i = 0; i < v.size(); ++i) {
    out << ',';
    put_double(out, v(i));
  }
}

}  // namespace

void write_csv(const TrajectoryRecord& rec, std::ostream& out) {
  const Index n = rec.rows.empty() ? 0 : rec.rows.front().z.size();
  out << 'k';
  for (const char* name : {"z", "x", "w"}) {
    for (Index i = 0; i < n; ++i) out << ',' << name << i;
  }
  out << ",residual\n";
  for (const auto& row : rec.rows) {
    out << row.k;
    put_vector(out, row.z);
    put_vector(out, row.x);
    put_vector(out, row.w);
    out << ',';
    put_double(out, row.residual);
    out << '\n';
  }
}

nlohmann::json to_json(const TrajectoryRecord& rec) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : rec.rows) {
    rows.push_back({{"k", row.k},
                    {"z", vector_to_json(row.z)},
                    {"x", vector_to_json(row.x)},
                    {"w", vector_to_json(row.w)},
                    {"residual", row.residual}});
  }
  return {{"status", std::string(to_string(rec.status))},
          {"relaxation_at_limit", rec.relaxation_at_limit},
          {"rows", std::move(rows)}};
}

}  // namespace drsplit
