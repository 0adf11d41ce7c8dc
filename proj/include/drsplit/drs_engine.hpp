#pragma once

// Douglas-Rachford iteration for 0 in (A + B)x:
//   z+ = z - J_{tau B}(z) + J_{tau A}(2 J_{tau B}(z) - z)
// with optional relaxation z+ = (1 - gamma) z + gamma * T(z).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "drsplit/operator.hpp"

namespace drsplit {

struct DrsProblem {
  OperatorSpec A = OperatorSpec::zero();
  OperatorSpec B = OperatorSpec::zero();
  double tau = 1.0;
  double gamma = 1.0;
  int max_iters = 100000;
  double stop_tol = 1e-10;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument unless tau > 0, 0 < gamma <= 2, stop_tol > 0 and
  /// max_iters > 0; DimensionMismatch when A and B disagree.
  void validate() const;

  /// Shared dimension of A and B, nullopt if both are dimension-agnostic.
  std::optional<Index> dimension() const { return common_dimension(A, B); }
};

/// The unrelaxed DRS map for an arbitrary operator pair.
Vector douglas_rachford_map(const OperatorSpec& a, const OperatorSpec& b, double tau, const Vector& z);

Vector drs_step(const DrsProblem& p, const Vector& z);

/// (1 - gamma) z + gamma * drs_step(p, z).
Vector relaxed_step(const DrsProblem& p, const Vector& z);

enum class RunStatus { Converged, MaxIters };

struct TrajectoryRow {
  int k = 0;
  Vector z;  // z^k
  Vector x;  // x^k = J_{tau B}(z^{k-1})
  Vector w;  // w^k = J_{tau A}(2 x^k - z^{k-1})
  double residual = 0.0;  // ||z^k - z^{k-1}||
};

struct TrajectoryRecord {
  std::vector<TrajectoryRow> rows;
  RunStatus status = RunStatus::MaxIters;
  // gamma == 2 is accepted but the relaxed map is then only nonexpansive.
  bool relaxation_at_limit = false;

  const TrajectoryRow& last() const { return rows.back(); }
};

/// Iterates relaxed_step from z0 until ||z^k - z^{k-1}|| <= stop_tol or
/// max_iters. Rows are numbered from k = 1.
TrajectoryRecord run(const DrsProblem& p, const Vector& z0);

/// Checks that x = J_{tau B}(z) solves 0 in (A + B)x, using u = (z - x)/tau:
/// u in B x and -u in A x.
bool solution_certificate(const DrsProblem& p, const Vector& z, double tol);

std::string_view to_string(RunStatus status);

/// Columns k,z0..,x0..,w0..,residual with %.17g formatting.
void write_csv(const TrajectoryRecord& rec, std::ostream& out);
nlohmann::json to_json(const TrajectoryRecord& rec);

}  // namespace drsplit
