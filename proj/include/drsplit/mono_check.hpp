#pragma once

// Numerical certification and falsification of (cyclic) monotonicity and of
// the proximal-mapping property for resolvents.
//
// Certification is only offered in the linear class, where a maximally
// monotone operator is cyclically monotone exactly when it is symmetric.
// For everything else only falsification by witness search is available.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "drsplit/drs_engine.hpp"
#include "drsplit/operator.hpp"

namespace drsplit {

// Cycle sums above this count as violations of cyclic monotonicity.
inline constexpr double kCycleViolationTol = 1e-8;

struct CycleWitness {
  std::vector<Vector> points;
  std::vector<Vector> values;
  double cycle_sum = 0.0;
  std::optional<double> xi;  // closed form, set by skew_three_cycle

  std::size_t n() const noexcept { return points.size(); }
  bool certifies_violation() const noexcept { return cycle_sum > kCycleViolationTol; }
};

/// sum_i <x_{i+1} - x_i, u_i> with x_{n+1} = x_1.
double cycle_sum(const std::vector<Vector>& points, const std::vector<Vector>& values);

/// Three-point witness for S = [[0, -C^T], [C, 0]] built from
/// x1 = (a1, b1), x2 = (-C^T b1, C a1), x3 = (-C^T C a1, -C C^T b1).
/// xi = |C a1|^2 + |C^T C a1|^2 + |C^T b1|^2 + |C C^T b1|^2.
CycleWitness skew_three_cycle(const Matrix& C, const Vector& a1, const Vector& b1);

struct SamplingOptions {
  std::optional<Index> dim;  // required for dimension-agnostic operators
  unsigned workers = 1;
};

/// Searches cycle lengths 2..n_max, `trials` random cycles each, for the first
/// (by length, then trial index) cycle sum above kCycleViolationTol. Graph
/// points are (J(w), w - J(w)) for standard Gaussian w. The result does not
/// depend on the number of workers.
std::optional<CycleWitness> sample_cycles(const OperatorSpec& op, int n_max, int trials, std::uint64_t seed,
                                          const SamplingOptions& options = {});

enum class Verdict { Proximal, NotProximal, Inconclusive };

std::string_view to_string(Verdict v);

struct ResolventClassification {
  Matrix recovered_M;  // T^{-1} - I
  double symmetry_defect = 0.0;
  double min_sym_eigenvalue = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

/// Recovers M with T = (I + M)^{-1} and classifies T as a proximal mapping
/// (M symmetric PSD) or not. 1x1 inputs are always Proximal when monotone.
/// Throws SingularMatrix or NonMonotone.
ResolventClassification classify_resolvent(const Matrix& T);

/// Column j is drs_step(p, e_j). Linearity is confirmed on 10 probes seeded
/// from p.seed; throws NotLinear otherwise.
Matrix drs_map_matrix(const DrsProblem& p, std::optional<Index> dim = std::nullopt);

/// For symmetric positive definite M: whether M^{-1} is again symmetric PD.
/// Throws NotSymmetricPD on invalid input.
bool inverse_preserves_cyclic(const Matrix& M);

nlohmann::json to_json(const CycleWitness& w);
nlohmann::json to_json(const ResolventClassification& c);

}  // namespace drsplit
