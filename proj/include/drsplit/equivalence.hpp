#pragma once

// Runs the same Douglas-Rachford iteration through each available
// formulation and measures how far the z-trajectories drift apart.

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "drsplit/drs_engine.hpp"

namespace drsplit {

enum class Formulation {
  Classical,         // drs_step on z
  LiftedPpa,         // z-component of ppa_step on (u, s, z)
  ReducedDrs,        // sqrt(tau) * reduced_resolvent_via_drs(z / sqrt(tau))
  ReducedDirect,     // assembled (I + K L^{-1} K^T)^{-1}
  ReducedFukushima,  // I - K (L + K^T K)^{-1} K^T
};

std::string_view to_string(Formulation f);

/// z^0, ..., z^iters for one formulation; relaxation gamma applied uniformly.
std::vector<Vector> z_trajectory(const DrsProblem& p, const Vector& z0, int iters, Formulation f);

struct EquivalenceReport {
  double max_deviation = 0.0;
  int iters = 0;
  int starts = 0;
  std::vector<Formulation> compared;
  std::string fallback_note;  // empty when the assembled paths were available
};

/// Compares every formulation that applies to the problem. The assembled
/// paths are skipped (and noted) when A or B is not invertible-linear.
EquivalenceReport check_equivalence(const DrsProblem& p, const std::vector<Vector>& starts, int iters);

nlohmann::json to_json(const EquivalenceReport& report);

}  // namespace drsplit
