#include "drsplit/equivalence.hpp"

#include <algorithm>

#include "drsplit/block_ops.hpp"
#include "drsplit/degenerate_ppa.hpp"
#include "drsplit/errors.hpp"

namespace drsplit {

std::string_view to_string(Formulation f) {
  switch (f) {
    case Formulation::Classical: return "classical";
    case Formulation::LiftedPpa: return "lifted_ppa";
    case Formulation::ReducedDrs: return "reduced_drs";
    case Formulation::ReducedDirect: return "reduced_direct";
    case Formulation::ReducedFukushima: return "reduced_fukushima";
  }
  return "unknown";
}

namespace {

Vector relax(const DrsProblem& p, const Vector& z, const Vector& tz) {
  if (p.gamma == 1.0) return tz;
  return (1.0 - p.gamma) * z + p.gamma * tz;
}

}  // namespace

std::vector<Vector> z_trajectory(const DrsProblem& p, const Vector& z0, int iters, Formulation f) {
  p.validate();
  const Index n = z0.size();
  if (auto d = p.dimension(); d && *d != n) {
    throw Error(ErrorCode::DimensionMismatch, "initial point does not match problem dimension");
  }
  std::vector<Vector> traj;
  traj.reserve(static_cast<std::size_t>(iters) + 1);
  traj.push_back(z0);

  if (f == Formulation::LiftedPpa) {
    const PpaSystem sys(p.A, p.B, p.tau, n);
    PpaState b = PpaState::from_z(z0);
    for (int k = 0; k < iters; ++k) {
      PpaState next = ppa_step(sys, b);
      next.z = relax(p, b.z, next.z);
      b = std::move(next);
      traj.push_back(b.z);
    }
    return traj;
  }

  const BlockSystem sys(p.A, p.B, p.tau, n);
  Vector z = z0;
  for (int k = 0; k < iters; ++k) {
    Vector tz;
    switch (f) {
      case Formulation::Classical: tz = drs_step(p, z); break;
      case Formulation::ReducedDrs: tz = sys.sqrt_tau() * reduced_resolvent_via_drs(sys, z / sys.sqrt_tau()); break;
      case Formulation::ReducedDirect: tz = sys.sqrt_tau() * reduced_resolvent_direct(sys, z / sys.sqrt_tau()); break;
      case Formulation::ReducedFukushima:
        tz = sys.sqrt_tau() * reduced_resolvent_fukushima(sys, z / sys.sqrt_tau());
        break;
      case Formulation::LiftedPpa: break;
    }
    z = relax(p, z, tz);
    traj.push_back(z);
  }
  return traj;
}

EquivalenceReport check_equivalence(const DrsProblem& p, const std::vector<Vector>& starts, int iters) {
  if (starts.empty()) throw Error(ErrorCode::InvalidArgument, "at least one starting point is required");
  if (iters <= 0) throw Error(ErrorCode::InvalidArgument, "iteration count must be positive");
  EquivalenceReport report;
  report.iters = iters;
  report.starts = static_cast<int>(starts.size());
  report.compared = {Formulation::Classical, Formulation::LiftedPpa, Formulation::ReducedDrs};

  const Index n = starts.front().size();
  try {
    (void)assemble_coupled_operator(BlockSystem(p.A, p.B, p.tau, n));
    report.compared.push_back(Formulation::ReducedDirect);
    report.compared.push_back(Formulation::ReducedFukushima);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NonInvertibleBlock) throw;
    report.fallback_note = "assembled paths unavailable (A or B not invertible-linear); compared drs/ppa/reduced only";
  }

  for (const Vector& z0 : starts) {
    std::vector<std::vector<Vector>> trajs;
    for (Formulation f : report.compared) trajs.push_back(z_trajectory(p, z0, iters, f));
    for (std::size_t a = 0; a < trajs.size(); ++a) {
      for (std::size_t b = a + 1; b < trajs.size(); ++b) {
        for (std::size_t k = 0; k < trajs[a].size(); ++k) {
          report.max_deviation = std::max(report.max_deviation, (trajs[a][k] - trajs[b][k]).norm());
        }
      }
    }
  }
  return report;
}

nlohmann::json to_json(const EquivalenceReport& report) {
  nlohmann::json forms = nlohmann::json::array();
  for (Formulation f : report.compared) forms.push_back(std::string(to_string(f)));
  nlohmann::json j{{"max_deviation", report.max_deviation},
                   {"iters", report.iters},
                   {"starts", report.starts},
                   {"formulations", std::move(forms)}};
  if (!report.fallback_note.empty()) j["fallback"] = report.fallback_note;
  return j;
}

}  // namespace drsplit
