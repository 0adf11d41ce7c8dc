#include "drsplit/degenerate_ppa.hpp"

#include <algorithm>
#include <cmath>

#include "drsplit/errors.hpp"
#include "drsplit/operator_json.hpp"

namespace drsplit {

namespace {

void require_state(const PpaSystem& sys, const PpaState& b) {
  if (b.u.size() != sys.n() || b.s.size() != sys.n() || b.z.size() != sys.n()) {
    throw Error(ErrorCode::DimensionMismatch, "PPA state components must all have the system dimension");
  }
}

}  // namespace

PpaState PpaState::from_z(const Vector& z) {
  return PpaState{Vector::Zero(z.size()), Vector::Zero(z.size()), z};
}

PpaSystem::PpaSystem(OperatorSpec A, OperatorSpec B, double tau, Index n)
    : a_(std::move(A)), b_(std::move(B)), tau_(tau), sqrt_tau_(std::sqrt(tau)), n_(n) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw Error(ErrorCode::InvalidArgument, "tau must be positive");
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  for (const OperatorSpec* op : {&a_, &b_}) {
    if (auto d = op->dimension(); d && *d != n) {
      throw Error(ErrorCode::DimensionMismatch, "PPA system operator has wrong dimension");
    }
  }
}

Matrix PpaSystem::metric_factor() const {
  Matrix d = Matrix::Zero(3 * n_, n_);
  d.bottomRows(n_) = Matrix::Identity(n_, n_) / sqrt_tau_;
  return d;
}

Matrix PpaSystem::metric() const {
  const Matrix d = metric_factor();
  return d * d.transpose();
}

Matrix PpaSystem::lifted_operator() const {
  auto a_inv = inverse_matrix(a_, n_);
  auto b_inv = inverse_matrix(b_, n_);
  if (!a_inv || !b_inv) {
    throw Error(ErrorCode::NonInvertibleBlock, "lifted operator needs A^{-1} and B^{-1} as matrices");
  }
  const Matrix id = Matrix::Identity(n_, n_);
  Matrix op = Matrix::Zero(3 * n_, 3 * n_);
  op.block(0, 0, n_, n_) = *b_inv;
  op.block(0, n_, n_, n_) = -tau_ * id;
  op.block(0, 2 * n_, n_, n_) = -id;
  op.block(n_, 0, n_, n_) = tau_ * id;
  op.block(n_, n_, n_, n_) = *a_inv;
  op.block(n_, 2 * n_, n_, n_) = -id;
  op.block(2 * n_, 0, n_, n_) = id;
  op.block(2 * n_, n_, n_, n_) = id;
  return op;
}

PpaState ppa_step(const PpaSystem& sys, const PpaState& state) {
  require_state(sys, state);
  const double tau = sys.tau();
  const Vector scaled = state.z / tau;
  PpaState next;
  next.u = resolve(OperatorSpec::inverse(sys.B()), 1.0 / tau, scaled);
  next.s = resolve(OperatorSpec::inverse(sys.A()), 1.0 / tau, scaled - 2.0 * next.u);
  next.z = state.z - tau * (next.s + next.u);
  return next;
}

double ppa_inclusion_residual(const PpaSystem& sys, const PpaState& prev, const PpaState& next) {
  require_state(sys, prev);
  require_state(sys, next);
  const double tau = sys.tau();
  // Row 1: z - tau u+ in B^{-1} u+, i.e. u+ in B(z - tau u+).
  const double row1 = graph_residual(sys.B(), prev.z - tau * next.u, next.u);
  // Row 2: s+ in A(z - 2 tau u+ - tau s+).
  const double row2 = graph_residual(sys.A(), prev.z - 2.0 * tau * next.u - tau * next.s, next.s);
  // Row 3: z+ = z - tau (u+ + s+).
  const double row3 = (next.z - (prev.z - tau * (next.u + next.s))).norm();
  return std::max({row1, row2, row3});
}

Vector reduce(const PpaSystem& sys, const PpaState& b) {
  if (b.z.size() != sys.n()) throw Error(ErrorCode::DimensionMismatch, "state has wrong dimension");
  return b.z / sys.sqrt_tau();
}

nlohmann::json to_json(const PpaState& state) {
  return {{"u", vector_to_json(state.u)}, {"s", vector_to_json(state.s)}, {"z", vector_to_json(state.z)}};
}

}  // namespace drsplit
