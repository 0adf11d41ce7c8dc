#include "drsplit/block_ops.hpp"

#include <cmath>

#include "drsplit/drs_engine.hpp"
#include "drsplit/errors.hpp"

namespace drsplit {

namespace {

void require_size(const BlockSystem& sys, const Vector& v) {
  if (v.size() != sys.n()) throw Error(ErrorCode::DimensionMismatch, "reduced variable has wrong size");
}

}  // namespace

BlockSystem::BlockSystem(OperatorSpec A, OperatorSpec B, double tau, Index n)
    : a_(std::move(A)), b_(std::move(B)), tau_(tau), sqrt_tau_(std::sqrt(tau)), n_(n) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw Error(ErrorCode::InvalidArgument, "tau must be positive");
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  for (const OperatorSpec* op : {&a_, &b_}) {
    if (auto d = op->dimension(); d && *d != n) {
      throw Error(ErrorCode::DimensionMismatch, "block system operator has wrong dimension");
    }
  }
}

Matrix assemble_coupled_operator(const BlockSystem& sys) {
  const Index n = sys.n();
  auto a_inv = inverse_matrix(sys.A(), n);
  auto b_inv = inverse_matrix(sys.B(), n);
  if (!a_inv || !b_inv) {
    throw Error(ErrorCode::NonInvertibleBlock, "A^{-1} and B^{-1} must both be matrices for the assembled path");
  }
  Matrix l(2 * n, 2 * n);
  l.topLeftCorner(n, n) = *b_inv;
  l.topRightCorner(n, n) = -sys.tau() * Matrix::Identity(n, n);
  l.bottomLeftCorner(n, n) = sys.tau() * Matrix::Identity(n, n);
  l.bottomRightCorner(n, n) = *a_inv;
  return l;
}

Matrix assemble_lift(const BlockSystem& sys) {
  const Index n = sys.n();
  Matrix k(n, 2 * n);
  k.leftCols(n) = sys.sqrt_tau() * Matrix::Identity(n, n);
  k.rightCols(n) = sys.sqrt_tau() * Matrix::Identity(n, n);
  return k;
}

OperatorSpec coupled_operator_spec(const BlockSystem& sys) {
  const Index n = sys.n();
  return OperatorSpec::block(OperatorSpec::inverse(sys.B()), OperatorSpec::inverse(sys.A()),
                             sys.tau() * Matrix::Identity(n, n));
}

Matrix reduced_operator_matrix(const BlockSystem& sys) {
  const Matrix l = assemble_coupled_operator(sys);
  const Matrix k = assemble_lift(sys);
  return k * solve_dense_columns(l, k.transpose());
}

EliminationPair elimination_pair(const BlockSystem& sys) {
  const Index n = sys.n();
  const Matrix l = assemble_coupled_operator(sys);
  Matrix k0(n, 2 * n);
  k0 << Matrix::Identity(n, n), Matrix::Identity(n, n);
  const Matrix l_inv_k0t = solve_dense_columns(l, k0.transpose());
  const Matrix schur = k0 * l_inv_k0t;
  EliminationPair pair;
  pair.R2 = solve_dense_columns(schur, Matrix::Identity(n, n)) / sys.sqrt_tau();
  pair.R1 = l_inv_k0t * pair.R2;
  return pair;
}

Vector reduced_resolvent_via_drs(const BlockSystem& sys, const Vector& v) {
  require_size(sys, v);
  const Vector z = sys.sqrt_tau() * v;
  return douglas_rachford_map(sys.A(), sys.B(), sys.tau(), z) / sys.sqrt_tau();
}

Vector reduced_resolvent_direct(const BlockSystem& sys, const Vector& v) {
  require_size(sys, v);
  const Matrix g = reduced_operator_matrix(sys);
  return solve_dense(Matrix::Identity(sys.n(), sys.n()) + g, v);
}

Vector reduced_resolvent_fukushima(const BlockSystem& sys, const Vector& v) {
  require_size(sys, v);
  const Matrix l = assemble_coupled_operator(sys);
  const Matrix k = assemble_lift(sys);
  const Vector w = solve_dense(l + k.transpose() * k, Vector(k.transpose() * v));
  return v - k * w;
}

Vector moreau_complement_form(const BlockSystem& sys, const Vector& v) {
  return v - reduced_resolvent_via_drs(sys, v);
}

}  // namespace drsplit
