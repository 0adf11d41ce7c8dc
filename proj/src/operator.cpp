#include "drsplit/operator.hpp"

#include <cmath>
#include <string>

#include "drsplit/detail/overloaded.hpp"
#include "drsplit/errors.hpp"

namespace drsplit {

namespace {

using detail::Overloaded;

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be a non-empty square matrix");
  }
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw Error(ErrorCode::InvalidArgument, std::string(what) + " has non-finite entries");
}

void require_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::InvalidArgument, "step size tau must be positive and finite");
  }
}

void require_dim(const OperatorSpec& op, Index n) {
  if (auto d = op.dimension(); d && *d != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "operator of dimension " + std::to_string(*d) + " applied to vector of size " +
                    std::to_string(n));
  }
}

Index resolve_dim(std::optional<Index> own, std::optional<Index> hint) {
  if (own && hint && *own != *hint) {
    throw Error(ErrorCode::DimensionMismatch, "dimension hint disagrees with operator dimension");
  }
  if (own) return *own;
  if (hint) return *hint;
  throw Error(ErrorCode::InvalidArgument, "dimension-agnostic operator needs an explicit dimension");
}

Vector soft_threshold(const Vector& x, double t) {
  return x.unaryExpr([t](double v) {
    if (v > t) return v - t;
    if (v < -t) return v + t;
    return 0.0;
  });
}

Vector resolve_prox(const ProxFunction& f, double tau, const Vector& x) {
  return std::visit(
      Overloaded{
          [&](const Quadratic& k) -> Vector {
            const Index n = k.Q.rows();
            return solve_dense(Matrix::Identity(n, n) + tau * k.Q, x - tau * k.q);
          },
          [&](const L1Norm& k) -> Vector { return soft_threshold(x, tau * k.weight); },
          [&](const BoxIndicator& k) -> Vector { return x.cwiseMax(k.lo).cwiseMin(k.hi); },
          [&](const AffineIndicator& k) -> Vector { return x - k.pinv * (k.E * x - k.e); },
      },
      f.kind);
}

Matrix assemble_block(const Matrix& a, const Matrix& b, const Matrix& c) {
  const Index n1 = c.cols();
  const Index n2 = c.rows();
  Matrix s = Matrix::Zero(n1 + n2, n1 + n2);
  s.topLeftCorner(n1, n1) = a;
  s.topRightCorner(n1, n2) = -c.transpose();
  s.bottomLeftCorner(n2, n1) = c;
  s.bottomRightCorner(n2, n2) = b;
  return s;
}

}  // namespace

OperatorSpec OperatorSpec::zero(std::optional<Index> dim) {
  if (dim && *dim <= 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  return OperatorSpec(ZeroOp{dim});
}

OperatorSpec OperatorSpec::scaled_identity(double alpha, std::optional<Index> dim) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidArgument, "scaled identity needs alpha >= 0");
  }
  if (dim && *dim <= 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  return OperatorSpec(ScaledIdentity{alpha, dim});
}

OperatorSpec OperatorSpec::linear(Matrix M) {
  require_square(M, "linear relation matrix");
  require_finite(M, "linear relation matrix");
  if (!has_psd_symmetric_part(M)) {
    throw Error(ErrorCode::NonMonotoneInput, "symmetric part of M is not positive semidefinite");
  }
  return OperatorSpec(LinearRelation{std::move(M)});
}

OperatorSpec OperatorSpec::quadratic(Matrix Q, Vector q) {
  require_square(Q, "quadratic Q");
  require_finite(Q, "quadratic Q");
  require_finite(q, "quadratic q");
  if (q.size() != Q.rows()) throw Error(ErrorCode::DimensionMismatch, "quadratic q size differs from Q");
  if ((Q - Q.transpose()).norm() > kPsdTolerance * std::max(1.0, Q.norm())) {
    throw Error(ErrorCode::NonMonotoneInput, "quadratic Q is not symmetric");
  }
  Matrix sym = symmetric_part(Q);
  if (!has_psd_symmetric_part(sym)) {
    throw Error(ErrorCode::NonMonotoneInput, "quadratic Q is not positive semidefinite");
  }
  return OperatorSpec(ProxFunction{Quadratic{std::move(sym), std::move(q)}});
}

OperatorSpec OperatorSpec::l1(double weight, std::optional<Index> dim) {
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw Error(ErrorCode::InvalidArgument, "l1 weight must be positive");
  }
  if (dim && *dim <= 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  return OperatorSpec(ProxFunction{L1Norm{weight, dim}});
}

OperatorSpec OperatorSpec::box(Vector lo, Vector hi) {
  if (lo.size() != hi.size() || lo.size() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "box bounds must be non-empty and of equal size");
  }
  require_finite(lo, "box lower bound");
  require_finite(hi, "box upper bound");
  if ((lo.array() > hi.array()).any()) throw Error(ErrorCode::InvalidArgument, "box needs lo <= hi");
  return OperatorSpec(ProxFunction{BoxIndicator{std::move(lo), std::move(hi)}});
}

OperatorSpec OperatorSpec::affine(Matrix E, Vector e) {
  if (E.rows() == 0 || E.cols() == 0) throw Error(ErrorCode::DimensionMismatch, "affine E must be non-empty");
  if (e.size() != E.rows()) throw Error(ErrorCode::DimensionMismatch, "affine e size differs from rows of E");
  require_finite(E, "affine E");
  require_finite(e, "affine e");
  Matrix pinv = E.completeOrthogonalDecomposition().pseudoInverse();
  if ((E * (pinv * e) - e).norm() > 1e-10 * std::max(1.0, e.norm())) {
    throw Error(ErrorCode::InvalidArgument, "affine set {x : E x = e} is empty");
  }
  return OperatorSpec(ProxFunction{AffineIndicator{std::move(E), std::move(e), std::move(pinv)}});
}

OperatorSpec OperatorSpec::inverse(OperatorSpec inner) {
  return OperatorSpec(InverseOp{std::make_shared<const OperatorSpec>(std::move(inner))});
}

OperatorSpec OperatorSpec::block(OperatorSpec A, OperatorSpec B, Matrix C) {
  if (C.rows() == 0 || C.cols() == 0) throw Error(ErrorCode::DimensionMismatch, "block coupling C must be non-empty");
  require_finite(C, "block coupling C");
  if (auto d = A.dimension(); d && *d != C.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "block A must be n1 x n1 with C of size n2 x n1");
  }
  if (auto d = B.dimension(); d && *d != C.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "block B must be n2 x n2 with C of size n2 x n1");
  }
  return OperatorSpec(Block2x2{std::make_shared<const OperatorSpec>(std::move(A)),
                               std::make_shared<const OperatorSpec>(std::move(B)), std::move(C)});
}

std::optional<Index> OperatorSpec::dimension() const {
  return std::visit(
      Overloaded{
          [](const ZeroOp& z) -> std::optional<Index> { return z.dim; },
          [](const ScaledIdentity& s) -> std::optional<Index> { return s.dim; },
          [](const LinearRelation& l) -> std::optional<Index> { return l.M.rows(); },
          [](const ProxFunction& f) -> std::optional<Index> {
            return std::visit(Overloaded{
                                  [](const Quadratic& k) -> std::optional<Index> { return k.Q.rows(); },
                                  [](const L1Norm& k) -> std::optional<Index> { return k.dim; },
                                  [](const BoxIndicator& k) -> std::optional<Index> { return k.lo.size(); },
                                  [](const AffineIndicator& k) -> std::optional<Index> { return k.E.cols(); },
                              },
                              f.kind);
          },
          [](const InverseOp& i) -> std::optional<Index> { return i.inner->dimension(); },
          [](const Block2x2& b) -> std::optional<Index> { return b.C.rows() + b.C.cols(); },
      },
      v_);
}

Vector resolve(const OperatorSpec& op, double tau, const Vector& x) {
  require_tau(tau);
  require_dim(op, x.size());
  return std::visit(
      Overloaded{
          [&](const ZeroOp&) -> Vector { return x; },
          [&](const ScaledIdentity& s) -> Vector { return x / (1.0 + tau * s.alpha); },
          [&](const LinearRelation& l) -> Vector {
            const Index n = l.M.rows();
            return solve_dense(Matrix::Identity(n, n) + tau * l.M, x);
          },
          [&](const ProxFunction& f) -> Vector { return resolve_prox(f, tau, x); },
          [&](const InverseOp& i) -> Vector {
            return x - tau * resolve(*i.inner, 1.0 / tau, x / tau);
          },
          [&](const Block2x2& b) -> Vector {
            const Index n1 = b.C.cols();
            const Index n2 = b.C.rows();
            if (b.C.isZero(0.0)) {
              Vector p(n1 + n2);
              p.head(n1) = resolve(*b.A, tau, x.head(n1));
              p.tail(n2) = resolve(*b.B, tau, x.tail(n2));
              return p;
            }
            auto ma = linear_matrix(*b.A, n1);
            auto mb = linear_matrix(*b.B, n2);
            if (!ma || !mb) {
              throw Error(ErrorCode::UnsupportedComposition,
                          "block operator with nonzero coupling needs linear diagonal blocks");
            }
            const Matrix s = assemble_block(*ma, *mb, b.C);
            return solve_dense(Matrix::Identity(n1 + n2, n1 + n2) + tau * s, x);
          },
      },
      op.variant());
}

double graph_residual(const OperatorSpec& op, const Vector& y, const Vector& u) {
  if (y.size() != u.size()) throw Error(ErrorCode::DimensionMismatch, "graph point and value differ in size");
  require_dim(op, y.size());
  if (const auto* l = op.get_if<LinearRelation>()) return (u - l->M * y).norm();
  return (y - resolve(op, 1.0, y + u)).norm();
}

bool graph_member(const OperatorSpec& op, const Vector& y, const Vector& u, double tol) {
  return graph_residual(op, y, u) <= tol;
}

double moreau_residual(const OperatorSpec& op, double tau, const Vector& x) {
  require_tau(tau);
  const Vector primal = resolve(op, tau, x);
  const Vector dual = resolve(OperatorSpec::inverse(op), 1.0 / tau, x / tau);
  return (primal + tau * dual - x).norm();
}

std::optional<Matrix> linear_matrix(const OperatorSpec& op, std::optional<Index> dim) {
  return std::visit(
      Overloaded{
          [&](const ZeroOp& z) -> std::optional<Matrix> {
            const Index n = resolve_dim(z.dim, dim);
            return Matrix::Zero(n, n);
          },
          [&](const ScaledIdentity& s) -> std::optional<Matrix> {
            const Index n = resolve_dim(s.dim, dim);
            return s.alpha * Matrix::Identity(n, n);
          },
          [&](const LinearRelation& l) -> std::optional<Matrix> {
            resolve_dim(l.M.rows(), dim);
            return l.M;
          },
          [&](const ProxFunction& f) -> std::optional<Matrix> {
            if (const auto* q = std::get_if<Quadratic>(&f.kind)) {
              resolve_dim(q->Q.rows(), dim);
              if (q->q.isZero(0.0)) return q->Q;
            }
            return std::nullopt;
          },
          [&](const InverseOp& i) -> std::optional<Matrix> { return inverse_matrix(*i.inner, dim); },
          [&](const Block2x2& b) -> std::optional<Matrix> {
            resolve_dim(b.C.rows() + b.C.cols(), dim);
            auto ma = linear_matrix(*b.A, b.C.cols());
            auto mb = linear_matrix(*b.B, b.C.rows());
            if (!ma || !mb) return std::nullopt;
            return assemble_block(*ma, *mb, b.C);
          },
      },
      op.variant());
}

std::optional<Matrix> inverse_matrix(const OperatorSpec& op, std::optional<Index> dim) {
  if (const auto* i = op.get_if<InverseOp>()) return linear_matrix(*i->inner, dim);
  auto m = linear_matrix(op, dim);
  if (!m) return std::nullopt;
  return try_inverse(*m);
}

std::optional<Index> common_dimension(const OperatorSpec& a, const OperatorSpec& b) {
  const auto da = a.dimension();
  const auto db = b.dimension();
  if (da && db && *da != *db) {
    throw Error(ErrorCode::DimensionMismatch, "operators act on spaces of different dimension");
  }
  return da ? da : db;
}

}  // namespace drsplit
