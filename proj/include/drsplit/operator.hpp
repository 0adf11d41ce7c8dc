#pragma once

// Representable maximally monotone operators on R^n.
//
// Every variant in the catalog has an exact resolvent: either a closed form
// or a single dense linear solve. Operators are immutable values; nested
// operators (Inverse, Block2x2) share their children.

#include <memory>
#include <optional>
#include <variant>

#include "drsplit/linalg.hpp"

namespace drsplit {

class OperatorSpec;

struct ZeroOp {
  std::optional<Index> dim;  // nullopt: acts on any dimension
};

struct ScaledIdentity {
  double alpha = 0.0;
  std::optional<Index> dim;
};

struct LinearRelation {
  Matrix M;
};

/// f(x) = 1/2 x^T Q x + q^T x.
struct Quadratic {
  Matrix Q;
  Vector q;
};

/// f(x) = weight * ||x||_1.
struct L1Norm {
  double weight = 1.0;
  std::optional<Index> dim;
};

/// Indicator of {x : lo <= x <= hi}.
struct BoxIndicator {
  Vector lo;
  Vector hi;
};

/// Indicator of {x : E x = e}. The projector pieces are cached at construction.
struct AffineIndicator {
  Matrix E;
  Vector e;
  Matrix pinv;  // E^+
};

using ProxKind = std::variant<Quadratic, L1Norm, BoxIndicator, AffineIndicator>;

/// Subdifferential of a closed proper convex function with a closed-form prox.
struct ProxFunction {
  ProxKind kind;
};

struct InverseOp {
  std::shared_ptr<const OperatorSpec> inner;
};

/// S = [[A, -C^T], [C, B]] with C of size n2 x n1.
struct Block2x2 {
  std::shared_ptr<const OperatorSpec> A;
  std::shared_ptr<const OperatorSpec> B;
  Matrix C;
};

class OperatorSpec {
 public:
  using Variant =
      std::variant<ZeroOp, ScaledIdentity, LinearRelation, ProxFunction, InverseOp, Block2x2>;

  static OperatorSpec zero(std::optional<Index> dim = std::nullopt);
  static OperatorSpec scaled_identity(double alpha, std::optional<Index> dim = std::nullopt);
  /// Throws NonMonotoneInput when (M + M^T)/2 is not PSD within tolerance.
  static OperatorSpec linear(Matrix M);
  static OperatorSpec quadratic(Matrix Q, Vector q);
  static OperatorSpec l1(double weight, std::optional<Index> dim = std::nullopt);
  static OperatorSpec box(Vector lo, Vector hi);
  static OperatorSpec affine(Matrix E, Vector e);
  static OperatorSpec inverse(OperatorSpec inner);
  static OperatorSpec block(OperatorSpec A, OperatorSpec B, Matrix C);

  const Variant& variant() const noexcept { return v_; }

  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&v_);
  }

  /// Fixed ambient dimension, or nullopt for dimension-agnostic operators.
  std::optional<Index> dimension() const;

 private:
  explicit OperatorSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Unique p with x in p + tau * op(p).
Vector resolve(const OperatorSpec& op, double tau, const Vector& x);

/// Distance-style residual of the inclusion u in op(y). Zero iff (y, u) is in
/// the graph. LinearRelation uses ||u - M y||; all others ||y - J_op(y + u)||.
double graph_residual(const OperatorSpec& op, const Vector& y, const Vector& u);

bool graph_member(const OperatorSpec& op, const Vector& y, const Vector& u, double tol);

/// ||J_{tau op}(x) + tau * J_{op^{-1}/tau}(x / tau) - x||.
double moreau_residual(const OperatorSpec& op, double tau, const Vector& x);

/// Matrix of op when it is single-valued, linear and everywhere defined.
/// `dim` is required for dimension-agnostic operators.
std::optional<Matrix> linear_matrix(const OperatorSpec& op, std::optional<Index> dim = std::nullopt);

/// Matrix of op^{-1} when it exists (i.e. op is linear and nonsingular, or op
/// is itself an Inverse of a linear operator).
std::optional<Matrix> inverse_matrix(const OperatorSpec& op,
                                     std::optional<Index> dim = std::nullopt);

/// Resolves the ambient dimension of a pair of operators; nullopt when both
/// are dimension-agnostic. Throws DimensionMismatch when they disagree.
std::optional<Index> common_dimension(const OperatorSpec& a, const OperatorSpec& b);

}  // namespace drsplit
