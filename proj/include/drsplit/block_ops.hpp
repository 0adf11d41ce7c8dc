#pragma once

// Structured operators behind the reduced form of Douglas-Rachford:
//
//   L = [[B^{-1}, -tau I], [tau I, A^{-1}]]     (2n x 2n, monotone + skew)
//   K = sqrt(tau) [I I]                           (n x 2n, surjective)
//
// One DRS step in the scaled variable v = z / sqrt(tau) is the resolvent
// (I + K L^{-1} K^T)^{-1}, i.e. the resolvent of the inverse of the parallel
// composition L |> K = (K L^{-1} K^T)^{-1}. Three routes compute it:
//   via_drs    - change variables and run one DRS step (any operator pair)
//   direct     - assemble L and K and solve densely (invertible linear A, B)
//   fukushima  - I - K (L + K^T K)^{-1} K^T (same requirement as direct)

#include "drsplit/operator.hpp"

namespace drsplit {

class BlockSystem {
 public:
  /// Throws InvalidArgument for tau <= 0 and DimensionMismatch when A or B
  /// has a fixed dimension other than n.
  BlockSystem(OperatorSpec A, OperatorSpec B, double tau, Index n);

  const OperatorSpec& A() const noexcept { return a_; }
  const OperatorSpec& B() const noexcept { return b_; }
  double tau() const noexcept { return tau_; }
  double sqrt_tau() const noexcept { return sqrt_tau_; }
  Index n() const noexcept { return n_; }

 private:
  OperatorSpec a_;
  OperatorSpec b_;
  double tau_;
  double sqrt_tau_;
  Index n_;
};

/// Assembled L. Throws NonInvertibleBlock when A^{-1} or B^{-1} is not a matrix.
Matrix assemble_coupled_operator(const BlockSystem& sys);

/// Assembled K = sqrt(tau) [I I].
Matrix assemble_lift(const BlockSystem& sys);

/// L as a catalog operator: Block2x2 { B^{-1}, A^{-1}, C = tau I }.
OperatorSpec coupled_operator_spec(const BlockSystem& sys);

/// K L^{-1} K^T, the inverse of the parallel composition L |> K.
Matrix reduced_operator_matrix(const BlockSystem& sys);

/// R1, R2 from eliminating A R = D, with the unscaled K0 = [I I]:
/// L R1 = K0^T R2 and K0 R1 = I / sqrt(tau).
struct EliminationPair {
  Matrix R1;  // 2n x n
  Matrix R2;  // n x n
};

EliminationPair elimination_pair(const BlockSystem& sys);

Vector reduced_resolvent_via_drs(const BlockSystem& sys, const Vector& v);
Vector reduced_resolvent_direct(const BlockSystem& sys, const Vector& v);
Vector reduced_resolvent_fukushima(const BlockSystem& sys, const Vector& v);

/// J_{L |> K}(v) = v - reduced_resolvent_via_drs(sys, v).
Vector moreau_complement_form(const BlockSystem& sys, const Vector& v);

}  // namespace drsplit
