#pragma once

// Douglas-Rachford lifted to a proximal point iteration on b = (u, s, z):
//
//   0 in  Abar b+ + Q (b+ - b),
//
//   Abar = [[B^{-1}, -tau I, -I],      Q = blockdiag(0, 0, I / tau) = D D^T,
//           [tau I,  A^{-1}, -I],      D = (0, 0, I / sqrt(tau)).
//           [I,      I,       0]]
//
// Q is only positive semidefinite: (u, s) lie in its kernel and never feed
// back into the iteration.

#include <nlohmann/json.hpp>

#include "drsplit/block_ops.hpp"
#include "drsplit/operator.hpp"

namespace drsplit {

struct PpaState {
  Vector u;
  Vector s;
  Vector z;

  /// Lifts z with u = s = 0.
  static PpaState from_z(const Vector& z);
};

class PpaSystem {
 public:
  PpaSystem(OperatorSpec A, OperatorSpec B, double tau, Index n);

  const OperatorSpec& A() const noexcept { return a_; }
  const OperatorSpec& B() const noexcept { return b_; }
  double tau() const noexcept { return tau_; }
  double sqrt_tau() const noexcept { return sqrt_tau_; }
  Index n() const noexcept { return n_; }

  /// Q (3n x 3n).
  Matrix metric() const;
  /// D (3n x n).
  Matrix metric_factor() const;
  /// Abar (3n x 3n). Throws NonInvertibleBlock unless A^{-1}, B^{-1} are matrices.
  Matrix lifted_operator() const;

  BlockSystem reduced() const { return BlockSystem(a_, b_, tau_, n_); }

 private:
  OperatorSpec a_;
  OperatorSpec b_;
  double tau_;
  double sqrt_tau_;
  Index n_;
};

/// u+ = J_{B^{-1}/tau}(z/tau), s+ = J_{A^{-1}/tau}(z/tau - 2u+), z+ = z - tau(u+ + s+).
PpaState ppa_step(const PpaSystem& sys, const PpaState& state);

/// Largest row residual of 0 in Abar next + Q (next - prev).
double ppa_inclusion_residual(const PpaSystem& sys, const PpaState& prev, const PpaState& next);

/// v = D^T b = z / sqrt(tau).
Vector reduce(const PpaSystem& sys, const PpaState& b);

nlohmann::json to_json(const PpaState& state);

}  // namespace drsplit
