#include <doctest.h>

#include <functional>

#include "drsplit/block_ops.hpp"
#include "drsplit/errors.hpp"
#include "support/test_support.hpp"

using namespace drsplit;
using namespace drsplit::testing;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("reduced resolvent via DRS: hand examples") {
  const BlockSystem zero(OperatorSpec::zero(), OperatorSpec::zero(), 1.0, 2);
  CHECK((reduced_resolvent_via_drs(zero, vec({1.0, 2.0})) - vec({1.0, 2.0})).norm() == 0.0);

  // J_B(4) = 2, reflection 0, J_A(0) = 0: z+ = 4 - 2 + 0 = 2.
  const BlockSystem ids(OperatorSpec::scaled_identity(1.0), OperatorSpec::scaled_identity(1.0), 1.0, 1);
  CHECK(reduced_resolvent_via_drs(ids, vec({4.0}))(0) == doctest::Approx(2.0).epsilon(1e-15));

  // With B = 0 the map is J_{tau A}; (I + M)^{-1} (1, 0) = (0.5, -0.5).
  const BlockSystem skew(OperatorSpec::linear(skew2()), OperatorSpec::zero(), 1.0, 2);
  const Vector expected = (Matrix::Identity(2, 2) + skew2()).fullPivLu().solve(vec({1.0, 0.0}));
  CHECK((expected - vec({0.5, -0.5})).norm() <= 1e-15);
  CHECK((reduced_resolvent_via_drs(skew, vec({1.0, 0.0})) - vec({0.5, -0.5})).norm() <= 1e-15);
}

TEST_CASE("reduced resolvent direct: hand examples and errors") {
  const BlockSystem ids(OperatorSpec::scaled_identity(1.0), OperatorSpec::scaled_identity(1.0), 1.0, 1);
  // L = [[1, -1], [1, 1]], L^{-1} = [[1, 1], [-1, 1]] / 2, K L^{-1} K^T = 1.
  CHECK(assemble_coupled_operator(ids).isApprox(mat({{1.0, -1.0}, {1.0, 1.0}})));
  CHECK(reduced_operator_matrix(ids)(0, 0) == doctest::Approx(1.0));
  CHECK(reduced_resolvent_direct(ids, vec({4.0}))(0) == doctest::Approx(2.0).epsilon(1e-15));

  const BlockSystem twos(OperatorSpec::scaled_identity(2.0), OperatorSpec::scaled_identity(2.0), 1.0, 1);
  CHECK(std::abs(reduced_resolvent_direct(twos, vec({1.0}))(0) - reduced_resolvent_via_drs(twos, vec({1.0}))(0)) <=
        1e-12);

  const BlockSystem singular(OperatorSpec::zero(), OperatorSpec::scaled_identity(1.0), 1.0, 1);
  CHECK(code_of([&] { reduced_resolvent_direct(singular, vec({1.0})); }) == ErrorCode::NonInvertibleBlock);
}

TEST_CASE("reduced resolvent fukushima: hand example and errors") {
  const BlockSystem ids(OperatorSpec::scaled_identity(1.0), OperatorSpec::scaled_identity(1.0), 1.0, 1);
  // L + K^T K = [[2, 0], [2, 2]]; K^T v = (4, 4) gives w = (2, 0); v - K w = 2.
  const Matrix l = assemble_coupled_operator(ids);
  const Matrix k = assemble_lift(ids);
  CHECK((l + k.transpose() * k).isApprox(mat({{2.0, 0.0}, {2.0, 2.0}})));
  CHECK(reduced_resolvent_fukushima(ids, vec({4.0}))(0) == doctest::Approx(2.0).epsilon(1e-15));

  const BlockSystem zeros(OperatorSpec::scaled_identity(0.0), OperatorSpec::scaled_identity(0.0), 1.0, 1);
  CHECK(code_of([&] { reduced_resolvent_fukushima(zeros, vec({1.0})); }) == ErrorCode::NonInvertibleBlock);
}

TEST_CASE("three reduced paths agree on seeded monotone pairs") {
  Rng rng(31);
  double worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const Index n = draw % 2 == 0 ? 2 : 4;
    const double tau = rng.uniform(0.2, 3.0);
    const BlockSystem sys(OperatorSpec::linear(rng.monotone(n)), OperatorSpec::linear(rng.monotone(n)), tau, n);
    const Vector v = rng.vector(n);
    const Vector a = reduced_resolvent_via_drs(sys, v);
    const Vector b = reduced_resolvent_direct(sys, v);
    const Vector c = reduced_resolvent_fukushima(sys, v);
    worst = std::max({worst, (a - b).norm(), (a - c).norm(), (b - c).norm()});
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("moreau complement form") {
  const BlockSystem zero(OperatorSpec::zero(), OperatorSpec::zero(), 1.0, 2);
  CHECK(moreau_complement_form(zero, vec({1.0, 2.0})).norm() == 0.0);

  const BlockSystem ids(OperatorSpec::scaled_identity(1.0), OperatorSpec::scaled_identity(1.0), 1.0, 1);
  CHECK(moreau_complement_form(ids, vec({4.0}))(0) == doctest::Approx(2.0).epsilon(1e-15));

  const BlockSystem skew(OperatorSpec::linear(skew2()), OperatorSpec::zero(), 1.0, 2);
  CHECK((moreau_complement_form(skew, vec({1.0, 0.0})) - vec({0.5, 0.5})).norm() <= 1e-15);

  // Split sums back to v, and the complement p = J_{L|>K}(v) satisfies
  // v - p in (L|>K) p, i.e. K L^{-1} K^T (v - p) = p.
  Rng rng(4);
  for (int draw = 0; draw < 50; ++draw) {
    const BlockSystem sys(OperatorSpec::linear(rng.monotone(3)), OperatorSpec::linear(rng.spd(3)),
                          rng.uniform(0.3, 2.0), 3);
    const Vector v = rng.vector(3);
    const Vector r = reduced_resolvent_via_drs(sys, v);
    const Vector p = moreau_complement_form(sys, v);
    CHECK((r + p - v).norm() <= 1e-15 * std::max(1.0, v.norm()) * 4);
    CHECK((reduced_operator_matrix(sys) * (v - p) - p).norm() <= 1e-10);
  }
}

TEST_CASE("elimination pair satisfies both block equations") {
  Rng rng(12);
  for (int draw = 0; draw < 20; ++draw) {
    const Index n = 3;
    const double tau = rng.uniform(0.2, 4.0);
    const BlockSystem sys(OperatorSpec::linear(rng.monotone(n)), OperatorSpec::linear(rng.monotone(n)), tau, n);
    const EliminationPair pair = elimination_pair(sys);
    const Matrix l = assemble_coupled_operator(sys);
    Matrix k0(n, 2 * n);
    k0 << Matrix::Identity(n, n), Matrix::Identity(n, n);
    CHECK((l * pair.R1 - k0.transpose() * pair.R2).norm() <= 1e-8);
    CHECK((k0 * pair.R1 - Matrix::Identity(n, n) / std::sqrt(tau)).norm() <= 1e-8);
    // (D^T Abar^{-1} D)^{-1} = (R2 / sqrt(tau))^{-1} = K L^{-1} K^T.
    const Matrix reduced = (pair.R2 / std::sqrt(tau)).inverse();
    CHECK((reduced - reduced_operator_matrix(sys)).norm() <= 1e-8);
  }
}

TEST_CASE("coupled operator spec matches the assembled L") {
  Rng rng(3);
  const BlockSystem sys(OperatorSpec::linear(rng.monotone(2)), OperatorSpec::scaled_identity(1.5), 0.8, 2);
  const auto spec = coupled_operator_spec(sys);
  CHECK((*linear_matrix(spec) - assemble_coupled_operator(sys)).norm() <= 1e-12);
  // L is monotone + skew: its symmetric part is blockdiag(sym B^{-1}, sym A^{-1}).
  CHECK(has_psd_symmetric_part(assemble_coupled_operator(sys)));
}

TEST_CASE("congruence by a surjective map keeps monotonicity") {
  Rng rng(21);
  for (int draw = 0; draw < 100; ++draw) {
    const Index n = 2 + draw % 3;
    const Index m = n + draw % 4;
    const Matrix M = rng.monotone(m, 1.5);
    const Matrix P = rng.surjective(n, m);
    CHECK(numerical_rank(P, 1e-8) == n);
    const Matrix congruent = P * M * P.transpose();
    CHECK(min_symmetric_eigenvalue(congruent) >= -1e-10 * std::max(1.0, congruent.norm()));
  }
}

TEST_CASE("block operator symmetric part is the block diagonal of symmetric parts") {
  Rng rng(17);
  for (int draw = 0; draw < 50; ++draw) {
    const Matrix a = rng.monotone(2);
    const Matrix b = rng.monotone(3);
    const Matrix c = rng.matrix(3, 2);
    const auto S = OperatorSpec::block(OperatorSpec::linear(a), OperatorSpec::linear(b), c);
    const Matrix sym = symmetric_part(*linear_matrix(S));
    Matrix expected = Matrix::Zero(5, 5);
    expected.topLeftCorner(2, 2) = symmetric_part(a);
    expected.bottomRightCorner(3, 3) = symmetric_part(b);
    CHECK((sym - expected).norm() == 0.0);
    CHECK(has_psd_symmetric_part(sym));
  }
}

TEST_CASE("block system validates its inputs") {
  CHECK(code_of([] { BlockSystem(OperatorSpec::zero(), OperatorSpec::zero(), -1.0, 2); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { BlockSystem(OperatorSpec::zero(3), OperatorSpec::zero(), 1.0, 2); }) ==
        ErrorCode::DimensionMismatch);
  const BlockSystem sys(OperatorSpec::zero(), OperatorSpec::zero(), 1.0, 2);
  CHECK(code_of([&] { reduced_resolvent_via_drs(sys, vec({1.0})); }) == ErrorCode::DimensionMismatch);
}
