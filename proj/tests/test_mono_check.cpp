#include <doctest.h>

#include <functional>

#include "drsplit/errors.hpp"
#include "drsplit/mono_check.hpp"
#include "drsplit/operator_json.hpp"
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

// Direct term-by-term sum, independent of the library's loop.
double cycle_sum_oracle(const std::vector<Vector>& x, const std::vector<Vector>& u) {
  const std::size_t n = x.size();
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) s += u[i].dot(x[i + 1]) - u[i].dot(x[i]);
  return s + u[n - 1].dot(x[0]) - u[n - 1].dot(x[n - 1]);
}

}  // namespace

TEST_CASE("cycle_sum: hand examples") {
  CHECK(cycle_sum({vec({0.0}), vec({1.0})}, {vec({0.0}), vec({1.0})}) == doctest::Approx(-1.0));
  CHECK(cycle_sum({vec({1.0}), vec({1.0})}, {vec({5.0}), vec({-3.0})}) == 0.0);
  // Skew pair: x1 = (1, 0), x2 = (0, 1), u_i = S x_i.
  const Matrix S = skew2();
  const std::vector<Vector> pts{vec({1.0, 0.0}), vec({0.0, 1.0})};
  CHECK(cycle_sum(pts, {S * pts[0], S * pts[1]}) == doctest::Approx(0.0));
  const std::vector<Vector> tri{vec({1.0, 0.0}), vec({0.0, 1.0}), vec({-1.0, 0.0})};
  CHECK(cycle_sum(tri, {S * tri[0], S * tri[1], S * tri[2]}) == doctest::Approx(2.0));

  CHECK(code_of([] { cycle_sum({vec({1.0}), vec({2.0})}, {vec({1.0})}); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([] { cycle_sum({vec({1.0})}, {vec({1.0})}); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([] { cycle_sum({vec({1.0}), vec({2.0, 3.0})}, {vec({1.0}), vec({1.0})}); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("cycle_sum agrees with the term-by-term oracle") {
  Rng rng(44);
  for (int draw = 0; draw < 100; ++draw) {
    const int n = 2 + draw % 5;
    std::vector<Vector> x, u;
    for (int i = 0; i < n; ++i) {
      x.push_back(rng.vector(3));
      u.push_back(rng.vector(3));
    }
    CHECK(std::abs(cycle_sum(x, u) - cycle_sum_oracle(x, u)) <= 1e-12);
  }
}

TEST_CASE("skew_three_cycle: hand examples") {
  const CycleWitness w = skew_three_cycle(mat({{1.0}}), vec({1.0}), vec({0.0}));
  REQUIRE(w.xi);
  CHECK(*w.xi == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(w.cycle_sum == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(w.n() == 3);
  CHECK(w.certifies_violation());
  CHECK((w.points[1] - vec({0.0, 1.0})).norm() == 0.0);
  CHECK((w.points[2] - vec({-1.0, 0.0})).norm() == 0.0);

  // a1 in ker C and b1 = 0: the cycle collapses.
  const CycleWitness flat = skew_three_cycle(mat({{1.0, 0.0}}), vec({0.0, 1.0}), vec({0.0}));
  CHECK(*flat.xi == 0.0);
  CHECK_FALSE(flat.certifies_violation());

  const CycleWitness nilpotent = skew_three_cycle(mat({{0.0, 1.0}, {0.0, 0.0}}), vec({0.0, 1.0}), vec({0.0, 0.0}));
  CHECK(*nilpotent.xi == doctest::Approx(2.0));
  CHECK(nilpotent.cycle_sum == doctest::Approx(2.0));

  CHECK(code_of([] { skew_three_cycle(Matrix::Zero(2, 2), vec({1.0, 0.0}), vec({0.0, 0.0})); }) ==
        ErrorCode::ZeroCoupling);
  CHECK(code_of([] { skew_three_cycle(mat({{1.0}}), vec({1.0, 0.0}), vec({0.0})); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("closed form matches the cycle sum and is positive when C a1 != 0") {
  Rng rng(100);
  int checked = 0;
  for (int draw = 0; draw < 100; ++draw) {
    const Index n2 = 1 + draw % 3;
    const Index n1 = 1 + (draw / 3) % 3;
    const Matrix C = rng.matrix(n2, n1);
    const Vector a1 = rng.vector(n1);
    const Vector b1 = draw % 2 == 0 ? rng.vector(n2) : Vector(Vector::Zero(n2));
    if ((C * a1).norm() == 0.0) continue;
    const CycleWitness w = skew_three_cycle(C, a1, b1);
    CHECK(*w.xi > 0.0);
    CHECK(std::abs(*w.xi - w.cycle_sum) <= 1e-10 * std::max(1.0, *w.xi));
    CHECK(std::abs(w.cycle_sum - cycle_sum_oracle(w.points, w.values)) <= 1e-12 * std::max(1.0, *w.xi));
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("sample_cycles: no violation on subdifferentials") {
  CHECK_FALSE(sample_cycles(OperatorSpec::l1(1.0), 6, 10000, 42, {Index{3}, 1}));
  Rng rng(5);
  CHECK_FALSE(sample_cycles(OperatorSpec::linear(rng.spd(3)), 6, 2000, 1));
  CHECK_FALSE(sample_cycles(OperatorSpec::linear(rng.psd(3, 1)), 6, 2000, 2));
  CHECK_FALSE(sample_cycles(OperatorSpec::box(vec({-1.0, 0.0}), vec({1.0, 3.0})), 6, 2000, 3));
  CHECK_FALSE(sample_cycles(
      OperatorSpec::block(OperatorSpec::l1(1.0), OperatorSpec::box(vec({-1.0}), vec({1.0})), Matrix::Zero(1, 2)), 6,
      2000, 4, {Index{3}, 1}));
}

TEST_CASE("sample_cycles: finds skew violations") {
  auto hit = sample_cycles(OperatorSpec::linear(skew2()), 6, 1000, 7);
  REQUIRE(hit);
  CHECK(hit->cycle_sum > kCycleViolationTol);
  CHECK(std::abs(hit->cycle_sum - cycle_sum_oracle(hit->points, hit->values)) <= 1e-12);
  // 2-cycles of a linear map sum to -<S d, d> <= 0, so the first hit is longer.
  CHECK(hit->n() >= 3);

  const auto block = OperatorSpec::block(OperatorSpec::zero(), OperatorSpec::zero(), mat({{1.0}}));
  auto hit2 = sample_cycles(block, 6, 1000, 7, {Index{2}, 1});
  REQUIRE(hit2);
  CHECK(hit2->certifies_violation());

  // Symmetric PSD blocks, coupled: small blocks leave the skew part dominant.
  const auto coupled = OperatorSpec::block(OperatorSpec::scaled_identity(0.01, 1),
                                           OperatorSpec::scaled_identity(0.01, 1), mat({{1.0}}));
  CHECK(sample_cycles(coupled, 6, 1000, 11));
}

TEST_CASE("sample_cycles: deterministic and independent of worker count") {
  const auto op = OperatorSpec::linear(mat({{0.1, -1.0, 0.0}, {1.0, 0.1, 0.5}, {0.0, -0.5, 0.1}}));
  auto one = sample_cycles(op, 6, 500, 123, {std::nullopt, 1});
  auto again = sample_cycles(op, 6, 500, 123, {std::nullopt, 1});
  auto four = sample_cycles(op, 6, 500, 123, {std::nullopt, 4});
  REQUIRE(one);
  REQUIRE(again);
  REQUIRE(four);
  CHECK(to_json(*one).dump() == to_json(*again).dump());
  CHECK(to_json(*one).dump() == to_json(*four).dump());
}

TEST_CASE("sample_cycles: errors") {
  CHECK(code_of([] { sample_cycles(OperatorSpec::l1(1.0), 6, 10, 0); }) == ErrorCode::UnsupportedSampling);
  CHECK(code_of([] { sample_cycles(OperatorSpec::linear(skew2()), 6, 10, 0, {Index{3}, 1}); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([] { sample_cycles(OperatorSpec::linear(skew2()), 1, 10, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("classify_resolvent: hand examples") {
  const auto half = classify_resolvent(mat({{0.5}}));
  CHECK(half.verdict == Verdict::Proximal);
  CHECK(half.recovered_M(0, 0) == doctest::Approx(1.0));

  const auto id = classify_resolvent(Matrix::Identity(3, 3));
  CHECK(id.verdict == Verdict::Proximal);
  CHECK(id.recovered_M.norm() == 0.0);

  // (I + S)^{-1} = [[0.5, 0.5], [-0.5, 0.5]].
  const auto skew = classify_resolvent(mat({{0.5, 0.5}, {-0.5, 0.5}}));
  CHECK(skew.verdict == Verdict::NotProximal);
  CHECK((skew.recovered_M - skew2()).norm() <= 1e-12);
  CHECK(skew.symmetry_defect >= 1.0);

  CHECK(code_of([] { classify_resolvent(mat({{1.0, 0.0}, {0.0, 0.0}})); }) == ErrorCode::SingularMatrix);
  CHECK(code_of([] { classify_resolvent(mat({{2.0}})); }) == ErrorCode::NonMonotone);
  CHECK(to_json(skew)["verdict"] == "NotProximal");
}

TEST_CASE("classify_resolvent: random symmetric vs. skew-perturbed") {
  Rng rng(61);
  for (int draw = 0; draw < 50; ++draw) {
    const Matrix M = rng.psd(4, 1 + draw % 4);
    const Matrix T = (Matrix::Identity(4, 4) + M).inverse();
    const auto c = classify_resolvent(T);
    CHECK(c.verdict == Verdict::Proximal);
    CHECK((c.recovered_M - M).norm() <= 1e-10);

    const Matrix N = rng.monotone(4, 1.0);
    CHECK(classify_resolvent((Matrix::Identity(4, 4) + N).inverse()).verdict == Verdict::NotProximal);
  }
}

TEST_CASE("drs_map_matrix: hand examples") {
  DrsProblem zero;
  CHECK((drs_map_matrix(zero, 2) - Matrix::Identity(2, 2)).norm() == 0.0);

  DrsProblem ids;
  ids.A = OperatorSpec::scaled_identity(1.0);
  ids.B = OperatorSpec::scaled_identity(1.0);
  CHECK(drs_map_matrix(ids, 1)(0, 0) == doctest::Approx(0.5));

  DrsProblem skew;
  skew.A = OperatorSpec::linear(skew2());
  CHECK((drs_map_matrix(skew) - mat({{0.5, 0.5}, {-0.5, 0.5}})).norm() <= 1e-15);

  DrsProblem nonlinear;
  nonlinear.A = OperatorSpec::l1(1.0);
  CHECK(code_of([&] { drs_map_matrix(nonlinear, 1); }) == ErrorCode::NotLinear);
  CHECK(code_of([&] { drs_map_matrix(zero); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("linear DRS maps are firmly nonexpansive resolvents") {
  for (const auto& entry : problem_catalog()) {
    if (!entry.linear) continue;
    CAPTURE(entry.name);
    const Matrix T = drs_map_matrix(entry.problem, entry.dim);
    // Firm nonexpansiveness of a matrix: T - T^T T has PSD symmetric part.
    CHECK(min_symmetric_eigenvalue(T - T.transpose() * T) >= -1e-10);
    if (try_inverse(T)) {
      const auto c = classify_resolvent(T);
      CHECK(c.min_sym_eigenvalue >= -1e-8);
      if (entry.dim == 1) CHECK(c.verdict == Verdict::Proximal);
    }
  }
}

TEST_CASE("inverse_preserves_cyclic") {
  CHECK(inverse_preserves_cyclic(mat({{2.0, 0.0}, {0.0, 3.0}})));
  Rng rng(8);
  for (int draw = 0; draw < 20; ++draw) CHECK(inverse_preserves_cyclic(rng.spd(4)));
  CHECK(code_of([] { inverse_preserves_cyclic(skew2()); }) == ErrorCode::NotSymmetricPD);
  CHECK(code_of([] { inverse_preserves_cyclic(mat({{1.0, 0.0}, {0.0, 0.0}})); }) == ErrorCode::NotSymmetricPD);
}

TEST_CASE("witness json shape") {
  const Json j = to_json(skew_three_cycle(mat({{1.0}}), vec({1.0}), vec({0.0})));
  CHECK(j["n"] == 3);
  CHECK(j["points"].size() == 3);
  CHECK(j["values"].size() == 3);
  CHECK(j["xi"].get<double>() == doctest::Approx(2.0));
  CHECK(j["cycle_sum"].get<double>() == doctest::Approx(2.0));
}
