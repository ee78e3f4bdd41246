#include <cmath>
#include <vector>

#include "doctest.h"
#include "polyflow/oracle.hpp"
#include "polyflow/poly_core.hpp"
#include "polyflow/rng.hpp"

using namespace polyflow;

namespace {
const std::vector<double> kCubicRoots{1.0, 2.0, 3.0};
}

TEST_CASE("scaled coefficients of the reference cubic") {
  const NormalizedPolynomial q = from_roots(kCubicRoots);
  CHECK(q.degree == 3);
  CHECK(q.p1() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(q.pk(2) == doctest::Approx(5.5).epsilon(1e-14));
  CHECK(q.psq == doctest::Approx(6.0).epsilon(1e-14));
  CHECK_THROWS_AS((void)q.pk(0), Error);
  CHECK_THROWS_AS((void)q.pk(3), Error);

  const std::vector<double> monic = to_monic(q);
  REQUIRE(monic.size() == 4);
  CHECK(monic[0] == doctest::Approx(1.0));
  CHECK(monic[1] == doctest::Approx(-6.0));
  CHECK(monic[2] == doctest::Approx(11.0));
  CHECK(monic[3] == doctest::Approx(-6.0));

  const NormalizedPolynomial back = from_monic(monic);
  CHECK(back.p1() == doctest::Approx(q.p1()).epsilon(1e-14));
  CHECK(back.psq == doctest::Approx(q.psq).epsilon(1e-14));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(from_monic({2.0, 1.0, 1.0}), Error);     // not monic
  CHECK_THROWS_AS(from_monic({1.0, 1.0}), Error);          // degree 1
  CHECK_THROWS_AS(from_roots({1.0}), Error);               // too few roots
  CHECK_THROWS_AS(from_roots({1.0, 1.0 + 1e-12}), Error);  // duplicate
  CHECK_THROWS_AS(NormalizedPolynomial(3, {1.0}, 2.0), Error);  // wrong length
  const double nan = std::nan("");
  CHECK_THROWS_AS(NormalizedPolynomial(2, {1.0}, nan), Error);
  CHECK_THROWS_AS(NormalizedPolynomial(2, {nan}, 1.0), Error);
}

TEST_CASE("root set separation") {
  const RootSet rs = make_root_set({3.0, 1.0, 2.0}, 0.5);
  CHECK(rs.roots == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(rs.min_gap == doctest::Approx(1.0));
  CHECK_THROWS_AS(make_root_set({1.0, 1.2}, 0.5), Error);
  CHECK(default_separation_tol({10.0, -20.0}) == doctest::Approx(1e-7 * 21.0));
}

TEST_CASE("taylor shift and depressed invariants of the reference cubic") {
  const std::vector<double> shifted = taylor_shift({1.0, -6.0, 11.0, -6.0}, 2.0);
  REQUIRE(shifted.size() == 4);
  CHECK(shifted[0] == doctest::Approx(1.0));
  CHECK(shifted[1] == doctest::Approx(0.0));
  CHECK(shifted[2] == doctest::Approx(-1.0));
  CHECK(shifted[3] == doctest::Approx(0.0));

  const InvariantSet inv = depress(from_roots(kCubicRoots));
  CHECK(inv.degree == 3);
  CHECK(inv.rk(2) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(inv.r0 == doctest::Approx(0.0));
  CHECK_THROWS_AS((void)inv.rk(1), Error);
  CHECK_THROWS_AS((void)inv.rk(3), Error);
}

TEST_CASE("psq ladder on the reference cubic") {
  const NormalizedPolynomial q = from_roots(kCubicRoots);
  const InvariantSet inv = depress(q);
  CHECK(psq_of_p1(inv, 2.0) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(psq_derivative(inv, 2.0, 0) == doctest::Approx(6.0));
  CHECK(psq_derivative(inv, 2.0, 1) == doctest::Approx(11.0));
  CHECK(psq_derivative(inv, 2.0, 2) == doctest::Approx(12.0));
  CHECK(psq_derivative(inv, 2.0, 3) == doctest::Approx(6.0));  // 3! exactly
  CHECK(psq_derivative(inv, 2.0, 4) == 0.0);

  CHECK(coefficient_from_invariants(inv, 2.0, 1) == doctest::Approx(5.5).epsilon(1e-14));
  CHECK(coefficient_from_invariants(inv, 2.0, 2) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(coefficient_from_invariants(inv, 2.0, 0), Error);
  CHECK_THROWS_AS(coefficient_from_invariants(inv, 2.0, 3), Error);
}

TEST_CASE("truncated exponential shift collapses to the root product") {
  const NormalizedPolynomial q = from_roots(kCubicRoots);
  // at a non-root the sum equals prod (q_i - x): (1-4)(2-4)(3-4) = -6
  CHECK(euler_shift_residual(q, 4.0) == doctest::Approx(-6.0).epsilon(1e-12));
  for (double r : kCubicRoots) CHECK(std::abs(euler_shift_residual(q, r)) < 1e-12);
}

TEST_CASE("coefficients match the independent expansion over random instances") {
  Rng rng(1729);
  for (int i = 0; i < 200; ++i) {
    const std::vector<double> roots =
        rng.separated_roots(rng.uniform_int(2, 8), -10.0, 10.0, 0.1);
    const std::vector<double> monic = to_monic(from_roots(roots));
    const oracle::MonicPolynomial ref = oracle::expand_from_roots(roots);
    for (size_t j = 0; j < monic.size(); ++j)
      CHECK(monic[j] ==
            doctest::Approx(ref.coeffs[j]).epsilon(1e-10).scale(1.0 + std::abs(ref.coeffs[j])));
  }
}

TEST_CASE("invariants ignore a common root translation") {
  Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> roots = rng.separated_roots(rng.uniform_int(2, 8), -10.0, 10.0, 0.1);
    const InvariantSet before = depress(from_roots(roots));
    const double c = rng.uniform(-5.0, 5.0);
    for (double& r : roots) r += c;
    const InvariantSet after = depress(from_roots(roots));
    CHECK(std::abs(after.r0 - before.r0) <= 1e-9 * (1.0 + std::abs(before.r0)));
    for (int k = 2; k <= before.degree - 1; ++k)
      CHECK(std::abs(after.rk(k) - before.rk(k)) <= 1e-9 * (1.0 + std::abs(before.rk(k))));
  }
}

TEST_CASE("json round trip is bit-identical") {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const NormalizedPolynomial q =
        from_roots(rng.separated_roots(rng.uniform_int(2, 8), -10.0, 10.0, 0.1));
    const NormalizedPolynomial back = poly_from_json(to_json(q));
    CHECK(back.degree == q.degree);
    CHECK(back.psq == q.psq);  // exact
    for (size_t k = 0; k < q.p.size(); ++k) CHECK(back.p[k] == q.p[k]);
  }
  CHECK_THROWS_AS(poly_from_json("{"), Error);
  CHECK_THROWS_AS(poly_from_json("[1,2,3]"), Error);
  CHECK_THROWS_AS(poly_from_json("{\"degree\":2,\"p\":[0.5]}"), Error);  // psq missing
  CHECK_THROWS_AS(poly_from_json("{\"degree\":3,\"p\":[0.5],\"psq\":1.0}"), Error);
  CHECK_THROWS_AS(poly_from_json("{\"degree\":2,\"p\":[0.5],\"psq\":\"x\"}"), Error);
}

TEST_CASE("csv round trip is bit-identical") {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const NormalizedPolynomial q =
        from_roots(rng.separated_roots(rng.uniform_int(2, 8), -10.0, 10.0, 0.1));
    const NormalizedPolynomial back = poly_from_csv(to_csv(q));
    CHECK(back.psq == q.psq);
    for (size_t k = 0; k < q.p.size(); ++k) CHECK(back.p[k] == q.p[k]);
  }
  CHECK(to_csv(from_roots(kCubicRoots)).substr(0, 2) == "3,");
  CHECK_THROWS_AS(poly_from_csv("3,1.0,2.0"), Error);      // field count
  CHECK_THROWS_AS(poly_from_csv("x,1.0,2.0,3.0"), Error);  // bad degree
  CHECK_THROWS_AS(poly_from_csv(""), Error);
}

TEST_CASE("double formatting round trips exactly") {
  for (double v : {0.1, -1.0 / 3.0, 1e-308, 1.7976931348623157e308, 0.0, -2.5e-17}) {
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK_THROWS_AS(parse_double("1.0x"), Error);
  CHECK_THROWS_AS(parse_double(""), Error);
  CHECK_THROWS_AS(parse_double("nan"), Error);
  CHECK_THROWS_AS(parse_double("inf"), Error);
}
