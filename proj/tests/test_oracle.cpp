#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "polyflow/oracle.hpp"
#include "polyflow/rng.hpp"

using namespace polyflow;
using oracle::MonicPolynomial;

TEST_CASE("expansion from roots gives exact small-integer coefficients") {
  const MonicPolynomial p = oracle::expand_from_roots({1.0, 2.0, 3.0});
  REQUIRE(p.degree() == 3);
  CHECK(p.coeffs[0] == 1.0);
  CHECK(p.coeffs[1] == -6.0);
  CHECK(p.coeffs[2] == 11.0);
  CHECK(p.coeffs[3] == -6.0);
  CHECK(oracle::eval(p, 4.0) == doctest::Approx(6.0));
  CHECK(std::abs(oracle::eval(p, std::complex<double>(0.0, 1.0)) -
                 std::complex<double>(0.0, 10.0)) < 1e-12);
}

TEST_CASE("simultaneous iteration recovers separated real roots") {
  Rng rng(424242);
  for (int i = 0; i < 100; ++i) {
    const std::vector<double> roots =
        rng.separated_roots(rng.uniform_int(2, 8), -10.0, 10.0, 0.1);
    const std::vector<double> got =
        oracle::sorted_real_roots(oracle::expand_from_roots(roots));
    REQUIRE(got.size() == roots.size());
    for (size_t j = 0; j < roots.size(); ++j)
      CHECK(got[j] == doctest::Approx(roots[j]).epsilon(1e-9));
  }
}

TEST_CASE("complex pairs are classified and rejected") {
  const MonicPolynomial p{{1.0, 0.0, 1.0}};  // X^2 + 1
  const oracle::RootClassification cls = oracle::classify_roots(p, 1e-7, 0.0);
  CHECK_FALSE(cls.all_real_simple);
  CHECK(cls.max_imag == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(oracle::sorted_real_roots(p), Error);

  // a near-double root is real but fails the separation screen
  const MonicPolynomial dbl = oracle::expand_from_roots({2.0, 2.0 + 1e-8, 5.0});
  const oracle::RootClassification cls2 = oracle::classify_roots(dbl, 1e-7, 1e-7);
  CHECK_FALSE(cls2.all_real_simple);
}

TEST_CASE("finite differences hit known derivatives") {
  const auto f = [](double x) { return std::exp(x); };
  // double-precision evaluation noise balance: h ~ eps^(1/(order+2)),
  // attainable error ~ eps^(2/(order+2)) -- loose gates with ~50x margin
  const double tols[] = {1e-9, 1e-6, 1e-4, 1e-3, 2e-2, 1e-1};
  for (int order = 1; order <= 6; ++order) {
    const double h = std::pow(2.2e-16, 1.0 / (order + 2));
    CHECK(oracle::finite_diff(f, 0.0, order, h) == doctest::Approx(1.0).epsilon(tols[order - 1]));
  }
  // exact on a cubic: d2/dx2 (x^3) = 6x
  const auto g = [](double x) { return x * x * x; };
  CHECK(oracle::finite_diff(g, 2.0, 2, 1e-2) == doctest::Approx(12.0).epsilon(1e-9));
  CHECK_THROWS_AS(oracle::finite_diff(g, 0.0, 7, 1e-2), Error);
  CHECK_THROWS_AS(oracle::finite_diff(g, 0.0, 0, 1e-2), Error);
  CHECK_THROWS_AS(oracle::finite_diff(g, 0.0, 1, 0.0), Error);
}

TEST_CASE("long-double stencils are usable at tight steps") {
  const auto f = [](long double x) -> long double { return std::exp(x); };
  // the hint balances for long double: error ~ (1.1e-19)^(2/(order+2))
  const double tols[] = {1e-11, 1e-8, 1e-6, 1e-5};
  for (int order = 1; order <= 4; ++order) {
    const double h = oracle::fd_step_hint(order, 1.0);
    const double got = static_cast<double>(oracle::finite_diff_ld(f, 0.0L, order, h));
    CHECK(got == doctest::Approx(1.0).epsilon(tols[order - 1]));
  }
}
