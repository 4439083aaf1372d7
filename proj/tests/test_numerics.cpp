#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "amcrn/errors.hpp"
#include "amcrn/numerics.hpp"
#include "support/oracles.hpp"

using namespace amcrn;
using namespace amcrn::numerics;

TEST_CASE("gaussian_q matches the erfc oracle and its inverse round-trips") {
  for (double x : {-4.0, -1.3, 0.0, 0.25, 1.0, 2.5, 6.0}) {
    CHECK(gaussian_q(x) == doctest::Approx(oracle::q(x)).epsilon(1e-14));
  }
  CHECK(gaussian_q(0.0) == 0.5);
  for (double p : {1e-12, 1e-6, 0.01, 0.2, 0.5, 0.8, 0.999999}) {
    CHECK(gaussian_q(gaussian_q_inverse(p)) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK(gaussian_q_inverse(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(gaussian_q_inverse(0.0), DomainError);
  CHECK_THROWS_AS(gaussian_q_inverse(1.0), DomainError);
}

TEST_CASE("exponential integral against Boost across both branches") {
  for (double x : {1e-300, 1e-12, 1e-4, 0.1, 0.5, 0.999, 1.0, 1.001, 2.0, 10.0, 50.0, 700.0}) {
    CAPTURE(x);
    CHECK(expint_e1(x) == doctest::Approx(oracle::e1(x)).epsilon(1e-13));
  }
  for (double x : {1e-8, 0.3, 1.0, 3.0, 40.0}) {
    CAPTURE(x);
    CHECK(expint_e1_regular(x) == doctest::Approx(oracle::e1(x) + std::log(x)).epsilon(1e-12));
    CHECK(expint_e1_scaled(x) == doctest::Approx(std::exp(x) * oracle::e1(x)).epsilon(1e-13));
  }
  CHECK(expint_e1_regular(0.0) == doctest::Approx(-std::numbers::egamma).epsilon(1e-15));
  // Large-argument asymptote exp(x) E1(x) ~ 1/x.
  CHECK(expint_e1_scaled(1e8) == doctest::Approx(1e-8).epsilon(1e-7));
  CHECK_THROWS_AS(expint_e1(0.0), DomainError);
  CHECK_THROWS_AS(expint_e1(-1.0), DomainError);
}

TEST_CASE("adaptive quadrature on smooth, singular and oscillatory integrands") {
  Tolerance tol;
  tol.rel_value = 1e-12;
  CHECK(integrate_interval([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, tol) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate_interval([](double x) { return std::sqrt(x); }, 0.0, 1.0, tol) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-11));
  CHECK(integrate_interval([](double x) { return std::log(x); }, 0.0, 1.0, tol) ==
        doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(integrate_interval([](double x) { return std::cos(40.0 * x); }, 0.0, 1.0, tol) ==
        doctest::Approx(std::sin(40.0) / 40.0).epsilon(1e-11));
  CHECK(integrate_interval([](double) { return 1.0; }, 3.0, 3.0) == 0.0);
  CHECK_THROWS_AS(integrate_interval([](double) { return 1.0; }, 1.0, 0.0), DomainError);
}

TEST_CASE("semi-infinite quadrature, truncation and substitution agree") {
  const auto f = [](double x) { return x * x * std::exp(-x / 3.0) / 3.0; };  // mean 18
  for (auto method : {SemiInfiniteMethod::kTruncation, SemiInfiniteMethod::kSubstitution}) {
    CHECK(integrate_semi_infinite(f, 0.0, 3.0, {}, method) == doctest::Approx(18.0).epsilon(1e-9));
  }
  const auto g = [](double x) { return std::exp(-x) / x; };
  CHECK(integrate_semi_infinite(g, 0.7, 1.0, {}, SemiInfiniteMethod::kSubstitution) ==
        doctest::Approx(oracle::e1(0.7)).epsilon(1e-9));
  CHECK_THROWS_AS(integrate_semi_infinite(g, 1.0, 0.0), DomainError);
}

TEST_CASE("quadrature reports failure instead of returning garbage") {
  Tolerance tight;
  tight.rel_value = 1e-15;
  tight.abs_integral = 1e-300;
  tight.max_iterations = 3;
  CHECK_THROWS_AS(
      integrate_interval([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, tight),
      NonConvergence);
  CHECK_THROWS_AS(integrate_interval([](double x) { return 1.0 / x; }, 0.0, 1.0), NonConvergence);
}

TEST_CASE("Brent and bisection find the same root") {
  const auto f = [](double x) { return std::cos(x) - x; };
  const double expected = 0.7390851332151607;
  Tolerance tol;
  tol.abs_residual = 1e-14;
  tol.rel_value = 1e-14;
  const auto brent = find_root(f, {0.0, 1.0}, tol, RootMethod::kBrent);
  const auto bisect = find_root(f, {0.0, 1.0}, tol, RootMethod::kBisection);
  CHECK(brent.x == doctest::Approx(expected).epsilon(1e-13));
  CHECK(bisect.x == doctest::Approx(expected).epsilon(1e-13));
  CHECK(brent.iterations < bisect.iterations);
  CHECK(std::abs(brent.fx) < 1e-13);
}

TEST_CASE("root finder errors") {
  const auto f = [](double x) { return x * x + 1.0; };
  CHECK_THROWS_AS(find_root(f, {-1.0, 1.0}), NoSignChange);
  CHECK_THROWS_AS(find_root(f, {1.0, -1.0}), DomainError);
  Tolerance few;
  few.max_iterations = 2;
  few.abs_residual = 1e-300;
  few.rel_value = 1e-16;
  CHECK_THROWS_AS(find_root([](double x) { return x - 0.3; }, {0.0, 1.0}, few,
                            RootMethod::kBisection),
                  NonConvergence);
  Tolerance bad;
  bad.rel_value = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  // Exact root at a bracket end.
  CHECK(find_root([](double x) { return x; }, {0.0, 1.0}).x == 0.0);
}
