#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "amcrn/channel.hpp"
#include "amcrn/errors.hpp"
#include "support/oracles.hpp"

using namespace amcrn;

TEST_CASE("Rayleigh SNR law") {
  const RayleighChannel ch(4.0);
  CHECK(ch.mean() == 4.0);
  CHECK(ch.pdf(0.0) == doctest::Approx(0.25));
  CHECK(ch.cdf(0.0) == 0.0);
  CHECK(ch.ccdf(0.0) == 1.0);
  for (double g : {1e-9, 0.5, 4.0, 40.0}) {
    CAPTURE(g);
    CHECK(ch.cdf(g) + ch.ccdf(g) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ch.cdf(g) == doctest::Approx(oracle::integrate([&](double x) { return ch.pdf(x); }, 0.0, g))
                           .epsilon(1e-12));
    CHECK(ch.quantile(ch.cdf(g)) == doctest::Approx(g).epsilon(1e-12));
  }
  // Tiny arguments keep relative accuracy.
  CHECK(ch.cdf(1e-20) == doctest::Approx(0.25e-20).epsilon(1e-14));
  CHECK(oracle::integrate_tail([&](double x) { return x * ch.pdf(x); }, 0.0) ==
        doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("Rayleigh domain errors") {
  CHECK_THROWS_AS(RayleighChannel(0.0), DomainError);
  CHECK_THROWS_AS(RayleighChannel(-1.0), DomainError);
  CHECK_THROWS_AS(RayleighChannel{INFINITY}, DomainError);
  const RayleighChannel ch(1.0);
  CHECK_THROWS_AS(ch.pdf(-1e-12), DomainError);
  CHECK_THROWS_AS(ch.cdf(NAN), DomainError);
  CHECK_THROWS_AS(ch.quantile(1.0), DomainError);
}

TEST_CASE("sample stream is reproducible and has the right mean") {
  ChannelSampleStream a(RayleighChannel(2.0), 42);
  ChannelSampleStream b(RayleighChannel(2.0), 42);
  ChannelSampleStream c(RayleighChannel(2.0), 43);
  const auto xa = a.sample(200000);
  const auto xb = b.sample(200000);
  CHECK(xa == xb);
  CHECK(c.next() != xa.front());
  const double mean = std::accumulate(xa.begin(), xa.end(), 0.0) / xa.size();
  // Standard error of the mean is 2 / sqrt(2e5) ~ 0.0045.
  CHECK(std::abs(mean - 2.0) < 4 * 0.0045);
  CHECK_THROWS_AS(a.sample(0), DomainError);
}

TEST_CASE("uniform stream stays strictly inside (0, 1)") {
  UniformStream u(7);
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double x = u.next();
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
}
