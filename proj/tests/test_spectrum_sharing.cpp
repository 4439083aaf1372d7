#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "amcrn/channel.hpp"
#include "amcrn/errors.hpp"
#include "amcrn/osa.hpp"
#include "amcrn/spectrum_sharing.hpp"
#include "support/oracles.hpp"

using namespace amcrn;
using namespace amcrn::ss;

namespace {

double lin(double db) { return std::pow(10.0, db / 10.0); }

SsScenario make(double db, double sp_db, double i_db, int regions = 0, double ber = 1e-3,
                DrRateAccounting acc = DrRateAccounting::kTruncationAware) {
  const BerTarget target(ber);
  return {RayleighChannel(lin(db)), RayleighChannel(lin(sp_db)), lin(i_db),
          regions == 0 ? ModulationScheme::continuous(target)
                       : ModulationScheme::discrete(dr_ladder(regions), target),
          acc};
}

// E over gamma_sp of h(P(gamma_ss, gamma_sp), gamma_sp), by quadrature split at the
// truncation threshold(s).
template <typename Policy, typename H>
double inner(const SsScenario& scn, Policy policy, H h, std::vector<double> breaks) {
  const double b = scn.link_sp.mean();
  std::sort(breaks.begin(), breaks.end());
  return oracle::integrate_split(
      [&](double y) { return h(policy(y), y) * std::exp(-y / b) / b; }, breaks);
}

double cr_threshold(const SsScenario& scn, double log_c, double g) {
  const double k = scn.scheme.gap();
  const double wf = std::exp(-log_c) - 1.0 / (k * g);
  return scn.i_pk / wf;
}

}  // namespace

TEST_CASE("continuous-rate conditional expectations against quadrature over gamma_sp") {
  // Each case lands on one side of x = theta / mean_sp = 1.
  struct Case {
    double i_db, sp_db, log_c, g;
  };
  for (const Case& c : {Case{0, 0, -1.0, 3.0}, Case{10, 0, -2.0, 20.0}, Case{0, 10, -1.5, 1.2},
                        Case{-10, 5, -0.5, 50.0}, Case{0, 20, -6.0, 0.02}}) {
    CAPTURE(c.i_db);
    CAPTURE(c.log_c);
    const auto scn = make(10.0, c.sp_db, c.i_db);
    const double k = scn.scheme.gap();
    const auto got = ss::detail::cr_conditional(k, scn.i_pk, scn.link_sp.mean(), c.log_c, c.g);
    const double theta = cr_threshold(scn, c.log_c, c.g);
    const auto policy = [&](double y) { return power_policy_ss_cr_log(scn, c.log_c, c.g, y); };
    const double power = inner(scn, policy, [](double p, double) { return p; }, {theta});
    const double rate = inner(
        scn, policy, [&](double p, double) { return std::log2(1.0 + k * c.g * p); }, {theta});
    CHECK(got.power == doctest::Approx(power).epsilon(1e-9));
    CHECK(got.rate_bits == doctest::Approx(rate).epsilon(1e-9));
    CHECK(got.truncation == doctest::Approx(std::exp(-theta / scn.link_sp.mean())).epsilon(1e-12));
  }
}

TEST_CASE("continuous-rate conditional survives an underflowing cutoff") {
  const auto scn = make(30.0, 30.0, 0.0);
  const double k = scn.scheme.gap();
  // log c = -2000: c is not representable, every transmission is capped.
  const auto got = ss::detail::cr_conditional(k, scn.i_pk, scn.link_sp.mean(), -2000.0, 500.0);
  const double b = scn.link_sp.mean();
  const double z = k * 500.0 * scn.i_pk / b;
  CHECK(std::isfinite(got.power));
  CHECK(got.truncation == doctest::Approx(1.0));
  // All-capped limit, y ~ Exp(b): E[ln(1 + a / y)] = ln z + Euler gamma + e^z E1(z), z = a / b.
  const double capped = std::log(z) + std::numbers::egamma + std::exp(z) * oracle::e1(z);
  CHECK(got.rate_bits == doctest::Approx(capped / std::log(2.0)).epsilon(1e-9));
  CHECK(ss::detail::cr_conditional(k, scn.i_pk, b, -2000.0, 0.0).power == 0.0);
}

TEST_CASE("discrete-rate conditional expectations against quadrature") {
  for (auto acc : {DrRateAccounting::kTruncationAware, DrRateAccounting::kNominal}) {
    for (double g : {0.3, 2.0, 9.0, 60.0}) {
      CAPTURE(g);
      const auto scn = make(10.0, 0.0, 0.0, 5, 1e-3, acc);
      const auto& ladder = scn.scheme.ladder();
      const double k = scn.scheme.gap();
      const double gamma_star = 0.02;
      const auto j = region_index(ladder, gamma_star, g);
      REQUIRE(j >= 1);
      const auto got = ss::detail::dr_conditional(ladder, k, scn.i_pk, scn.link_sp.mean(), j, g, acc);
      std::vector<double> breaks;
      for (std::size_t i = 1; i < ladder.regions(); ++i) {
        breaks.push_back(scn.i_pk * k * g / (ladder.sizes[i] - 1.0));
      }
      const auto policy = [&](double y) { return power_policy_ss_dr(scn, gamma_star, g, y); };
      const double power = inner(scn, policy, [](double p, double) { return p; }, breaks);
      const double rate = inner(
          scn, policy,
          [&](double p, double) {
            return acc == DrRateAccounting::kNominal ? std::log2(ladder.sizes[j])
                                                     : oracle::supported_bits(ladder.sizes, k, g, p);
          },
          breaks);
      CHECK(got.power == doctest::Approx(power).epsilon(1e-9));
      CHECK(got.rate_bits == doctest::Approx(rate).epsilon(1e-9));
    }
  }
}

TEST_CASE("solved continuous-rate cutoff meets the budget, checked by nested quadrature") {
  for (double i_db : {0.0, 10.0}) {
    for (double db : {0.0, 5.0, 10.0}) {
      CAPTURE(i_db);
      CAPTURE(db);
      const auto scn = make(db, 0.0, i_db);
      const auto sol = solve_cutoff_ss_cr(scn);
      CHECK(sol.binding);
      CHECK(std::abs(expected_power(scn, sol) - 1.0) < 1e-7);
      const double k = scn.scheme.gap();
      const double a = scn.link_ss.mean();
      const auto outer = [&](auto h) {
        return oracle::integrate_tail(
            [&](double g) {
              const auto policy = [&](double y) {
                return power_policy_ss_cr_log(scn, sol.log_cutoff, g, y);
              };
              return inner(scn, policy, h(g), {cr_threshold(scn, sol.log_cutoff, g)}) *
                     std::exp(-g / a) / a;
            },
            sol.cutoff / k);
      };
      const double power = outer([](double) { return [](double p, double) { return p; }; });
      const double rate = outer([&](double g) {
        return [&, g](double p, double) { return std::log2(1.0 + k * g * p); };
      });
      CHECK(std::abs(power - 1.0) < 1e-6);
      CHECK(ase(scn, sol) == doctest::Approx(rate).epsilon(1e-7));
    }
  }
}

TEST_CASE("a very loose cap reduces to the opportunistic water-filling") {
  for (double db : {0.0, 10.0}) {
    const auto scn = make(db, 0.0, 120.0);
    const osa::OsaScenario o{scn.link_ss, scn.scheme, 1};
    const auto sol = solve_cutoff(scn);
    const auto osa_sol = osa::solve_cutoff(o);
    CHECK(sol.cutoff == doctest::Approx(scn.scheme.gap() * osa_sol.cutoff).epsilon(1e-8));
    CHECK(ase(scn, sol) == doctest::Approx(osa::ase(o, osa_sol)).epsilon(1e-8));
    CHECK(truncated_fraction(scn, sol) < 1e-6);

    const auto dscn = make(db, 0.0, 120.0, 4);
    const osa::OsaScenario dosa{dscn.link_ss, dscn.scheme, 1};
    const auto dsol = solve_cutoff(dscn);
    const auto dosa_sol = osa::solve_cutoff(dosa);
    CHECK(dsol.cutoff == doctest::Approx(dosa_sol.cutoff).epsilon(1e-8));
    CHECK(ase(dscn, dsol) == doctest::Approx(osa::ase(dosa, dosa_sol)).epsilon(1e-8));
  }
}

TEST_CASE("interference cap holds for every sampled pair") {
  for (int regions : {0, 3, 5}) {
    const auto scn = make(15.0, 15.0, 0.0, regions);
    const auto sol = solve_cutoff(scn);
    UniformStream u(11);
    for (int i = 0; i < 200000; ++i) {
      const double g_ss = scn.link_ss.quantile(u.next());
      const double g_sp = scn.link_sp.quantile(u.next());
      const double p = power_policy(scn, sol, g_ss, g_sp);
      REQUIRE(p >= 0.0);
      REQUIRE(g_sp * p <= scn.i_pk + 1e-12);
    }
  }
}

TEST_CASE("policy branches") {
  const auto scn = make(5.0, 0.0, 0.0);
  const auto sol = solve_cutoff(scn);
  const double k = scn.scheme.gap();
  const double g = 10.0;
  const double wf = 1.0 / sol.cutoff - 1.0 / (k * g);
  CHECK(power_policy(scn, sol, 0.5 * sol.cutoff / k, 1e-9) == 0.0);
  CHECK(power_policy(scn, sol, g, 1e-9) == doctest::Approx(wf).epsilon(1e-12));
  const double y = 2.0 * scn.i_pk / wf;
  CHECK(power_policy(scn, sol, g, y) == doctest::Approx(scn.i_pk / y));
  CHECK(power_policy_ss_cr(scn, sol.cutoff, g, y) == power_policy(scn, sol, g, y));
}

TEST_CASE("interference-limited plateau under a tracking interference link") {
  for (double i_db : {0.0, 10.0}) {
    double previous = 0.0;
    for (double db = i_db + 10.0; db <= 40.0; db += 1.0) {
      const auto scn = make(db, db, i_db);
      const auto sol = solve_cutoff(scn);
      const double se = ase(scn, sol);
      CHECK(std::isfinite(se));
      if (previous > 0.0) CHECK(std::abs(se - previous) < 0.02);
      previous = se;
    }
  }
  // Deep in the plateau the cutoff is far below the smallest double.
  const auto deep = make(40.0, 40.0, 0.0);
  const auto sol = solve_cutoff(deep);
  CHECK(sol.log_cutoff < -800.0);
  CHECK(sol.cutoff == 0.0);
  CHECK(std::abs(expected_power(deep, sol) - 1.0) < 1e-7);
}

TEST_CASE("discrete-rate sharing can leave the budget unused") {
  const auto scn = make(30.0, 30.0, 0.0, 5);
  const auto sol = solve_cutoff(scn);
  CHECK_FALSE(sol.binding);
  CHECK(sol.residual < 0.0);
  CHECK(expected_power(scn, sol) < 1.0);
  CHECK(ase(scn, sol) > 0.0);

  const auto loose = make(5.0, 0.0, 10.0, 5);
  const auto loose_sol = solve_cutoff(loose);
  CHECK(loose_sol.binding);
  CHECK(std::abs(expected_power(loose, loose_sol) - 1.0) < 1e-7);
}

TEST_CASE("rate accounting and orderings") {
  for (double db : {0.0, 10.0, 20.0}) {
    CAPTURE(db);
    const auto aware = make(db, db, 0.0, 5);
    const auto nominal = make(db, db, 0.0, 5, 1e-3, DrRateAccounting::kNominal);
    const auto sa = solve_cutoff(aware);
    const auto sn = solve_cutoff(nominal);
    CHECK(sa.cutoff == sn.cutoff);
    CHECK(ase(nominal, sn) >= ase(aware, sa));

    const auto cr0 = make(db, db, 0.0);
    const auto cr10 = make(db, db, 10.0);
    CHECK(ase(cr10, solve_cutoff(cr10)) >= ase(cr0, solve_cutoff(cr0)));
    CHECK(ase(cr0, solve_cutoff(cr0)) >= ase(aware, sa));
  }
}

TEST_CASE("scenario validation") {
  auto scn = make(5.0, 0.0, 0.0);
  scn.i_pk = 0.0;
  CHECK_THROWS_AS(solve_cutoff(scn), DomainError);
  CHECK_THROWS_AS(solve_cutoff_ss_dr(make(5.0, 0.0, 0.0)), DomainError);
  CHECK_THROWS_AS(solve_cutoff_ss_cr(make(5.0, 0.0, 0.0, 3)), DomainError);
}
