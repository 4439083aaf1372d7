#include "amcrn/spectrum_sharing.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "amcrn/errors.hpp"

namespace amcrn::ss {

namespace {

constexpr double kMinMeanSnr = 1e-6;
const double kLogFloorDr = std::log(1e-300);
constexpr double kLogFloorCr = -1e5;
const double kLogCeiling = std::log(1e6);

// -expm1(-x)/x, continuous at 0.
double one_minus_exp_over_x(double x) { return x == 0.0 ? 1.0 : -std::expm1(-x) / x; }

void require_scheme(const SsScenario& scn, RateKind kind) {
  scn.validate();
  if (scn.scheme.kind() != kind) {
    throw DomainError(kind == RateKind::kContinuous ? "continuous-rate scheme required"
                                                    : "discrete-rate scheme required");
  }
}

amcrn::detail::LogCutoffSearch initial_search(const SsScenario& scn, double log_floor, bool slack) {
  return {std::log(1e-9), std::log(10.0 * scn.link_ss.mean() * scn.scheme.gap()), log_floor,
          kLogCeiling, slack};
}

// Integrates h over gamma_ss > cutoff / K for a continuous-rate cutoff.
double integrate_cr_active(const RayleighChannel& ch, double gap, double log_cutoff,
                           const numerics::RealFunction& h, const numerics::Tolerance& tol) {
  const double lower = std::exp(log_cutoff) / gap;
  return numerics::integrate_semi_infinite([&](double g) { return h(g) * ch.pdf(g); }, lower,
                                           ch.mean(), tol);
}

}  // namespace

void SsScenario::validate() const {
  if (!(i_pk > 0.0)) throw DomainError("peak interference i_pk must be positive");
  if (!(link_ss.mean() > kMinMeanSnr)) {
    throw DomainError("secondary mean SNR must exceed 1e-6 (linear)");
  }
}

namespace detail {

Conditional cr_conditional(double gap, double i_pk, double mean_sp, double log_cutoff,
                           double gamma_ss) {
  const double log_kg = std::log(gap * gamma_ss);
  if (!(log_kg > log_cutoff)) return {};
  // c / (K gamma_ss) in (0, 1); water level wf = (1 - r) / c.
  const double r = std::exp(log_cutoff - log_kg);
  const double log1m_r = std::log1p(-r);
  const double log_wf = -log_cutoff + log1m_r;
  const double scale = i_pk / mean_sp;
  // x = theta / mean_sp, theta = i_pk / wf the truncation threshold on gamma_sp.
  const double log_x = std::log(scale) - log_wf;
  const double untruncated_ln_rate = log_kg - log_cutoff;

  Conditional out;
  if (log_x > std::log(700.0)) {
    out.power = std::exp(log_wf);
    out.rate_bits = untruncated_ln_rate / std::numbers::ln2;
    out.truncation = 0.0;
    return out;
  }
  const double x = std::exp(log_x);
  const double z = x + gap * gamma_ss * scale;
  const double tail = std::exp(-x) * numerics::expint_e1_scaled(z);
  if (log_x > 0.0) {
    const double wf = std::exp(log_wf);
    out.power = wf * -std::expm1(-x) + scale * numerics::expint_e1(x);
    out.rate_bits = (untruncated_ln_rate - numerics::expint_e1(x) + tail) / std::numbers::ln2;
  } else {
    // E1(x) = g(x) - ln x with g regular; keeps the small-x limit exact.
    const double g = numerics::expint_e1_regular(x);
    out.power = scale * (one_minus_exp_over_x(x) + g - log_x);
    const double ln_rate_plus_log_x = std::log(gap * gamma_ss * scale) - log1m_r;
    out.rate_bits = (ln_rate_plus_log_x - g + tail) / std::numbers::ln2;
  }
  out.truncation = std::exp(-x);
  return out;
}

Conditional dr_conditional(const ConstellationLadder& ladder, double gap, double i_pk,
                           double mean_sp, std::size_t region, double gamma_ss,
                           DrRateAccounting accounting) {
  if (region == 0) return {};
  const auto& m = ladder.sizes;
  const double scale = i_pk / mean_sp;
  // x_i = theta_i / mean_sp with theta_i = i_pk K gamma_ss / (M_i - 1).
  const auto x_of = [&](std::size_t i) { return scale * gap * gamma_ss / (m[i] - 1.0); };
  const double level = (m[region] - 1.0) / (gap * gamma_ss);
  const double xj = x_of(region);

  Conditional out;
  out.power = level * -std::expm1(-xj) + scale * numerics::expint_e1(xj);
  out.truncation = std::exp(-xj);
  if (accounting == DrRateAccounting::kNominal) {
    out.rate_bits = std::log2(m[region]);
    return out;
  }
  double rate = std::log2(m[region]) * -std::expm1(-xj);
  for (std::size_t i = region - 1; i >= 1; --i) {
    rate += std::log2(m[i]) * (std::exp(-x_of(i + 1)) - std::exp(-x_of(i)));
  }
  out.rate_bits = rate;
  return out;
}

double integrate_dr_regions(const RayleighChannel& ch, const ConstellationLadder& ladder,
                            double gamma_star,
                            const std::function<double(std::size_t, double)>& h,
                            const numerics::Tolerance& tol) {
  const auto bounds = region_boundaries(ladder, gamma_star);
  double total = 0.0;
  for (std::size_t j = 1; j < ladder.regions(); ++j) {
    const auto integrand = [&](double g) { return h(j, g) * ch.pdf(g); };
    const double lo = bounds[j - 1];
    const double hi = bounds[j];
    total += std::isinf(hi) ? numerics::integrate_semi_infinite(integrand, lo, ch.mean(), tol)
                            : numerics::integrate_interval(integrand, lo, hi, tol);
  }
  return total;
}

}  // namespace detail

// Continuous rate -----------------------------------------------------------

double power_policy_ss_cr_log(const SsScenario& scn, double log_cutoff, double gamma_ss,
                              double gamma_sp) {
  const double gap = scn.scheme.gap();
  const double log_kg = std::log(gap * gamma_ss);
  if (!(log_kg > log_cutoff)) return 0.0;
  const double wf = std::exp(-log_cutoff + std::log1p(-std::exp(log_cutoff - log_kg)));
  const double threshold = scn.i_pk / wf;
  return gamma_sp < threshold ? wf : scn.i_pk / gamma_sp;
}

double power_policy_ss_cr(const SsScenario& scn, double cutoff, double gamma_ss,
                          double gamma_sp) {
  return power_policy_ss_cr_log(scn, std::log(cutoff), gamma_ss, gamma_sp);
}

double expected_power_ss_cr(const SsScenario& scn, double log_cutoff,
                            const numerics::Tolerance& tol) {
  const double gap = scn.scheme.gap();
  const double mean_sp = scn.link_sp.mean();
  return integrate_cr_active(
      scn.link_ss, gap, log_cutoff,
      [&](double g) {
        return detail::cr_conditional(gap, scn.i_pk, mean_sp, log_cutoff, g).power;
      },
      tol);
}

CutoffSolution solve_cutoff_ss_cr(const SsScenario& scn) {
  require_scheme(scn, RateKind::kContinuous);
  const auto tol = amcrn::detail::solve_quadrature_tolerance();
  return amcrn::detail::solve_log_cutoff(
      [&](double log_c) { return expected_power_ss_cr(scn, log_c, tol) - 1.0; },
      initial_search(scn, kLogFloorCr, false));
}

double ase_ss_cr(const SsScenario& scn, const CutoffSolution& sol,
                 const numerics::Tolerance& tol) {
  const double gap = scn.scheme.gap();
  const double mean_sp = scn.link_sp.mean();
  return integrate_cr_active(
      scn.link_ss, gap, sol.log_cutoff,
      [&](double g) {
        return detail::cr_conditional(gap, scn.i_pk, mean_sp, sol.log_cutoff, g).rate_bits;
      },
      tol);
}

// Discrete rate --------------------------------------------------------------

double power_policy_ss_dr(const SsScenario& scn, double gamma_star, double gamma_ss,
                          double gamma_sp) {
  const auto& ladder = scn.scheme.ladder();
  const std::size_t j = region_index(ladder, gamma_star, gamma_ss);
  if (j == 0) return 0.0;
  const double level = (ladder.sizes[j] - 1.0) / (scn.scheme.gap() * gamma_ss);
  const double threshold = scn.i_pk / level;
  return gamma_sp < threshold ? level : scn.i_pk / gamma_sp;
}

double expected_power_ss_dr(const SsScenario& scn, double gamma_star,
                            const numerics::Tolerance& tol) {
  const auto& ladder = scn.scheme.ladder();
  const double gap = scn.scheme.gap();
  const double mean_sp = scn.link_sp.mean();
  return detail::integrate_dr_regions(
      scn.link_ss, ladder, gamma_star,
      [&](std::size_t j, double g) {
        return detail::dr_conditional(ladder, gap, scn.i_pk, mean_sp, j, g, scn.dr_rate).power;
      },
      tol);
}

CutoffSolution solve_cutoff_ss_dr(const SsScenario& scn) {
  require_scheme(scn, RateKind::kDiscrete);
  const auto tol = amcrn::detail::solve_quadrature_tolerance();
  return amcrn::detail::solve_log_cutoff(
      [&](double log_c) { return expected_power_ss_dr(scn, std::exp(log_c), tol) - 1.0; },
      initial_search(scn, kLogFloorDr, true));
}

double ase_ss_dr(const SsScenario& scn, const CutoffSolution& sol,
                 const numerics::Tolerance& tol) {
  const auto& ladder = scn.scheme.ladder();
  if (scn.dr_rate == DrRateAccounting::kNominal) {
    const auto bounds = region_boundaries(ladder, sol.cutoff);
    double total = 0.0;
    for (std::size_t j = 1; j < ladder.regions(); ++j) {
      const double upper = std::isinf(bounds[j]) ? 0.0 : scn.link_ss.ccdf(bounds[j]);
      total += std::log2(ladder.sizes[j]) * (scn.link_ss.ccdf(bounds[j - 1]) - upper);
    }
    return total;
  }
  const double gap = scn.scheme.gap();
  const double mean_sp = scn.link_sp.mean();
  return detail::integrate_dr_regions(
      scn.link_ss, ladder, sol.cutoff,
      [&](std::size_t j, double g) {
        return detail::dr_conditional(ladder, gap, scn.i_pk, mean_sp, j, g, scn.dr_rate)
            .rate_bits;
      },
      tol);
}

// Either scheme ----------------------------------------------------------------

CutoffSolution solve_cutoff(const SsScenario& scn) {
  return scn.scheme.is_discrete() ? solve_cutoff_ss_dr(scn) : solve_cutoff_ss_cr(scn);
}

double expected_power(const SsScenario& scn, const CutoffSolution& sol,
                      const numerics::Tolerance& tol) {
  return scn.scheme.is_discrete() ? expected_power_ss_dr(scn, sol.cutoff, tol)
                                  : expected_power_ss_cr(scn, sol.log_cutoff, tol);
}

double ase(const SsScenario& scn, const CutoffSolution& sol, const numerics::Tolerance& tol) {
  return scn.scheme.is_discrete() ? ase_ss_dr(scn, sol, tol) : ase_ss_cr(scn, sol, tol);
}

double power_policy(const SsScenario& scn, const CutoffSolution& sol, double gamma_ss,
                    double gamma_sp) {
  return scn.scheme.is_discrete() ? power_policy_ss_dr(scn, sol.cutoff, gamma_ss, gamma_sp)
                                  : power_policy_ss_cr_log(scn, sol.log_cutoff, gamma_ss, gamma_sp);
}

double truncated_fraction(const SsScenario& scn, const CutoffSolution& sol,
                          const numerics::Tolerance& tol) {
  const double gap = scn.scheme.gap();
  const double mean_sp = scn.link_sp.mean();
  if (scn.scheme.is_discrete()) {
    const auto& ladder = scn.scheme.ladder();
    const double active = scn.link_ss.ccdf(sol.cutoff * ladder.sizes[1]);
    if (active <= 0.0) return 0.0;
    const double truncated = detail::integrate_dr_regions(
        scn.link_ss, ladder, sol.cutoff,
        [&](std::size_t j, double g) {
          return detail::dr_conditional(ladder, gap, scn.i_pk, mean_sp, j, g, scn.dr_rate)
              .truncation;
        },
        tol);
    return truncated / active;
  }
  const double active = scn.link_ss.ccdf(std::exp(sol.log_cutoff) / gap);
  if (active <= 0.0) return 0.0;
  const double truncated = integrate_cr_active(
      scn.link_ss, gap, sol.log_cutoff,
      [&](double g) {
        return detail::cr_conditional(gap, scn.i_pk, mean_sp, sol.log_cutoff, g).truncation;
      },
      tol);
  return truncated / active;
}

double instantaneous_rate(const SsScenario& scn, const CutoffSolution& sol, double gamma_ss,
                          double gamma_sp) {
  const double gap = scn.scheme.gap();
  if (!scn.scheme.is_discrete()) {
    const double log_kg = std::log(gap * gamma_ss);
    if (!(log_kg > sol.log_cutoff)) return 0.0;
    const double wf = std::exp(-sol.log_cutoff + std::log1p(-std::exp(sol.log_cutoff - log_kg)));
    if (gamma_sp < scn.i_pk / wf) return (log_kg - sol.log_cutoff) / std::numbers::ln2;
    return std::log2(1.0 + gap * gamma_ss * scn.i_pk / gamma_sp);
  }
  const auto& m = scn.scheme.ladder().sizes;
  const std::size_t j = region_index(scn.scheme.ladder(), sol.cutoff, gamma_ss);
  if (j == 0) return 0.0;
  if (scn.dr_rate == DrRateAccounting::kNominal) return std::log2(m[j]);
  // Highest constellation i <= j whose channel-inversion power fits under the cap.
  for (std::size_t i = j; i >= 1; --i) {
    const double threshold = scn.i_pk * gap * gamma_ss / (m[i] - 1.0);
    if (gamma_sp < threshold) return std::log2(m[i]);
  }
  return 0.0;
}

double conditional_power(const SsScenario& scn, const CutoffSolution& sol, double gamma_ss) {
  const double gap = scn.scheme.gap();
  if (!scn.scheme.is_discrete()) {
    return detail::cr_conditional(gap, scn.i_pk, scn.link_sp.mean(), sol.log_cutoff, gamma_ss)
        .power;
  }
  const auto& ladder = scn.scheme.ladder();
  const std::size_t j = region_index(ladder, sol.cutoff, gamma_ss);
  return detail::dr_conditional(ladder, gap, scn.i_pk, scn.link_sp.mean(), j, gamma_ss,
                                scn.dr_rate)
      .power;
}

SsReport analyze(const SsScenario& scn) {
  SsReport report;
  report.solution = solve_cutoff(scn);
  report.ase = ase(scn, report.solution);
  report.expected_power = expected_power(scn, report.solution);
  report.truncated_fraction = truncated_fraction(scn, report.solution);
  return report;
}

}  // namespace amcrn::ss
