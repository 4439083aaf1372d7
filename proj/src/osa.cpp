#include "amcrn/osa.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "amcrn/errors.hpp"

namespace amcrn::osa {

namespace {

constexpr double kMinMeanSnr = 1e-6;
const double kLogFloor = std::log(1e-300);
const double kLogCeiling = std::log(1e6);

void require_scheme(const OsaScenario& scn, RateKind kind) {
  scn.validate();
  if (scn.scheme.kind() != kind) {
    throw DomainError(kind == RateKind::kContinuous ? "continuous-rate scheme required"
                                                    : "discrete-rate scheme required");
  }
}

detail::LogCutoffSearch initial_search(const OsaScenario& scn) {
  return {std::log(1e-9), std::log(10.0 * scn.channel.mean() * scn.scheme.gap()), kLogFloor,
          kLogCeiling, false};
}

}  // namespace

void OsaScenario::validate() const {
  if (users < 1) throw DomainError("users must be at least 1");
  if (!(channel.mean() > kMinMeanSnr)) {
    throw DomainError("mean SNR must exceed 1e-6 (linear)");
  }
}

double expected_power_cr(const OsaScenario& scn, double cutoff, const numerics::Tolerance& tol) {
  const double k = scn.scheme.gap();
  const auto& ch = scn.channel;
  // 1/(K c) - 1/(K g) written as (g - c)/(K c g) to avoid cancellation.
  const auto integrand = [&](double g) { return (g - cutoff) / (k * cutoff * g) * ch.pdf(g); };
  return numerics::integrate_semi_infinite(integrand, cutoff, ch.mean(), tol);
}

CutoffSolution solve_cutoff_cr(const OsaScenario& scn) {
  require_scheme(scn, RateKind::kContinuous);
  const auto tol = detail::solve_quadrature_tolerance();
  return detail::solve_log_cutoff(
      [&](double log_c) { return expected_power_cr(scn, std::exp(log_c), tol) - 1.0; },
      initial_search(scn));
}

double power_policy_cr(double cutoff, double gap, double gamma) {
  if (!(gamma >= cutoff)) return 0.0;
  return (gamma - cutoff) / (gap * cutoff * gamma);
}

double ase_cr(const OsaScenario& scn, const CutoffSolution& sol, const numerics::Tolerance& tol) {
  const auto& ch = scn.channel;
  const double c = sol.cutoff;
  const auto integrand = [&](double g) { return std::log2(g / c) * ch.pdf(g); };
  return numerics::integrate_semi_infinite(integrand, c, ch.mean(), tol);
}

double expected_power_dr(const OsaScenario& scn, double gamma_star,
                         const numerics::Tolerance& tol) {
  const auto& ladder = scn.scheme.ladder();
  const double k = scn.scheme.gap();
  const auto& ch = scn.channel;
  const auto bounds = region_boundaries(ladder, gamma_star);
  double total = 0.0;
  for (std::size_t j = 1; j < ladder.regions(); ++j) {
    const double level = (ladder.sizes[j] - 1.0) / k;
    const auto integrand = [&](double g) { return level / g * ch.pdf(g); };
    const double lo = bounds[j - 1];
    const double hi = bounds[j];
    total += std::isinf(hi) ? numerics::integrate_semi_infinite(integrand, lo, ch.mean(), tol)
                            : numerics::integrate_interval(integrand, lo, hi, tol);
  }
  return total;
}

CutoffSolution solve_cutoff_dr(const OsaScenario& scn) {
  require_scheme(scn, RateKind::kDiscrete);
  const auto tol = detail::solve_quadrature_tolerance();
  return detail::solve_log_cutoff(
      [&](double log_c) { return expected_power_dr(scn, std::exp(log_c), tol) - 1.0; },
      initial_search(scn));
}

double power_policy_dr(const ConstellationLadder& ladder, double gamma_star, double gap,
                       double gamma) {
  const std::size_t j = region_index(ladder, gamma_star, gamma);
  if (j == 0) return 0.0;
  return (ladder.sizes[j] - 1.0) / (gap * gamma);
}

double ase_dr(const OsaScenario& scn, const CutoffSolution& sol) {
  const auto& ladder = scn.scheme.ladder();
  const auto bounds = region_boundaries(ladder, sol.cutoff);
  double total = 0.0;
  for (std::size_t j = 1; j < ladder.regions(); ++j) {
    const double upper = std::isinf(bounds[j]) ? 0.0 : scn.channel.ccdf(bounds[j]);
    total += std::log2(ladder.sizes[j]) * (scn.channel.ccdf(bounds[j - 1]) - upper);
  }
  return total;
}

ExtraRegionGain extra_region_gain(const OsaScenario& scn) {
  const auto sol = solve_cutoff_dr(scn);
  const auto& m = scn.scheme.ladder().sizes;
  const double k = scn.scheme.gap();
  const double mean = scn.channel.mean();
  const double g = sol.cutoff;
  const double m_new = 4.0 * m.back();

  // Expected power written as sum_j w_j E1(M_j gamma* / mean) / (K mean).
  std::vector<double> w(m.size(), 0.0);
  w[1] = 1.0;
  for (std::size_t j = 2; j < m.size(); ++j) w[j] = m[j] - m[j - 1];

  numerics::Tolerance tol;
  tol.rel_value = 1e-12;
  tol.abs_integral = 1e-300;
  // Integrate over the offset from a g so shifts below one ulp of g survive.
  const auto e1_drop = [&](double a, double delta) {
    const double t0 = a * g;
    return numerics::integrate_interval(
        [t0](double s) { return std::exp(-(t0 + s)) / (t0 + s); }, 0.0, a * delta, tol);
  };
  const double extra_coeff = (m_new - m.back()) / (k * mean);
  // Power change of the longer ladder at cutoff g + delta relative to the budget.
  const auto residual = [&](double delta) {
    double change = extra_coeff * numerics::expint_e1(m_new * (g + delta) / mean);
    for (std::size_t j = 1; j < m.size(); ++j) {
      change -= w[j] / (k * mean) * e1_drop(m[j] / mean, delta);
    }
    return change;
  };

  double slope = 0.0;
  for (std::size_t j = 1; j < m.size(); ++j) slope += w[j] / (k * mean) * std::exp(-m[j] * g / mean) / g;
  double hi = 2.0 * residual(0.0) / slope;
  while (residual(hi) > 0.0) hi *= 2.0;

  numerics::Tolerance root_tol;
  root_tol.abs_residual = 1e-300;
  root_tol.rel_value = 1e-13;
  root_tol.max_iterations = 300;
  const double delta = numerics::find_root(residual, {0.0, hi}, root_tol).x;

  // ASE = sum_j (b_j - b_{j-1}) ccdf(M_j gamma*), b_j = log2 M_j, b_0 = 0.
  double gain = (std::log2(m_new) - std::log2(m.back())) * scn.channel.ccdf(m_new * (g + delta));
  double previous_bits = 0.0;
  for (std::size_t j = 1; j < m.size(); ++j) {
    const double bits = std::log2(m[j]);
    gain += (bits - previous_bits) * scn.channel.ccdf(m[j] * g) * std::expm1(-m[j] * delta / mean);
    previous_bits = bits;
  }
  return {g, delta, gain};
}

double band_factor_gain(const OsaScenario& scn, const CutoffSolution& sol) {
  const auto& ch = scn.channel;
  numerics::Tolerance tol;
  tol.rel_value = 1e-12;
  tol.abs_integral = 1e-16;
  return numerics::integrate_interval([&](double g) { return ch.pdf(g); }, 0.0, sol.cutoff, tol);
}

double total_band_factor_gain(double delta, int users) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw DomainError("band factor gain must lie in [0, 1]");
  if (users < 1) throw DomainError("users must be at least 1");
  // Horner form of sum_{u=0}^{U-1} delta^u; exact U at delta = 1.
  double multiplier = 1.0;
  for (int u = 1; u < users; ++u) multiplier = 1.0 + delta * multiplier;
  return multiplier;
}

double total_band_factor_excess(double delta, int users) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw DomainError("band factor gain must lie in [0, 1]");
  if (users < 1) throw DomainError("users must be at least 1");
  double excess = 0.0;
  for (int u = 1; u < users; ++u) excess = delta * (1.0 + excess);
  return excess;
}

double sum_ase(double se_1, double delta, int users) {
  return se_1 * total_band_factor_gain(delta, users);
}

CutoffSolution solve_cutoff(const OsaScenario& scn) {
  return scn.scheme.is_discrete() ? solve_cutoff_dr(scn) : solve_cutoff_cr(scn);
}

double expected_power(const OsaScenario& scn, double cutoff, const numerics::Tolerance& tol) {
  return scn.scheme.is_discrete() ? expected_power_dr(scn, cutoff, tol)
                                  : expected_power_cr(scn, cutoff, tol);
}

double ase(const OsaScenario& scn, const CutoffSolution& sol) {
  return scn.scheme.is_discrete() ? ase_dr(scn, sol) : ase_cr(scn, sol);
}

double power_policy(const OsaScenario& scn, const CutoffSolution& sol, double gamma) {
  return scn.scheme.is_discrete()
             ? power_policy_dr(scn.scheme.ladder(), sol.cutoff, scn.scheme.gap(), gamma)
             : power_policy_cr(sol.cutoff, scn.scheme.gap(), gamma);
}

OsaReport analyze(const OsaScenario& scn) {
  OsaReport report;
  report.solution = solve_cutoff(scn);
  report.ase = ase(scn, report.solution);
  report.band_factor_gain = band_factor_gain(scn, report.solution);
  report.total_band_factor_gain = total_band_factor_gain(report.band_factor_gain, scn.users);
  report.sum_ase = report.ase * report.total_band_factor_gain;
  return report;
}

}  // namespace amcrn::osa
