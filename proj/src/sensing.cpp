#include "amcrn/sensing.hpp"

#include <cmath>
#include <numbers>

#include "amcrn/errors.hpp"
#include "amcrn/modulation.hpp"
#include "amcrn/osa.hpp"

namespace amcrn::sensing {

namespace {

const double kLogFloorDr = std::log(1e-300);
constexpr double kLogFloorCr = -1e5;
const double kLogCeiling = std::log(1e6);

// Water level 1/c - 1/(K g) for K g > c, computed from ln c.
double water_level(double gap, double log_cutoff, double gamma) {
  const double log_kg = std::log(gap * gamma);
  if (!(log_kg > log_cutoff)) return 0.0;
  return std::exp(-log_cutoff + std::log1p(-std::exp(log_cutoff - log_kg)));
}

double integrate_cr_active(const RayleighChannel& ch, double gap, double log_cutoff,
                           const numerics::RealFunction& h, const numerics::Tolerance& tol) {
  const double lower = std::exp(log_cutoff) / gap;
  return numerics::integrate_semi_infinite([&](double g) { return h(g) * ch.pdf(g); }, lower,
                                           ch.mean(), tol);
}

double idle_power_cr(const ss::SsScenario& scn, double log_cutoff,
                     const numerics::Tolerance& tol) {
  const double gap = scn.scheme.gap();
  return integrate_cr_active(
      scn.link_ss, gap, log_cutoff, [&](double g) { return water_level(gap, log_cutoff, g); },
      tol);
}

double idle_power_dr(const ss::SsScenario& scn, double gamma_star,
                     const numerics::Tolerance& tol) {
  const auto& m = scn.scheme.ladder().sizes;
  const double gap = scn.scheme.gap();
  return ss::detail::integrate_dr_regions(
      scn.link_ss, scn.scheme.ladder(), gamma_star,
      [&](std::size_t j, double g) { return (m[j] - 1.0) / (gap * g); }, tol);
}

double idle_ase_cr(const ss::SsScenario& scn, double log_cutoff, const numerics::Tolerance& tol) {
  const double gap = scn.scheme.gap();
  return integrate_cr_active(
      scn.link_ss, gap, log_cutoff,
      [&](double g) { return (std::log(gap * g) - log_cutoff) / std::numbers::ln2; }, tol);
}

double idle_ase_dr(const ss::SsScenario& scn, double gamma_star) {
  const auto& ladder = scn.scheme.ladder();
  const auto bounds = region_boundaries(ladder, gamma_star);
  double total = 0.0;
  for (std::size_t j = 1; j < ladder.regions(); ++j) {
    const double upper = std::isinf(bounds[j]) ? 0.0 : scn.link_ss.ccdf(bounds[j]);
    total += std::log2(ladder.sizes[j]) * (scn.link_ss.ccdf(bounds[j - 1]) - upper);
  }
  return total;
}

double weighted_power(const ss::SsScenario& scn, const SensingOutcomeWeights& w,
                      double log_cutoff, const numerics::Tolerance& tol) {
  const double idle = w.sensed_idle();
  const double active = w.sensed_active();
  double total = 0.0;
  if (scn.scheme.is_discrete()) {
    const double gamma_star = std::exp(log_cutoff);
    if (idle > 0.0) total += idle * idle_power_dr(scn, gamma_star, tol);
    if (active > 0.0) total += active * ss::expected_power_ss_dr(scn, gamma_star, tol);
  } else {
    if (idle > 0.0) total += idle * idle_power_cr(scn, log_cutoff, tol);
    if (active > 0.0) total += active * ss::expected_power_ss_cr(scn, log_cutoff, tol);
  }
  return total;
}

}  // namespace

void SensingConfig::validate() const {
  if (!(tau > 0.0 && tau < frame)) throw DomainError("sensing time must satisfy 0 < tau < frame");
  if (!(fs > 0.0)) throw DomainError("sampling frequency fs must be positive");
  if (!(sensed_snr >= 0.0)) throw DomainError("sensed SNR must be non-negative");
  if (!(sigma_n > 0.0)) throw DomainError("noise standard deviation must be positive");
  if (!(pi0 >= 0.0 && pi0 <= 1.0 && pi1 >= 0.0 && pi1 <= 1.0) ||
      std::abs(pi0 + pi1 - 1.0) > 1e-12) {
    throw DomainError("pi0 and pi1 must be probabilities summing to 1");
  }
}

double prob_detection(const SensingConfig& cfg) {
  const double s = cfg.sensed_snr;
  return numerics::gaussian_q((cfg.eta_norm - s - 1.0) *
                              std::sqrt(cfg.tau * cfg.fs / (2.0 * s + 1.0)));
}

double prob_false_alarm(const SensingConfig& cfg) {
  return numerics::gaussian_q((cfg.eta_norm - 1.0) * std::sqrt(cfg.tau * cfg.fs));
}

double threshold_for_detection(const SensingConfig& cfg, double target_d) {
  if (!(target_d > 0.0 && target_d < 1.0)) {
    throw DomainError("target detection probability must lie in (0, 1)");
  }
  const double s = cfg.sensed_snr;
  return s + 1.0 +
         numerics::gaussian_q_inverse(target_d) * std::sqrt((2.0 * s + 1.0) / (cfg.tau * cfg.fs));
}

SensingOutcomeWeights outcome_weights(double d, double f, double pi0) {
  const double pi1 = 1.0 - pi0;
  return {pi0 * (1.0 - f), pi0 * f, pi1 * (1.0 - d), pi1 * d};
}

SensingOutcomeWeights outcome_weights(const SensingConfig& cfg) {
  const double d = prob_detection(cfg);
  const double f = prob_false_alarm(cfg);
  return {cfg.pi0 * (1.0 - f), cfg.pi0 * f, cfg.pi1 * (1.0 - d), cfg.pi1 * d};
}

CutoffSolution solve_common_cutoff(const ss::SsScenario& scn, const SensingConfig& cfg) {
  scn.validate();
  cfg.validate();
  const auto w = outcome_weights(cfg);
  const auto tol = detail::solve_quadrature_tolerance();
  const bool discrete = scn.scheme.is_discrete();
  const detail::LogCutoffSearch search{
      std::log(1e-9), std::log(10.0 * scn.link_ss.mean() * scn.scheme.gap()),
      discrete ? kLogFloorDr : kLogFloorCr, kLogCeiling, discrete};
  return detail::solve_log_cutoff(
      [&](double log_c) { return weighted_power(scn, w, log_c, tol) - 1.0; }, search);
}

PolicyPair power_policies_sensing_cr(const ss::SsScenario& scn, const SensingConfig&,
                                     const CutoffSolution& sol, double gamma_ss,
                                     double gamma_sp) {
  return {water_level(scn.scheme.gap(), sol.log_cutoff, gamma_ss),
          ss::power_policy_ss_cr_log(scn, sol.log_cutoff, gamma_ss, gamma_sp)};
}

PolicyPair power_policies_sensing_dr(const ss::SsScenario& scn, const SensingConfig&,
                                     const CutoffSolution& sol, double gamma_ss,
                                     double gamma_sp) {
  return {osa::power_policy_dr(scn.scheme.ladder(), sol.cutoff, scn.scheme.gap(), gamma_ss),
          ss::power_policy_ss_dr(scn, sol.cutoff, gamma_ss, gamma_sp)};
}

PolicyPair power_policies(const ss::SsScenario& scn, const SensingConfig& cfg,
                          const CutoffSolution& sol, double gamma_ss, double gamma_sp) {
  return scn.scheme.is_discrete() ? power_policies_sensing_dr(scn, cfg, sol, gamma_ss, gamma_sp)
                                  : power_policies_sensing_cr(scn, cfg, sol, gamma_ss, gamma_sp);
}

ExpectedPowers expected_powers(const ss::SsScenario& scn, const SensingConfig& cfg,
                               const CutoffSolution& sol, const numerics::Tolerance& tol) {
  const auto w = outcome_weights(cfg);
  ExpectedPowers out;
  if (scn.scheme.is_discrete()) {
    out.p0 = idle_power_dr(scn, sol.cutoff, tol);
    out.p1 = ss::expected_power_ss_dr(scn, sol.cutoff, tol);
  } else {
    out.p0 = idle_power_cr(scn, sol.log_cutoff, tol);
    out.p1 = ss::expected_power_ss_cr(scn, sol.log_cutoff, tol);
  }
  out.weighted = w.sensed_idle() * out.p0 + w.sensed_active() * out.p1;
  return out;
}

AseBreakdown sensing_ase_breakdown(const ss::SsScenario& scn, const SensingConfig& cfg,
                                   const CutoffSolution& sol, const numerics::Tolerance& tol) {
  const auto w = outcome_weights(cfg);
  AseBreakdown out;
  if (scn.scheme.is_discrete()) {
    out.se_idle = idle_ase_dr(scn, sol.cutoff);
    out.se_active = ss::ase_ss_dr(scn, sol, tol);
  } else {
    out.se_idle = idle_ase_cr(scn, sol.log_cutoff, tol);
    out.se_active = ss::ase_ss_cr(scn, sol, tol);
  }
  out.ase = w.w_idle_correct * out.se_idle + w.w_false_alarm * out.se_active +
            w.w_missed * out.se_idle + w.w_detect * out.se_active;
  return out;
}

double sensing_ase(const ss::SsScenario& scn, const SensingConfig& cfg, const CutoffSolution& sol,
                   const numerics::Tolerance& tol) {
  return sensing_ase_breakdown(scn, cfg, sol, tol).ase;
}

double throughput(double tau, double frame, double ase) {
  if (!(tau >= 0.0 && tau < frame)) {
    throw DomainError("throughput requires 0 <= tau < frame");
  }
  return (frame - tau) / frame * ase;
}

double throughput(const SensingConfig& cfg, double ase) {
  return throughput(cfg.tau, cfg.frame, ase);
}

double missed_detection_interference(const ss::SsScenario& scn, const SensingConfig& cfg,
                                     const CutoffSolution& sol, const numerics::Tolerance& tol) {
  return scn.link_sp.mean() * expected_powers(scn, cfg, sol, tol).p0;
}

SensingReport analyze(const ss::SsScenario& scn, const SensingConfig& cfg) {
  SensingReport report;
  report.solution = solve_common_cutoff(scn, cfg);
  report.ase = sensing_ase_breakdown(scn, cfg, report.solution);
  report.throughput = throughput(cfg, report.ase.ase);
  report.truncated_fraction = ss::truncated_fraction(scn, report.solution);
  report.missed_detection_interference = missed_detection_interference(scn, cfg, report.solution);
  return report;
}

}  // namespace amcrn::sensing
