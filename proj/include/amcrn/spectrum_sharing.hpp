#pragma once

#include <cstddef>

#include "amcrn/channel.hpp"
#include "amcrn/cutoff.hpp"
#include "amcrn/modulation.hpp"
#include "amcrn/numerics.hpp"

namespace amcrn::ss {

/// How discrete-rate ASE is credited when the interference cap truncates power.
enum class DrRateAccounting {
  /// Largest ladder constellation the truncated power still supports at the
  /// BER target (0 if even M_1 is not supported).
  kTruncationAware,
  /// log2(M_j) for every gamma_ss in region j, regardless of truncation.
  kNominal,
};

/// Underlay spectrum sharing: secondary link SNR gamma_ss, secondary-to-primary
/// interference SNR gamma_sp (both Rayleigh), peak interference cap i_pk.
struct SsScenario {
  RayleighChannel link_ss;
  RayleighChannel link_sp;
  double i_pk;
  ModulationScheme scheme;
  DrRateAccounting dr_rate = DrRateAccounting::kTruncationAware;

  /// Throws DomainError for i_pk <= 0 or a secondary mean SNR at or below 1e-6.
  void validate() const;
};

// Continuous rate -----------------------------------------------------------

/// Water-filling 1/c - 1/(K gamma_ss) capped at i_pk/gamma_sp; 0 when
/// K gamma_ss <= c. The log-cutoff form stays valid when c underflows.
double power_policy_ss_cr(const SsScenario& scn, double cutoff, double gamma_ss, double gamma_sp);
double power_policy_ss_cr_log(const SsScenario& scn, double log_cutoff, double gamma_ss,
                              double gamma_sp);

CutoffSolution solve_cutoff_ss_cr(const SsScenario& scn);

/// Expected P/Pbar over (gamma_ss, gamma_sp) for the cutoff exp(log_cutoff).
double expected_power_ss_cr(const SsScenario& scn, double log_cutoff,
                            const numerics::Tolerance& tol = {});

double ase_ss_cr(const SsScenario& scn, const CutoffSolution& sol,
                 const numerics::Tolerance& tol = {});

// Discrete rate --------------------------------------------------------------

/// Channel inversion (M_j - 1)/(K gamma_ss) in region j, capped at i_pk/gamma_sp.
double power_policy_ss_dr(const SsScenario& scn, double gamma_star, double gamma_ss,
                          double gamma_sp);

/// Returns a non-binding solution (binding = false) when no cutoff can
/// exhaust the power budget.
CutoffSolution solve_cutoff_ss_dr(const SsScenario& scn);

double expected_power_ss_dr(const SsScenario& scn, double gamma_star,
                            const numerics::Tolerance& tol = {});

double ase_ss_dr(const SsScenario& scn, const CutoffSolution& sol,
                 const numerics::Tolerance& tol = {});

// Either scheme ----------------------------------------------------------------

CutoffSolution solve_cutoff(const SsScenario& scn);
double expected_power(const SsScenario& scn, const CutoffSolution& sol,
                      const numerics::Tolerance& tol = {});
double ase(const SsScenario& scn, const CutoffSolution& sol, const numerics::Tolerance& tol = {});
double power_policy(const SsScenario& scn, const CutoffSolution& sol, double gamma_ss,
                    double gamma_sp);

/// Fraction of transmissions whose power is set by the interference cap.
double truncated_fraction(const SsScenario& scn, const CutoffSolution& sol,
                          const numerics::Tolerance& tol = {});

/// Bits/symbol delivered for one channel draw under the scenario's policy.
double instantaneous_rate(const SsScenario& scn, const CutoffSolution& sol, double gamma_ss,
                          double gamma_sp);

/// E[P | gamma_ss] averaged over gamma_sp, the quantity plotted as an SS
/// power-policy curve.
double conditional_power(const SsScenario& scn, const CutoffSolution& sol, double gamma_ss);

struct SsReport {
  CutoffSolution solution;
  double ase = 0.0;
  double expected_power = 0.0;
  double truncated_fraction = 0.0;
};

SsReport analyze(const SsScenario& scn);

namespace detail {

/// Expectations over gamma_sp at a fixed gamma_ss.
struct Conditional {
  double power = 0.0;       // E[P/Pbar | gamma_ss]
  double rate_bits = 0.0;   // E[bits | gamma_ss]
  double truncation = 0.0;  // Pr(power capped | gamma_ss)
};

/// Continuous rate, cutoff given as its logarithm. Zero below the cutoff.
Conditional cr_conditional(double gap, double i_pk, double mean_sp, double log_cutoff,
                           double gamma_ss);

/// Discrete rate, gamma_ss inside region j >= 1.
Conditional dr_conditional(const ConstellationLadder& ladder, double gap, double i_pk,
                           double mean_sp, std::size_t region, double gamma_ss,
                           DrRateAccounting accounting);

/// Integral of h(gamma_ss) p(gamma_ss) over each active DR region for cutoff gamma_star.
double integrate_dr_regions(const RayleighChannel& ch, const ConstellationLadder& ladder,
                            double gamma_star,
                            const std::function<double(std::size_t, double)>& h,
                            const numerics::Tolerance& tol);

}  // namespace detail

}  // namespace amcrn::ss
