#pragma once

#include "amcrn/cutoff.hpp"
#include "amcrn/numerics.hpp"
#include "amcrn/spectrum_sharing.hpp"

namespace amcrn::sensing {

/// Energy detector and frame parameters. Times in seconds, fs in Hz,
/// sensed_snr linear. The detector sees N = tau * fs samples.
struct SensingConfig {
  double tau = 2e-3;
  double fs = 6e6;
  double eta_norm = 1.0;  // threshold over noise variance
  double sigma_n = 1.0;
  double sensed_snr = 0.0;
  double pi0 = 0.5;
  double pi1 = 0.5;
  double frame = 0.1;

  /// Throws DomainError unless 0 < tau < frame, fs > 0, sensed_snr >= 0,
  /// sigma_n > 0 and pi0 + pi1 = 1 with both in [0, 1].
  void validate() const;
};

/// Probabilities of the four (primary state, sensing decision) pairs.
struct SensingOutcomeWeights {
  double w_idle_correct = 0.0;  // pi0 (1 - f)
  double w_false_alarm = 0.0;   // pi0 f
  double w_missed = 0.0;        // pi1 (1 - d)
  double w_detect = 0.0;        // pi1 d

  /// Weight of the unconstrained policy P0 (primary sensed idle).
  double sensed_idle() const noexcept { return w_idle_correct + w_missed; }
  /// Weight of the interference-capped policy P1 (primary sensed active).
  double sensed_active() const noexcept { return w_false_alarm + w_detect; }
  double sum() const noexcept { return w_idle_correct + w_false_alarm + w_missed + w_detect; }
};

/// d = Q((eta_norm - S - 1) sqrt(tau fs / (2S + 1))).
double prob_detection(const SensingConfig& cfg);

/// f = Q((eta_norm - 1) sqrt(tau fs)).
double prob_false_alarm(const SensingConfig& cfg);

/// eta_norm giving prob_detection == target_d. Throws DomainError outside (0, 1).
double threshold_for_detection(const SensingConfig& cfg, double target_d);

SensingOutcomeWeights outcome_weights(double d, double f, double pi0);
SensingOutcomeWeights outcome_weights(const SensingConfig& cfg);

/// Cutoff shared by P0 and P1 such that the outcome-weighted average power is 1.
/// For discrete rate the solution may be non-binding (see ss::solve_cutoff_ss_dr).
CutoffSolution solve_common_cutoff(const ss::SsScenario& scn, const SensingConfig& cfg);

struct PolicyPair {
  double p0 = 0.0;  // sensed idle
  double p1 = 0.0;  // sensed active, capped at i_pk / gamma_sp
};

PolicyPair power_policies_sensing_cr(const ss::SsScenario& scn, const SensingConfig& cfg,
                                     const CutoffSolution& sol, double gamma_ss,
                                     double gamma_sp);
PolicyPair power_policies_sensing_dr(const ss::SsScenario& scn, const SensingConfig& cfg,
                                     const CutoffSolution& sol, double gamma_ss,
                                     double gamma_sp);
PolicyPair power_policies(const ss::SsScenario& scn, const SensingConfig& cfg,
                          const CutoffSolution& sol, double gamma_ss, double gamma_sp);

struct ExpectedPowers {
  double p0 = 0.0;
  double p1 = 0.0;
  double weighted = 0.0;
};

ExpectedPowers expected_powers(const ss::SsScenario& scn, const SensingConfig& cfg,
                               const CutoffSolution& sol, const numerics::Tolerance& tol = {});

struct AseBreakdown {
  double se_idle = 0.0;    // ASE under P0
  double se_active = 0.0;  // ASE under P1
  double ase = 0.0;        // outcome-weighted mixture
};

AseBreakdown sensing_ase_breakdown(const ss::SsScenario& scn, const SensingConfig& cfg,
                                   const CutoffSolution& sol,
                                   const numerics::Tolerance& tol = {});
double sensing_ase(const ss::SsScenario& scn, const SensingConfig& cfg, const CutoffSolution& sol,
                   const numerics::Tolerance& tol = {});

/// (frame - tau) / frame * ase. Throws DomainError unless 0 <= tau < frame.
double throughput(double tau, double frame, double ase);
double throughput(const SensingConfig& cfg, double ase);

/// Average gamma_sp * P0, the interference a missed detection causes.
double missed_detection_interference(const ss::SsScenario& scn, const SensingConfig& cfg,
                                     const CutoffSolution& sol,
                                     const numerics::Tolerance& tol = {});

struct SensingReport {
  CutoffSolution solution;
  AseBreakdown ase;
  double throughput = 0.0;
  double truncated_fraction = 0.0;  // of P1 transmissions
  double missed_detection_interference = 0.0;
};

SensingReport analyze(const ss::SsScenario& scn, const SensingConfig& cfg);

}  // namespace amcrn::sensing
