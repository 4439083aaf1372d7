#pragma once

#include "amcrn/channel.hpp"
#include "amcrn/cutoff.hpp"
#include "amcrn/modulation.hpp"
#include "amcrn/numerics.hpp"

namespace amcrn::osa {

/// Opportunistic access: one fading link, a modulation scheme and U users
/// served in priority order (the primary first). Powers are normalised so
/// the average budget is 1.
struct OsaScenario {
  RayleighChannel channel;
  ModulationScheme scheme;
  int users = 1;

  /// Throws DomainError for users < 1 or a mean SNR at or below 1e-6.
  void validate() const;
};

// Continuous rate -----------------------------------------------------------

/// Water-filling cutoff gamma_K meeting the average power budget with equality.
CutoffSolution solve_cutoff_cr(const OsaScenario& scn);

/// Expected P/Pbar of the water-filling policy with cutoff gamma_K.
double expected_power_cr(const OsaScenario& scn, double cutoff,
                         const numerics::Tolerance& tol = {});

/// P/Pbar = 1/(K cutoff) - 1/(K gamma) above the cutoff, 0 below.
double power_policy_cr(double cutoff, double gap, double gamma);

/// ASE in bits/s/Hz: integral of log2(gamma / gamma_K) above the cutoff.
double ase_cr(const OsaScenario& scn, const CutoffSolution& sol,
              const numerics::Tolerance& tol = {});

// Discrete rate --------------------------------------------------------------

CutoffSolution solve_cutoff_dr(const OsaScenario& scn);

double expected_power_dr(const OsaScenario& scn, double gamma_star,
                         const numerics::Tolerance& tol = {});

/// Channel inversion (M_j - 1)/(K gamma) inside region j, 0 in region 0.
double power_policy_dr(const ConstellationLadder& ladder, double gamma_star, double gap,
                       double gamma);

double ase_dr(const OsaScenario& scn, const CutoffSolution& sol);

/// Effect of appending the next constellation (4 M_last) to a discrete ladder,
/// evaluated in difference form so that gaps far below the rounding error of
/// two separate solves stay resolvable.
struct ExtraRegionGain {
  double cutoff = 0.0;        // gamma* of the scenario's own ladder
  double cutoff_shift = 0.0;  // gamma*' - gamma* for the longer ladder
  double ase_gain = 0.0;      // ASE' - ASE
};

/// Throws DomainError for continuous-rate scenarios.
ExtraRegionGain extra_region_gain(const OsaScenario& scn);

// Multi-user -----------------------------------------------------------------

/// Probability the primary leaves the channel idle, integral of the SNR pdf
/// from 0 to the cutoff (evaluated by quadrature).
double band_factor_gain(const OsaScenario& scn, const CutoffSolution& sol);

/// (1 - delta^U) / (1 - delta), with the limit U at delta = 1.
double total_band_factor_gain(double delta, int users);

/// total_band_factor_gain - 1, kept accurate when delta is far below machine epsilon.
double total_band_factor_excess(double delta, int users);

/// Sum ASE of U users where user u gets delta^(u-1) of the primary's ASE.
double sum_ase(double se_1, double delta, int users);

/// Everything a sweep row needs for one scenario.
struct OsaReport {
  CutoffSolution solution;
  double ase = 0.0;  // primary user, Se_1
  double band_factor_gain = 0.0;
  double total_band_factor_gain = 0.0;
  double sum_ase = 0.0;
};

OsaReport analyze(const OsaScenario& scn);

/// Solve with whichever routine matches the scheme.
CutoffSolution solve_cutoff(const OsaScenario& scn);
double expected_power(const OsaScenario& scn, double cutoff, const numerics::Tolerance& tol = {});
double ase(const OsaScenario& scn, const CutoffSolution& sol);
double power_policy(const OsaScenario& scn, const CutoffSolution& sol, double gamma);

}  // namespace amcrn::osa
