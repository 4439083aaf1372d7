#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "amcrn/config.hpp"

namespace amcrn::mc {

/// Sample mean of a per-draw quantity next to its analytic expectation.
struct Estimate {
  double analytic = 0.0;
  double mean = 0.0;
  double std_error = 0.0;

  /// |mean - analytic| in standard errors (0 when both agree exactly).
  double z() const;
  bool pass() const { return z() <= 3.0; }
};

struct MonteCarloReport {
  config::CrnType crn_type = config::CrnType::kOsa;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double gamma_bar_db = 0.0;
  std::optional<double> i_pk_db;
  Estimate ase;    // primary user's ASE for OSA
  Estimate power;  // P / Pbar
  /// Largest gamma_sp * P - I_pk over all draws of the capped policy.
  std::optional<double> max_interference_excess;

  bool interference_ok() const {
    return !max_interference_excess || *max_interference_excess <= 1e-12;
  }
  bool pass() const { return ase.pass() && power.pass() && interference_ok(); }
};

/// Draws `samples` channel realisations (and, for sensing, primary state and
/// detector decision) at abscissa x_db of the configured sweep (its first
/// point by default) and compares empirical means with the analytic values.
/// Throws ValidationError for samples < 100000.
MonteCarloReport verify_monte_carlo(const config::ScenarioConfig& cfg, std::uint64_t samples,
                                    std::optional<double> x_db = std::nullopt);

std::string format_report(const MonteCarloReport& report);

}  // namespace amcrn::mc
