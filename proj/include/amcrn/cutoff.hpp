#pragma once

#include "amcrn/numerics.hpp"

namespace amcrn {

/// Solved cutoff SNR of a power-allocation policy.
///
/// `cutoff` is gamma_K for OSA continuous rate, gamma* for discrete rate and
/// gamma*_ss for the spectrum-sharing and sensing policies. `log_cutoff` is
/// kept alongside because heavily interference-limited cases push the cutoff
/// below the smallest representable double.
struct CutoffSolution {
  double cutoff = 0.0;
  double log_cutoff = 0.0;
  double residual = 0.0;  // expected power minus the budget (1)
  int iterations = 0;
  bool binding = true;    // false: budget cannot be exhausted, residual < 0
};

namespace detail {

struct LogCutoffSearch {
  double log_lo;
  double log_hi;
  double log_floor;
  double log_ceiling;
  bool allow_slack;
};

/// Root of a residual that decreases in ln(cutoff), with geometric bracket
/// expansion in both directions.
CutoffSolution solve_log_cutoff(const numerics::RealFunction& residual_of_log,
                                const LogCutoffSearch& search);

/// Quadrature accuracy used while solving, tighter than the residual target.
numerics::Tolerance solve_quadrature_tolerance();

}  // namespace detail
}  // namespace amcrn
