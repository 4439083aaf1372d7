#include "amcrn/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "amcrn/errors.hpp"

namespace amcrn::detail {

numerics::Tolerance solve_quadrature_tolerance() {
  numerics::Tolerance tol;
  tol.rel_value = 1e-12;
  tol.max_iterations = 500;
  tol.abs_integral = 1e-15;
  return tol;
}

CutoffSolution solve_log_cutoff(const numerics::RealFunction& residual_of_log,
                                const LogCutoffSearch& search) {
  double lo = search.log_lo;
  double hi = search.log_hi;
  double r_lo = residual_of_log(lo);

  double step = std::log(1e3);
  while (!(r_lo > 0.0)) {
    if (lo <= search.log_floor) {
      if (search.allow_slack) {
        return {std::exp(lo), lo, r_lo, 0, false};
      }
      throw NoSignChange("cutoff search: power budget not reached at the smallest cutoff");
    }
    hi = lo;
    lo = std::max(lo - step, search.log_floor);
    step *= 2.0;
    r_lo = residual_of_log(lo);
  }

  while (residual_of_log(hi) > 0.0) {
    lo = hi;
    hi += std::numbers::ln2;
    if (hi > search.log_ceiling) {
      throw NoSignChange("cutoff search: power budget still exceeded at the largest cutoff");
    }
  }

  numerics::Tolerance root_tol;
  root_tol.abs_residual = 1e-10;
  root_tol.rel_value = 1e-15;
  root_tol.max_iterations = 200;
  const auto root = numerics::find_root(residual_of_log, {lo, hi}, root_tol);
  return {std::exp(root.x), root.x, root.fx, root.iterations, true};
}

}  // namespace amcrn::detail
