#pragma once

#include <functional>

namespace amcrn::numerics {

using RealFunction = std::function<double(double)>;

/// Accuracy and effort limits shared by the quadrature and root-finding routines.
///
/// For quadrature, rel_value is the target relative error, abs_integral an
/// absolute floor, and max_iterations the number of interval subdivisions.
/// For root finding, the search stops once |f(x)| <= abs_residual or the
/// bracket is narrower than rel_value * |x|.
struct Tolerance {
  double abs_residual = 1e-10;
  double rel_value = 1e-9;
  int max_iterations = 200;
  double abs_integral = 1e-14;

  /// Throws DomainError unless every field is strictly positive.
  void validate() const;
};

struct Bracket {
  double lo;
  double hi;
};

enum class RootMethod { kBisection, kBrent };

enum class SemiInfiniteMethod {
  kTruncation,    // integrate [lower, lower + 40 * scale]
  kSubstitution,  // u = exp(-(x - lower) / scale) onto (0, 1]
};

struct RootResult {
  double x;
  double fx;
  int iterations;
};

/// Upper-tail probability of the standard normal, Q(x) = erfc(x / sqrt 2) / 2.
double gaussian_q(double x);

/// Inverse of gaussian_q on (0, 1).
double gaussian_q_inverse(double p);

/// Exponential integral E1(x) for x > 0.
double expint_e1(double x);

/// exp(x) * E1(x) for x > 0, finite for large x.
double expint_e1_scaled(double x);

/// E1(x) + ln(x), the part of E1 that stays finite as x -> 0+.
double expint_e1_regular(double x);

/// Adaptive Gauss-Kronrod (7/15) integral of f over [lo, hi].
/// Throws NonConvergence when max_iterations subdivisions do not suffice.
double integrate_interval(const RealFunction& f, double lo, double hi,
                          const Tolerance& tol = {});

/// Integral of f over [lower, inf) for integrands decaying at least like
/// exp(-x / weight_scale).
double integrate_semi_infinite(
    const RealFunction& f, double lower, double weight_scale,
    const Tolerance& tol = {},
    SemiInfiniteMethod method = SemiInfiniteMethod::kTruncation);

/// Root of f inside a sign-changing bracket.
/// Throws NoSignChange if f(lo) * f(hi) > 0 and NonConvergence if the
/// iteration cap is reached first.
RootResult find_root(const RealFunction& f, Bracket bracket,
                     const Tolerance& tol = {},
                     RootMethod method = RootMethod::kBrent);

}  // namespace amcrn::numerics
