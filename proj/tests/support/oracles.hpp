#pragma once

// Reference values computed independently of the library: Boost.Math special
// functions and quadrature, multiprecision arithmetic and closed forms.

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

inline double e1(double x) { return boost::math::expint(1, x); }

inline double q(double x) { return 0.5 * boost::math::erfc(x / std::sqrt(2.0)); }

/// Power gap evaluated in 50-digit arithmetic and rounded once.
inline double gap_hp(const char* ber_decimal) {
  using big = boost::multiprecision::cpp_bin_float_50;
  const big ber(ber_decimal);
  return static_cast<double>(big(-1.5) / log(big(5) * ber));
}

/// Adaptive 61-point Gauss-Kronrod on a finite interval.
template <typename F>
double integrate(F f, double a, double b) {
  if (!(a < b)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

/// Integral over [a, inf) by exp-sinh.
template <typename F>
double integrate_tail(F f, double a) {
  boost::math::quadrature::exp_sinh<double> rule;
  return rule.integrate([&](double t) { return f(a + t); }, 1e-12);
}

/// Integral over [0, inf) split at the given interior breakpoints.
template <typename F>
double integrate_split(F f, std::vector<double> points) {
  double total = 0.0;
  double lo = 0.0;
  for (double p : points) {
    if (p > lo) {
      total += integrate(f, lo, p);
      lo = p;
    }
  }
  return total + integrate_tail(f, lo);
}

// Rayleigh OSA closed forms, x = cutoff / mean.

inline double osa_cr_power(double gap, double cutoff, double mean) {
  const double x = cutoff / mean;
  return (std::exp(-x) / cutoff - e1(x) / mean) / gap;
}

inline double osa_cr_ase(double cutoff, double mean) { return e1(cutoff / mean) / std::numbers::ln2; }

inline double band_factor_gain(double cutoff, double mean) { return -std::expm1(-cutoff / mean); }

inline double osa_dr_power(const std::vector<int>& m, double gap, double gamma_star, double mean) {
  double total = 0.0;
  for (std::size_t j = 1; j < m.size(); ++j) {
    const double lo = gamma_star * m[j] / mean;
    const double hi_e1 = j + 1 < m.size() ? e1(gamma_star * m[j + 1] / mean) : 0.0;
    total += (m[j] - 1.0) / (gap * mean) * (e1(lo) - hi_e1);
  }
  return total;
}

inline double osa_dr_ase(const std::vector<int>& m, double gamma_star, double mean) {
  double total = 0.0;
  for (std::size_t j = 1; j < m.size(); ++j) {
    total += std::log2(m[j]) * std::exp(-gamma_star * m[j] / mean) -
             (j + 1 < m.size() ? std::log2(m[j]) * std::exp(-gamma_star * m[j + 1] / mean) : 0.0);
  }
  return total;
}

/// Discrete-rate ASE of a ladder solved for its power budget entirely in 50-digit
/// arithmetic (closed forms plus bisection on gamma*). Resolves ASE differences
/// between ladders that double precision cannot.
inline boost::multiprecision::cpp_bin_float_50 osa_dr_ase_hp(const std::vector<int>& m,
                                                             const char* ber_decimal,
                                                             double mean_db) {
  using big = boost::multiprecision::cpp_bin_float_50;
  const big gap = big(-1.5) / log(big(5) * big(ber_decimal));
  const big mean = pow(big(10), big(mean_db) / 10);
  const auto power = [&](const big& g) {
    big total = 0;
    for (std::size_t j = 1; j < m.size(); ++j) {
      const big hi = j + 1 < m.size() ? big(boost::math::expint(1, g * m[j + 1] / mean)) : big(0);
      total += big(m[j] - 1) / (gap * mean) * (boost::math::expint(1, g * m[j] / mean) - hi);
    }
    return total;
  };
  big lo = 0;
  big hi = mean;
  while (power(hi) > 1) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    const big mid = (lo + hi) / 2;
    (power(mid) > 1 ? lo : hi) = mid;
  }
  const big g = (lo + hi) / 2;
  big ase = 0;
  big previous_bits = 0;
  for (std::size_t j = 1; j < m.size(); ++j) {
    const big bits = log2(big(m[j]));
    ase += (bits - previous_bits) * exp(-g * m[j] / mean);
    previous_bits = bits;
  }
  return ase;
}

/// Largest ladder size not exceeding the constellation a power level supports.
inline double supported_bits(const std::vector<int>& m, double gap, double gamma, double power) {
  const double supported = 1.0 + gap * gamma * power;
  double bits = 0.0;
  for (std::size_t i = 1; i < m.size(); ++i) {
    if (m[i] <= supported * (1.0 + 1e-12)) bits = std::log2(m[i]);
  }
  return bits;
}

}  // namespace oracle
