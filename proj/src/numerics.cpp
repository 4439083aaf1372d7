#include "amcrn/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "amcrn/errors.hpp"

namespace amcrn::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod 15-point abscissae (descending) and weights; the odd-indexed
// abscissae are the embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  double abs_value;

  bool operator<(const Segment& other) const { return error < other.error; }
};

// One Gauss-Kronrod panel with the QUADPACK error heuristic.
Segment gauss_kronrod_15(const RealFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<double, 15> fv{};
  const double fc = f(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv[2 * j] = f1;
    fv[2 * j + 1] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv[2 * j] - reskh) + std::abs(fv[2 * j + 1] - reskh));
  }

  const double value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double error = std::abs((resk - resg) * half);
  if (resasc != 0.0 && error != 0.0) {
    error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    error = std::max(50.0 * kEps * resabs, error);
  }
  return {a, b, value, error, resabs};
}

double bisection(const RealFunction& f, double lo, double hi, double flo,
                 const Tolerance& tol, int& iterations, double& fbest) {
  double best = lo;
  fbest = flo;
  for (iterations = 1; iterations <= tol.max_iterations; ++iterations) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) return best;  // bracket down to adjacent doubles
    const double fm = f(mid);
    if (std::abs(fm) < std::abs(fbest)) {
      best = mid;
      fbest = fm;
    }
    if (std::abs(fm) <= tol.abs_residual) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= tol.rel_value * std::abs(mid)) {
      fbest = fm;
      return mid;
    }
  }
  throw NonConvergence("bisection: iteration cap reached near x = " + std::to_string(best));
}

double brent(const RealFunction& f, double a, double b, double fa, double fb,
             const Tolerance& tol, int& iterations, double& fx) {
  double c = b;
  double fc = fb;
  double d = 0.0;
  double e = 0.0;
  for (iterations = 1; iterations <= tol.max_iterations; ++iterations) {
    if (std::signbit(fb) == std::signbit(fc) && fc != 0.0) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * kEps * std::abs(b) + 0.5 * tol.rel_value * std::abs(b);
    const double xm = 0.5 * (c - b);
    if (std::abs(fb) <= tol.abs_residual || std::abs(xm) <= tol1 || fb == 0.0) {
      fx = fb;
      return b;
    }
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : std::copysign(tol1 > 0.0 ? tol1 : kEps, xm);
    fb = f(b);
  }
  throw NonConvergence("brent: iteration cap reached near x = " + std::to_string(b));
}

}  // namespace

void Tolerance::validate() const {
  if (!(abs_residual > 0.0) || !(rel_value > 0.0) || max_iterations < 1 ||
      !(abs_integral > 0.0)) {
    throw DomainError("tolerance fields must be strictly positive");
  }
}

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double gaussian_q_inverse(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("gaussian_q_inverse: p must lie in (0, 1)");
  }
  return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double expint_e1(double x) {
  if (!(x > 0.0)) throw DomainError("expint_e1: x must be positive");
  if (x <= 1.0) return expint_e1_regular(x) - std::log(x);
  return expint_e1_scaled(x) * std::exp(-x);
}

double expint_e1_scaled(double x) {
  if (!(x > 0.0)) throw DomainError("expint_e1_scaled: x must be positive");
  if (x <= 1.0) return std::exp(x) * expint_e1(x);
  if (std::isinf(x)) return 0.0;
  // Continued fraction for exp(x) E1(x), modified Lentz.
  constexpr double kTiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) <= kEps) return h;
  }
  throw NonConvergence("expint_e1_scaled: continued fraction did not converge");
}

double expint_e1_regular(double x) {
  if (!(x >= 0.0)) throw DomainError("expint_e1_regular: x must be non-negative");
  if (x > 1.0) return expint_e1(x) + std::log(x);
  // -gamma + sum_{k>=1} (-1)^(k+1) x^k / (k k!)
  double sum = 0.0;
  double term = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= -x / k;
    const double contrib = -term / k;
    sum += contrib;
    if (std::abs(contrib) <= kEps * std::abs(sum)) break;
  }
  return -std::numbers::egamma + sum;
}

double integrate_interval(const RealFunction& f, double lo, double hi, const Tolerance& tol) {
  if (!(lo <= hi)) throw DomainError("integrate_interval: requires lo <= hi");
  if (lo == hi) return 0.0;

  std::priority_queue<Segment> heap;
  Segment first = gauss_kronrod_15(f, lo, hi);
  double total = first.value;
  double total_error = first.error;
  double total_abs = first.abs_value;
  heap.push(first);

  for (int splits = 0;; ++splits) {
    if (!std::isfinite(total) || !std::isfinite(total_error)) {
      throw NonConvergence("integrate_interval: non-finite integrand on [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    const double target =
        std::max({tol.abs_integral, tol.rel_value * std::abs(total), 100.0 * kEps * total_abs});
    if (total_error <= target) return total;
    if (splits >= tol.max_iterations) {
      throw NonConvergence("integrate_interval: subdivision limit reached (error " +
                           std::to_string(total_error) + ")");
    }
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval no longer splittable in double precision.
      return total;
    }
    heap.pop();
    Segment left = gauss_kronrod_15(f, worst.a, mid);
    Segment right = gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
  }
}

double integrate_semi_infinite(const RealFunction& f, double lower, double weight_scale,
                               const Tolerance& tol, SemiInfiniteMethod method) {
  if (!(weight_scale > 0.0)) {
    throw DomainError("integrate_semi_infinite: weight_scale must be positive");
  }
  if (method == SemiInfiniteMethod::kTruncation) {
    return integrate_interval(f, lower, lower + 40.0 * weight_scale, tol);
  }
  const auto mapped = [&](double u) {
    const double x = lower - weight_scale * std::log(u);
    return f(x) * weight_scale / u;
  };
  return integrate_interval(mapped, 0.0, 1.0, tol);
}

RootResult find_root(const RealFunction& f, Bracket bracket, const Tolerance& tol,
                     RootMethod method) {
  tol.validate();
  if (!(bracket.lo < bracket.hi)) throw DomainError("find_root: bracket requires lo < hi");
  const double flo = f(bracket.lo);
  const double fhi = f(bracket.hi);
  if (flo == 0.0) return {bracket.lo, flo, 0};
  if (fhi == 0.0) return {bracket.hi, fhi, 0};
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw NoSignChange("find_root: f has the same sign at both bracket ends");
  }
  int iterations = 0;
  double fx = 0.0;
  double x = method == RootMethod::kBisection
                 ? bisection(f, bracket.lo, bracket.hi, flo, tol, iterations, fx)
                 : brent(f, bracket.lo, bracket.hi, flo, fhi, tol, iterations, fx);
  return {x, fx, iterations};
}

}  // namespace amcrn::numerics
