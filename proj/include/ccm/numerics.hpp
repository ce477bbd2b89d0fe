// Shared numerical kernel: closed-form radial integrals with a sharp momentum
// cutoff, adaptive quadrature, and bracketed scalar root finding.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace ccm {

inline constexpr double kPi = 3.14159265358979323846;

struct bracket_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct divergent_integral_error : std::domain_error {
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Radial integrals  R_p(Lambda, chi) = int_0^Lambda k^p dk / (k^2 + chi^2),
// p in {0,2,4,6}.  The 4*pi angular factor is left to the caller.
// ---------------------------------------------------------------------------

struct RadialIntegralSpec {
  int power = 2;        // even, <= 6
  double cutoff = 1.0;  // Lambda > 0
  double pole_scale = 0.0;  // chi >= 0
};

namespace detail {

// Tail sums of the arctan series.  w_first(t) drops the leading `skip` terms of
// atan(t) = t - t^3/3 + t^5/5 - ..., so e.g. skip=1 gives t - atan(t).
// Used for chi >> Lambda where the direct closed forms cancel catastrophically.
inline double atan_tail(double t, int skip) {
  double sum = 0.0;
  double t2 = t * t;
  double pw = 1.0;
  for (int m = 0; m < skip; ++m) pw *= t2;
  pw *= t;  // t^(2*skip+1)
  double sign = (skip % 2 == 0) ? 1.0 : -1.0;
  for (int m = skip; m < 200; ++m) {
    const double term = sign * pw / (2 * m + 1);
    sum += term;
    if (std::abs(term) <= std::numeric_limits<double>::epsilon() * std::abs(sum)) break;
    pw *= t2;
    sign = -sign;
  }
  return sum;
}

}  // namespace detail

inline void validate(const RadialIntegralSpec& s) {
  if (s.power < 0 || s.power > 6 || s.power % 2 != 0)
    throw std::invalid_argument("radial_integral: power must be in {0,2,4,6}");
  if (!(s.cutoff > 0.0)) throw std::invalid_argument("radial_integral: cutoff must be positive");
  if (!(s.pole_scale >= 0.0)) throw std::invalid_argument("radial_integral: pole_scale must be >= 0");
}

inline double radial_integral(const RadialIntegralSpec& s) {
  validate(s);
  const double L = s.cutoff, chi = s.pole_scale;
  if (chi == 0.0) {
    if (s.power == 0) throw divergent_integral_error("radial_integral: power=0 with chi=0 diverges");
    return std::pow(L, s.power - 1) / (s.power - 1);
  }
  const double t = L / chi;  // integrals reduce to chi^(p+1) * f(t)
  switch (s.power) {
    case 0:
      return std::atan(t) / chi;
    case 2:
      // chi * (t - atan t); series form once t < 1/2
      if (t >= 0.5) return L - chi * std::atan(t);
      return chi * detail::atan_tail(t, 1);
    case 4:
      // chi^3 * (t^3/3 - t + atan t)
      if (t >= 0.5) return L * L * L / 3.0 - chi * chi * L + chi * chi * chi * std::atan(t);
      return -chi * chi * chi * detail::atan_tail(t, 2);
    case 6:
      // chi^5 * (t^5/5 - t^3/3 + t - atan t)
      if (t >= 0.5)
        return std::pow(L, 5) / 5.0 - chi * chi * L * L * L / 3.0 + std::pow(chi, 4) * L -
               std::pow(chi, 5) * std::atan(t);
      return std::pow(chi, 5) * detail::atan_tail(t, 3);
    default:
      throw std::invalid_argument("radial_integral: unsupported power");
  }
}

// ---------------------------------------------------------------------------
// Bracketed root finding: bisection with secant acceleration that never leaves
// the bracket.  Deterministic.
// ---------------------------------------------------------------------------

struct RootBracket {
  double lo = 0.0;
  double hi = 1.0;
  double tolerance = 1e-13;  // absolute, on |f| or bracket width
  int max_iterations = 200;
};

inline double find_root(const std::function<double(double)>& f, const RootBracket& b) {
  if (!(b.lo < b.hi)) throw std::invalid_argument("find_root: requires lo < hi");
  if (!(b.tolerance > 0.0)) throw std::invalid_argument("find_root: tolerance must be positive");
  double lo = b.lo, hi = b.hi;
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::isnan(flo) || std::isnan(fhi))
    throw bracket_error("find_root: objective not finite at bracket endpoints");
  if ((flo > 0.0) == (fhi > 0.0))
    throw bracket_error("find_root: no sign change on bracket [" + std::to_string(b.lo) + ", " +
                        std::to_string(b.hi) + "]");
  for (int it = 0; it < b.max_iterations; ++it) {
    // secant proposal, clamped well inside the bracket
    double mid = 0.5 * (lo + hi);
    double x = mid;
    const double denom = fhi - flo;
    if (denom != 0.0) {
      const double sec = (lo * fhi - hi * flo) / denom;
      const double margin = 0.01 * (hi - lo);
      if (sec > lo + margin && sec < hi - margin) x = sec;
    }
    const double fx = f(x);
    if (std::abs(fx) <= b.tolerance || (hi - lo) <= b.tolerance) return x;
    if ((fx > 0.0) == (fhi > 0.0)) {
      hi = x;
      fhi = fx;
    } else {
      lo = x;
      flo = fx;
    }
  }
  if ((hi - lo) <= b.tolerance) return 0.5 * (lo + hi);
  throw convergence_error("find_root: max_iterations exceeded, bracket width " +
                          std::to_string(hi - lo));
}

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature for smooth integrands on [lo, hi].
// ---------------------------------------------------------------------------

namespace detail {

inline double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                            double fb, double m, double fm, double whole, double tol, int depth,
                            long& budget) {
  if (--budget < 0) throw convergence_error("quadrature: refinement budget exhausted");
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 && std::abs(delta) > 15.0 * tol)
    throw convergence_error("quadrature: max recursion depth reached");
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, budget) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, budget);
}

}  // namespace detail

inline double quadrature(const std::function<double(double)>& f, double lo, double hi,
                         double tol = 1e-12) {
  if (lo == hi) return 0.0;
  if (!(tol > 0.0)) throw std::invalid_argument("quadrature: tolerance must be positive");
  const double m = 0.5 * (lo + hi);
  const double fa = f(lo), fb = f(hi), fm = f(m);
  if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
    throw std::invalid_argument("quadrature: integrand not finite on interval");
  const double whole = detail::simpson(lo, fa, hi, fb, fm);
  long budget = 1L << 22;
  return detail::adaptive_step(f, lo, fa, hi, fb, m, fm, whole, tol, 60, budget);
}

}  // namespace ccm
