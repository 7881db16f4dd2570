#pragma once

// Scalar root finding for monotone functions on a bracket.

#include <cmath>
#include <concepts>
#include <limits>
#include <utility>

#include "errors.hpp"

namespace cmgd {

struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

/**
 * @brief Bisect a bracket of a decreasing function until its width drops to
 * rel_width * lo.
 *
 * Midpoints are geometric while the bracket spans more than a factor of four,
 * which keeps the iteration count logarithmic for brackets covering many
 * decades. Requires f(lo) > 0 > f(hi).
 */
template <class F>
  requires std::invocable<F&, double>
Bracket bisect_decreasing(F&& f, Bracket b, double rel_width, int max_iter = 400) {
  for (int it = 0; it < max_iter; ++it) {
    if (b.hi - b.lo <= rel_width * b.lo) break;
    const double mid = (b.hi > 4.0 * b.lo) ? std::sqrt(b.lo * b.hi) : 0.5 * (b.lo + b.hi);
    if (mid <= b.lo || mid >= b.hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return {mid, mid, 0.0, 0.0};
    if (fm > 0.0) {
      b.lo = mid;
      b.f_lo = fm;
    } else {
      b.hi = mid;
      b.f_hi = fm;
    }
  }
  return b;
}

/**
 * @brief Safeguarded Newton iteration for a monotone function with a known
 * derivative on [lo, hi], where the target value is bracketed.
 *
 * Falls back to bisection whenever a Newton step leaves the bracket. Stops
 * when the bracket collapses to rel_tol or the step becomes negligible.
 */
template <class F, class DF>
double newton_bisect(F&& f, DF&& df, double lo, double hi, double rel_tol = 4.0 * std::numeric_limits<double>::epsilon(),
                     int max_iter = 200) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw RootFindError("newton_bisect: root is not bracketed");
  }
  const bool increasing = f_lo < 0.0;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == increasing) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo <= rel_tol * std::abs(hi)) return 0.5 * (lo + hi);
    const double d = df(x);
    double next = (d != 0.0 && std::isfinite(d)) ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= rel_tol * std::abs(x)) return next;
    x = next;
  }
  throw RootFindError("newton_bisect: no convergence within the iteration budget");
}

}  // namespace cmgd
