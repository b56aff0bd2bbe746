// rdgap: bisect.hpp (private)
// Bracketed bisection shared by the curve inverters.
#pragma once

#include <cmath>
#include <string>

#include "rdgap/errors.hpp"

namespace rdgap::detail {

inline constexpr int kMaxBisection = 200;

/// Root of an increasing function on [lo, hi] with f(lo) <= 0 <= f(hi).
/// Iterates until the bracket stops shrinking in floating point (or an exact
/// zero is hit), then asserts the final width is within `tol`.
template <class F>
double bisect_increasing(F&& f, double lo, double hi, double tol, const char* who) {
  for (int it = 0; it < kMaxBisection; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (fm < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (!(hi - lo <= tol)) {
    throw NumericError(std::string(who) + ": bisection did not converge within " +
                       std::to_string(kMaxBisection) + " iterations");
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace rdgap::detail
