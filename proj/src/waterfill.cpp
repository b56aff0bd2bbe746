// rdgap: waterfill.cpp
#include "rdgap/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bisect.hpp"
#include "rdgap/errors.hpp"

namespace rdgap {

using detail::require;

namespace {

void require_level(double t, const char* who) {
  require(std::isfinite(t) && t > 0.0, std::string(who) + ": water level must be positive");
}

}  // namespace

double d_wf(LevelView s, double t) {
  require_level(t, "d_wf");
  double d = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) d += s.weights[j] * std::min(s.values[j], t);
  return d;
}

double r_wf(LevelView s, double t) {
  require_level(t, "r_wf");
  double r = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s.values[j] > t) r += s.weights[j] * std::log2(s.values[j] / t);
  }
  return 0.5 * r;
}

double t_for_distortion(LevelView s, double d_star) {
  const double mean = s.mean();
  require(d_star > 0.0 && d_star < mean,
          "t_for_distortion: distortion must lie strictly between 0 and the mean eigenvalue "
          "(at or above the mean the rate is zero)");
  const double top = s.max_value();
  auto excess = [&](double t) {
    double d = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) d += s.weights[j] * std::min(s.values[j], t);
    return d - d_star;
  };
  const double tol = std::max(1e-13, 4.0 * std::numeric_limits<double>::epsilon() * top);
  return detail::bisect_increasing(excess, 0.0, top, tol, "t_for_distortion");
}

double rr_wf(LevelView s, double d_star) { return r_wf(s, t_for_distortion(s, d_star)); }

double dd_wf(LevelView s, double rate_bits) {
  require(std::isfinite(rate_bits) && rate_bits >= 0.0, "dd_wf: rate must be nonnegative");
  if (rate_bits == 0.0) return s.mean();
  const double top = s.max_value();
  require(top > 0.0, "dd_wf: no positive eigenvalue");

  // R_wf is decreasing in t and vanishes at t = max level; walk down until
  // the target rate is exceeded, then bisect in t.
  double lo = top;
  int halvings = 0;
  while (r_wf(s, lo) <= rate_bits) {
    lo *= 0.5;
    if (++halvings > 1000 || !(lo > 0.0)) {
      throw NumericError("dd_wf: could not bracket the water level");
    }
  }
  const double hi = 2.0 * lo;
  auto deficit = [&](double t) { return rate_bits - r_wf(s, t); };
  const double t = detail::bisect_increasing(
      deficit, lo, hi, 4.0 * std::numeric_limits<double>::epsilon() * hi, "dd_wf");
  return d_wf(s, t);
}

std::vector<double> per_coord_distortions(LevelView s, double t) {
  require_level(t, "per_coord_distortions");
  std::vector<double> out(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    out[j] = s.values[j] > 0.0 ? std::min(t / s.values[j], 1.0) : 1.0;
  }
  return out;
}

WfPoint wf_point_at_distortion(LevelView s, double d_star) {
  const double t = t_for_distortion(s, d_star);
  return {t, d_wf(s, t), r_wf(s, t)};
}

}  // namespace rdgap
