// rdgap: rdrc.cpp
#include "rdgap/rdrc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bisect.hpp"
#include "rdgap/errors.hpp"

namespace rdgap {

using detail::require;

namespace {

constexpr int kMaxDoublings = 200;
constexpr double kRelTol = 1e-12;

void require_T(double T, const char* who) {
  require(std::isfinite(T) && T >= 0.0, std::string(who) + ": T must be nonnegative");
}

double d_rc_unchecked(LevelView s, double T) {
  double d = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    d += s.weights[j] * s.values[j] / (1.0 + s.values[j] * T);
  }
  return d;
}

double r_rc_unchecked(LevelView s, double T) {
  double r = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) r += s.weights[j] * std::log1p(s.values[j] * T);
  return 0.5 * r / std::numbers::ln2;
}

// Smallest power of two hi with pred(hi) true, starting from 1.
template <class Pred>
double double_until(Pred&& pred, const char* who) {
  double hi = 1.0;
  for (int k = 0; !pred(hi); ++k) {
    if (k >= kMaxDoublings) throw NumericError(std::string(who) + ": T bracket exceeded 2^200");
    hi *= 2.0;
  }
  return hi;
}

}  // namespace

double d_rc(LevelView s, double T) {
  require_T(T, "d_rc");
  return d_rc_unchecked(s, T);
}

double r_rc(LevelView s, double T) {
  require_T(T, "r_rc");
  return r_rc_unchecked(s, T);
}

double t_rc_for_rate(LevelView s, double rate_bits) {
  require(std::isfinite(rate_bits) && rate_bits > 0.0, "t_rc_for_rate: rate must be positive");
  require(s.max_value() > 0.0, "t_rc_for_rate: no positive eigenvalue");
  const double hi = double_until([&](double T) { return r_rc_unchecked(s, T) >= rate_bits; },
                                 "t_rc_for_rate");
  const double lo = hi == 1.0 ? 0.0 : 0.5 * hi;
  return detail::bisect_increasing(
      [&](double T) { return r_rc_unchecked(s, T) - rate_bits; }, lo, hi, kRelTol * hi,
      "t_rc_for_rate");
}

double t_rc_for_distortion(LevelView s, double d_star) {
  const double mean = s.mean();
  require(d_star > 0.0 && d_star < mean,
          "t_rc_for_distortion: distortion must lie strictly between 0 and the mean eigenvalue");
  const double hi = double_until([&](double T) { return d_rc_unchecked(s, T) <= d_star; },
                                 "t_rc_for_distortion");
  const double lo = hi == 1.0 ? 0.0 : 0.5 * hi;
  return detail::bisect_increasing(
      [&](double T) { return d_star - d_rc_unchecked(s, T); }, lo, hi, kRelTol * hi,
      "t_rc_for_distortion");
}

double rr_rc(LevelView s, double d_star) { return r_rc_unchecked(s, t_rc_for_distortion(s, d_star)); }

double dd_rc(LevelView s, double rate_bits) {
  require(std::isfinite(rate_bits) && rate_bits >= 0.0, "dd_rc: rate must be nonnegative");
  if (rate_bits == 0.0) return s.mean();
  return d_rc_unchecked(s, t_rc_for_rate(s, rate_bits));
}

RcPoint rc_point_at_rate(LevelView s, double rate_bits) {
  const double T = t_rc_for_rate(s, rate_bits);
  return {T, d_rc_unchecked(s, T), r_rc_unchecked(s, T)};
}

double d_rc_per_w(LevelView s, std::span<const double> w_sq, double T) {
  require_T(T, "d_rc_per_w");
  require(w_sq.size() == s.size(), "d_rc_per_w: one squared coordinate per level expected");
  double d = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    require(w_sq[j] >= 0.0, "d_rc_per_w: squared coordinates must be nonnegative");
    d += s.weights[j] * w_sq[j] * s.values[j] / (1.0 + s.values[j] * T);
  }
  return d;
}

double tau_at(LevelView s, std::span<const double> w_sq, double T) {
  require_T(T, "tau_at");
  require(w_sq.size() == s.size(), "tau: one squared coordinate per level expected");
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double g = s.values[j] / (1.0 + s.values[j] * T);
    num += s.weights[j] * w_sq[j] * g * g;
    den += s.weights[j] * g;
  }
  if (num == 0.0 || T == 0.0) return 0.0;
  return std::sqrt(T * num) / std::sqrt(den);
}

double tau(LevelView s, std::span<const double> w_sq, double rate_bits,
           std::optional<double> threshold) {
  require(std::isfinite(rate_bits) && rate_bits > 0.0, "tau: rate must be positive");
  require(w_sq.size() == s.size(), "tau: one squared coordinate per level expected");
  if (threshold) {
    require(*threshold >= 0.0, "tau: threshold must be nonnegative");
    const double w_inf = std::sqrt(*std::max_element(w_sq.begin(), w_sq.end()));
    if (w_inf > *threshold) return 0.0;
  }
  return tau_at(s, w_sq, t_rc_for_rate(s, rate_bits));
}

double quantize_tau(double tau_value, double w_inf_norm, double delta) {
  require(delta > 0.0, "quantize_tau: precision delta must be positive");
  require(w_inf_norm > 0.0, "quantize_tau: norm must be positive");
  const double step = delta * w_inf_norm;
  return step * std::round(tau_value / step);
}

double dd_rc_eigen_sensitivity(LevelView s, double rate_bits, std::size_t level) {
  require(level < s.size(), "dd_rc_eigen_sensitivity: level index out of range");
  const double T = t_rc_for_rate(s, rate_bits);
  double sum_sq = 0.0, sum_g = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double g = s.values[j] / (1.0 + s.values[j] * T);
    sum_sq += s.weights[j] * g * g;
    sum_g += s.weights[j] * g;
  }
  const double a = 1.0 / (1.0 + s.values[level] * T);
  return a * a + sum_sq * T * a / sum_g;
}

}  // namespace rdgap
