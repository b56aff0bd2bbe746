// Independent reference evaluations for the tests. Written directly from the
// curve definitions in long double with fixed-count bisection; shares no code
// with the library solvers.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

using Real = long double;

struct Levels {
  std::vector<Real> v;
  std::vector<Real> w;
};

inline Levels of(const std::vector<double>& v, const std::vector<double>& w) {
  return {std::vector<Real>(v.begin(), v.end()), std::vector<Real>(w.begin(), w.end())};
}

inline Real d_wf(const Levels& s, Real t) {
  Real d = 0;
  for (std::size_t j = 0; j < s.v.size(); ++j) d += s.w[j] * std::fmin(s.v[j], t);
  return d;
}

inline Real r_wf(const Levels& s, Real t) {
  Real r = 0;
  for (std::size_t j = 0; j < s.v.size(); ++j) {
    if (s.v[j] > t) r += s.w[j] * 0.5L * std::log2(s.v[j] / t);
  }
  return r;
}

inline Real d_rc(const Levels& s, Real T) {
  Real d = 0;
  for (std::size_t j = 0; j < s.v.size(); ++j) d += s.w[j] * s.v[j] / (1 + s.v[j] * T);
  return d;
}

inline Real r_rc(const Levels& s, Real T) {
  Real r = 0;
  for (std::size_t j = 0; j < s.v.size(); ++j) r += s.w[j] * 0.5L * std::log2(1 + s.v[j] * T);
  return r;
}

// Root of an increasing f on [lo, hi] after 400 halvings.
template <class F>
Real bisect(F f, Real lo, Real hi) {
  for (int i = 0; i < 400; ++i) {
    const Real mid = (lo + hi) / 2;
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

inline Real t_wf(const Levels& s, Real d) {
  Real top = 0;
  for (Real v : s.v) top = std::fmax(top, v);
  return bisect([&](Real t) { return d_wf(s, t) - d; }, 0, top);
}

inline Real rr_wf(const Levels& s, Real d) { return r_wf(s, t_wf(s, d)); }

inline Real t_rc_rate(const Levels& s, Real rate) {
  return bisect([&](Real T) { return r_rc(s, T) - rate; }, 0, 1e30L);
}

inline Real t_rc_dist(const Levels& s, Real d) {
  return bisect([&](Real T) { return d - d_rc(s, T); }, 0, 1e30L);
}

inline Real rr_rc(const Levels& s, Real d) { return r_rc(s, t_rc_dist(s, d)); }

inline Real dd_rc(const Levels& s, Real rate) { return d_rc(s, t_rc_rate(s, rate)); }

inline Real gap(const Levels& s, Real d) { return rr_rc(s, d) - rr_wf(s, d); }

}  // namespace oracle
