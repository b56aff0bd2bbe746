// rdgap: waterfill.hpp
// Oracle (reverse waterfilling) rate-distortion curve.
//
// For a water level t > 0 and eigenvalue levels v_j with weights w_j:
//
//   D_wf(t) = sum_j w_j min(v_j, t)
//   R_wf(t) = 1/2 sum_j w_j max(0, log2(v_j / t))      [bits per dimension]
//
// All functions accept any LevelView, so they also work on unnormalized
// levels; for a Spectrum the mean is one and distortions lie in (0, 1].
#pragma once

#include <vector>

#include "rdgap/spectrum.hpp"

namespace rdgap {

struct WfPoint {
  double level_t;
  double distortion;
  double rate_bits;
};

double d_wf(LevelView s, double t);
double r_wf(LevelView s, double t);

/// Water level t with d_wf(s, t) = d_star, for 0 < d_star < mean.
double t_for_distortion(LevelView s, double d_star);

/// Minimum oracle rate at distortion d_star.
double rr_wf(LevelView s, double d_star);

/// Oracle distortion at a given rate; dd_wf(s, 0) is the mean eigenvalue.
double dd_wf(LevelView s, double rate_bits);

/// D_j = min(t / v_j, 1) per level (1 for zero levels).
std::vector<double> per_coord_distortions(LevelView s, double t);

WfPoint wf_point_at_distortion(LevelView s, double d_star);

}  // namespace rdgap
