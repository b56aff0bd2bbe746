// rdgap: rdrc.hpp
// Universal random-coding rate-distortion curve and the codebook scale tau.
//
// For a parameter T >= 0:
//
//   D_rc(T) = sum_j w_j v_j / (1 + v_j T)
//   R_rc(T) = 1/2 sum_j w_j log2(1 + v_j T)              [bits per dimension]
//
// This is also the additive (noise + MMSE filter) rate-distortion tradeoff.
#pragma once

#include <optional>
#include <span>

#include "rdgap/spectrum.hpp"

namespace rdgap {

struct RcPoint {
  double level_T;
  double distortion;
  double rate_bits;
};

double d_rc(LevelView s, double T);
double r_rc(LevelView s, double T);

/// Unique T with r_rc(s, T) = rate_bits (rate_bits > 0). The bracket starts
/// at [0, 1] and doubles up to 2^200.
double t_rc_for_rate(LevelView s, double rate_bits);

/// Unique T with d_rc(s, T) = d_star, for 0 < d_star < mean.
double t_rc_for_distortion(LevelView s, double d_star);

double rr_rc(LevelView s, double d_star);

/// dd_rc(s, 0) is the mean eigenvalue.
double dd_rc(LevelView s, double rate_bits);

RcPoint rc_point_at_rate(LevelView s, double rate_bits);

/// Realization-dependent distortion sum_j w_j V_j^2 v_j / (1 + v_j T), with
/// squared coordinates V_j^2 given in the eigenbasis. With a per-coordinate
/// view (Levels::per_coordinate) this is the (1/n) sum over coordinates; with
/// a per-level view each entry is the mean squared coordinate of that level.
double d_rc_per_w(LevelView s, std::span<const double> w_sq, double T);

/// Codebook scale for a known T:
///   tau = sqrt(T sum_j w_j V_j^2 v_j^2 / (1+v_j T)^2) / sqrt(sum_j w_j v_j / (1+v_j T)).
double tau_at(LevelView s, std::span<const double> w_sq, double T);

/// Codebook scale at a target rate. When `threshold` is set and the largest
/// |V_j| exceeds it, tau is 0 (encode to zero). Always 0 <= tau <= max |V_j|.
double tau(LevelView s, std::span<const double> w_sq, double rate_bits,
           std::optional<double> threshold = std::nullopt);

/// Round-to-nearest quantization of tau on the grid delta * w_inf_norm * Z.
double quantize_tau(double tau_value, double w_inf_norm, double delta);

/// Derivative of n * dd_rc at fixed rate with respect to one eigenvalue at
/// level `level` (the other eigenvalues held fixed, no renormalization).
/// Lies in [0, 2].
double dd_rc_eigen_sensitivity(LevelView s, double rate_bits, std::size_t level);

}  // namespace rdgap
