// rdgap: gapopt.hpp
// Universality rate gap between the random-coding and waterfilling curves at
// equal distortion, its gradients, and the worst-case search over spectra.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rdgap/spectrum.hpp"

namespace rdgap {

struct GapRecord {
  Spectrum spectrum = Spectrum::flat();
  double d_star = 0.0;
  double rate_wf_bits = 0.0;
  double rate_rc_bits = 0.0;
  double gap_bits = 0.0;
  double level_t = 0.0;  // water level
  double level_T = 0.0;  // random-coding parameter
};

/// Both rates at distortion d_star for the given spectrum.
GapRecord gap_at(const Spectrum& s, double d_star);

/// rr_rc - rr_wf on raw levels (no canonicalization); the optimizer's
/// objective.
double gap_bits(LevelView s, double d_star);

/// Per-level derivatives of the per-dimension rates with respect to the
/// level values (weights fixed, no unit-mean projection).
struct RateGradients {
  std::vector<double> rate_wf;
  std::vector<double> rate_rc;
  std::vector<bool> active;  // v_j > t
  double level_t = 0.0;
  double level_T = 0.0;

  std::vector<double> gap() const;
};

/// Throws NumericError when some level sits within kink_rel_tol * t of the
/// water level, where R_wf is not differentiable.
RateGradients grad_rates(LevelView s, double d_star, double kink_rel_tol = 1e-9);

struct SearchConfig {
  std::uint64_t seed = 1;
  int restarts_per_k = 16;       // simplex refinements per level count k >= 2
  int grid_cells_per_k = 512;    // coarse-grid cells scored per k (all if fewer exist)
  int max_evaluations = 1500;    // per simplex run
  double x_tolerance = 1e-7;
  double f_tolerance = 1e-12;
  double merge_tolerance = 1e-5;  // merge_close cleanup of the returned spectrum
};

struct SearchDiagnostics {
  int restarts = 0;
  int converged = 0;
  long evaluations = 0;
  int best_level_count = 0;
  bool any_five_level_optimum = false;  // some per-k optimum kept five distinct levels
};

struct GapSearch {
  GapRecord best;
  SearchDiagnostics diagnostics;
};

/// Best gap over spectra with at most k_max distinct levels (1 <= k_max <= 5)
/// via coarse grid scoring plus multi-start simplex refinement.
/// Deterministic in search.seed; the result for k_max is never below the
/// result for a smaller k_max with the same config.
GapSearch maximize_gap(double d_star, int k_max, const SearchConfig& search);

struct SweepResult {
  std::vector<double> d_grid;
  std::vector<GapSearch> points;
  std::size_t argmax = 0;

  const GapRecord& global_max() const { return points.at(argmax).best; }
};

/// maximize_gap at every grid point (each within [0.005, 0.995]); `threads`
/// workers, results reduced in grid order.
SweepResult sweep(std::span<const double> d_grid, int k_max, const SearchConfig& search,
                  unsigned threads = 1);

/// CSV table `d_star,rate_rc_bits,rate_wf_bits,gap_bits,levels,weights`
/// (rates and gap to 6 decimals, levels/weights `;`-joined).
std::string sweep_csv(const SweepResult& result);

/// Default grid 0.005, 0.010, ..., 0.995.
std::vector<double> default_distortion_grid();

}  // namespace rdgap
