// rdgap: gapopt.cpp
#include "rdgap/gapopt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "parallel.hpp"
#include "rdgap/errors.hpp"
#include "rdgap/format.hpp"
#include "rdgap/nelder_mead.hpp"
#include "rdgap/random.hpp"
#include "rdgap/rdrc.hpp"
#include "rdgap/waterfill.hpp"

namespace rdgap {

using detail::require;

GapRecord gap_at(const Spectrum& s, double d_star) {
  require(d_star > 0.0 && d_star < 1.0, "gap_at: distortion must lie in (0, 1)");
  GapRecord rec;
  rec.spectrum = s;
  rec.d_star = d_star;
  rec.level_t = t_for_distortion(s, d_star);
  rec.level_T = t_rc_for_distortion(s, d_star);
  rec.rate_wf_bits = r_wf(s, rec.level_t);
  rec.rate_rc_bits = r_rc(s, rec.level_T);
  rec.gap_bits = rec.rate_rc_bits - rec.rate_wf_bits;
  return rec;
}

double gap_bits(LevelView s, double d_star) { return rr_rc(s, d_star) - rr_wf(s, d_star); }

std::vector<double> RateGradients::gap() const {
  std::vector<double> g(rate_rc.size());
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = rate_rc[j] - rate_wf[j];
  return g;
}

RateGradients grad_rates(LevelView s, double d_star, double kink_rel_tol) {
  RateGradients g;
  g.level_t = t_for_distortion(s, d_star);
  g.level_T = t_rc_for_distortion(s, d_star);
  const double t = g.level_t, T = g.level_T;

  for (std::size_t j = 0; j < s.size(); ++j) {
    if (std::abs(s.values[j] - t) <= kink_rel_tol * t) {
      throw NumericError("grad_rates: level " + std::to_string(j) +
                         " coincides with the water level; R_wf has a kink there");
    }
  }

  double sum_g = 0.0, sum_g2 = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double gj = s.values[j] / (1.0 + s.values[j] * T);
    sum_g += s.weights[j] * gj;
    sum_g2 += s.weights[j] * gj * gj;
  }
  // dT/dv_j at fixed distortion is w_j / (1 + v_j T)^2 / sum_g2
  const double a = sum_g / sum_g2;
  const double half_ln2 = 0.5 / std::numbers::ln2;

  g.rate_wf.resize(s.size());
  g.rate_rc.resize(s.size());
  g.active.resize(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double v = s.values[j], w = s.weights[j];
    g.active[j] = v > t;
    g.rate_wf[j] = w * half_ln2 / (g.active[j] ? v : t);
    const double b = 1.0 / (1.0 + v * T);
    g.rate_rc[j] = w * half_ln2 * (T * b + a * b * b);
  }
  return g;
}

namespace {

constexpr double kLogLevelGrid[] = {-6.0, -4.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 4.0};
constexpr double kLogitGrid[] = {-3.0, -1.5, 0.0, 1.5, 3.0};
constexpr std::size_t kLevelChoices = std::size(kLogLevelGrid);
constexpr std::size_t kLogitChoices = std::size(kLogitGrid);
constexpr double kCoordClamp = 35.0;

// Unconstrained coordinates for k levels: k-1 log-levels and k-1 weight
// logits, level 0 pinned at (log-level 0, logit 0). Values go through exp
// and weights through softmax; the result is rescaled to unit mean.
Levels decode(std::span<const double> x, int k) {
  const auto m = static_cast<std::size_t>(k - 1);
  Levels lv;
  lv.values.assign(static_cast<std::size_t>(k), 1.0);
  lv.weights.assign(static_cast<std::size_t>(k), 1.0);
  double max_logit = 0.0;
  for (std::size_t j = 0; j < m; ++j) max_logit = std::max(max_logit, std::clamp(x[m + j], -kCoordClamp, kCoordClamp));
  lv.weights[0] = std::exp(-max_logit);
  double wsum = lv.weights[0];
  for (std::size_t j = 0; j < m; ++j) {
    lv.values[j + 1] = std::exp(std::clamp(x[j], -kCoordClamp, kCoordClamp));
    lv.weights[j + 1] = std::exp(std::clamp(x[m + j], -kCoordClamp, kCoordClamp) - max_logit);
    wsum += lv.weights[j + 1];
  }
  double mean = 0.0;
  for (std::size_t j = 0; j < lv.values.size(); ++j) {
    lv.weights[j] /= wsum;
    mean += lv.weights[j] * lv.values[j];
  }
  for (double& v : lv.values) v /= mean;
  return lv;
}

std::vector<double> grid_cell(std::uint64_t index, int k) {
  const auto m = static_cast<std::size_t>(k - 1);
  std::vector<double> x(2 * m);
  for (std::size_t j = 0; j < m; ++j) {
    x[j] = kLogLevelGrid[index % kLevelChoices];
    index /= kLevelChoices;
    x[m + j] = kLogitGrid[index % kLogitChoices];
    index /= kLogitChoices;
  }
  return x;
}

struct PerK {
  GapRecord record;
  int restarts = 0;
  int converged = 0;
  long evaluations = 0;
};

PerK search_k(double d_star, int k, const SearchConfig& cfg) {
  const Objective objective = [&](std::span<const double> x) {
    const Levels lv = decode(x, k);
    try {
      return -gap_bits(lv, d_star);
    } catch (const NumericError&) {
      return HUGE_VAL;
    }
  };

  std::uint64_t total = 1;
  for (int j = 0; j < k - 1; ++j) total *= kLevelChoices * kLogitChoices;
  std::vector<std::uint64_t> cells;
  if (total <= static_cast<std::uint64_t>(cfg.grid_cells_per_k)) {
    cells.resize(total);
    std::iota(cells.begin(), cells.end(), std::uint64_t{0});
  } else {
    RandomStream rng(cfg.seed, StreamDomain::kSearch, static_cast<std::uint64_t>(k));
    for (int c = 0; c < cfg.grid_cells_per_k; ++c) cells.push_back(rng.next_u64() % total);
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  }

  PerK out;
  std::vector<std::pair<double, std::uint64_t>> scored;
  scored.reserve(cells.size());
  for (std::uint64_t cell : cells) {
    scored.emplace_back(objective(grid_cell(cell, k)), cell);
    ++out.evaluations;
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  SimplexOptions opts;
  opts.max_evaluations = cfg.max_evaluations;
  opts.x_tolerance = cfg.x_tolerance;
  opts.f_tolerance = cfg.f_tolerance;

  std::vector<double> best_x;
  double best_value = HUGE_VAL;
  const std::size_t starts = std::min<std::size_t>(scored.size(), static_cast<std::size_t>(cfg.restarts_per_k));
  for (std::size_t r = 0; r < starts; ++r) {
    SimplexResult run = nelder_mead(objective, grid_cell(scored[r].second, k), opts);
    // one fresh simplex from the first optimum guards against collapse
    opts.initial_step = 0.1;
    SimplexResult polish = nelder_mead(objective, run.x, opts);
    opts.initial_step = 0.5;
    out.evaluations += run.evaluations + polish.evaluations;
    ++out.restarts;
    if (polish.converged) ++out.converged;
    if (polish.value < best_value) {
      best_value = polish.value;
      best_x = polish.x;
    }
  }

  const Levels lv = decode(best_x, k);
  const Spectrum cleaned = merge_close(Spectrum::from_levels(lv.values, lv.weights), cfg.merge_tolerance);
  out.record = gap_at(cleaned, d_star);
  return out;
}

}  // namespace

GapSearch maximize_gap(double d_star, int k_max, const SearchConfig& search) {
  require(d_star > 0.0 && d_star < 1.0, "maximize_gap: distortion must lie in (0, 1)");
  require(k_max >= 1 && k_max <= 5, "maximize_gap: k_max must lie in [1, 5]");
  require(search.restarts_per_k >= 1 && search.grid_cells_per_k >= 1 && search.max_evaluations >= 1,
          "maximize_gap: search budget must be positive");

  GapSearch result;
  result.best = gap_at(Spectrum::flat(), d_star);
  for (int k = 2; k <= k_max; ++k) {
    PerK pk = search_k(d_star, k, search);
    result.diagnostics.restarts += pk.restarts;
    result.diagnostics.converged += pk.converged;
    result.diagnostics.evaluations += pk.evaluations;
    if (k == 5 && pk.record.spectrum.size() == 5) result.diagnostics.any_five_level_optimum = true;
    if (pk.record.gap_bits > result.best.gap_bits) result.best = std::move(pk.record);
  }
  result.diagnostics.best_level_count = static_cast<int>(result.best.spectrum.size());
  return result;
}

SweepResult sweep(std::span<const double> d_grid, int k_max, const SearchConfig& search,
                  unsigned threads) {
  require(!d_grid.empty(), "sweep: empty distortion grid");
  for (double d : d_grid) {
    require(d >= 0.005 - 1e-12 && d <= 0.995 + 1e-12, "sweep: grid must lie within [0.005, 0.995]");
  }
  SweepResult out;
  out.d_grid.assign(d_grid.begin(), d_grid.end());
  out.points.resize(d_grid.size());

  detail::parallel_for(d_grid.size(), threads, [&](std::size_t i) {
    out.points[i] = maximize_gap(d_grid[i], k_max, search);
  });

  for (std::size_t i = 1; i < out.points.size(); ++i) {
    if (out.points[i].best.gap_bits > out.points[out.argmax].best.gap_bits) out.argmax = i;
  }
  return out;
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream csv;
  csv << "d_star,rate_rc_bits,rate_wf_bits,gap_bits,levels,weights\n";
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const GapRecord& r = result.points[i].best;
    csv << format_short(result.d_grid[i]) << ',' << format_fixed(r.rate_rc_bits, 6) << ','
        << format_fixed(r.rate_wf_bits, 6) << ',' << format_fixed(r.gap_bits, 6) << ',';
    for (std::size_t j = 0; j < r.spectrum.size(); ++j) {
      csv << (j ? ";" : "") << format_level(r.spectrum.values()[j]);
    }
    csv << ',';
    for (std::size_t j = 0; j < r.spectrum.size(); ++j) {
      csv << (j ? ";" : "") << format_level(r.spectrum.weights()[j]);
    }
    csv << '\n';
  }
  return csv.str();
}

std::vector<double> default_distortion_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 199; ++i) grid.push_back(i / 200.0);
  return grid;
}

}  // namespace rdgap
