// rdgap: spectrum.cpp
#include "rdgap/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <utility>

#include "rdgap/errors.hpp"
#include "rdgap/random.hpp"

namespace rdgap {

using detail::require;

double LevelView::mean() const {
  double m = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) m += weights[j] * values[j];
  return m;
}

double LevelView::max_value() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, v);
  return m;
}

Levels Levels::per_coordinate(std::span<const double> eigenvalues) {
  require(!eigenvalues.empty(), "per_coordinate: empty eigenvalue vector");
  Levels out;
  out.values.assign(eigenvalues.begin(), eigenvalues.end());
  out.weights.assign(eigenvalues.size(), 1.0 / static_cast<double>(eigenvalues.size()));
  return out;
}

Spectrum Spectrum::from_levels(std::span<const double> values,
                               std::span<const double> weights) {
  require(!values.empty(), "spectrum: no levels given");
  require(values.size() == weights.size(), "spectrum: values and weights differ in length");

  std::vector<std::pair<double, double>> levels;
  levels.reserve(values.size());
  double weight_sum = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    require(std::isfinite(values[j]) && values[j] >= 0.0,
            "spectrum: eigenvalue levels must be finite and nonnegative");
    require(std::isfinite(weights[j]) && weights[j] >= 0.0,
            "spectrum: weights must be finite and nonnegative");
    if (weights[j] == 0.0) continue;
    levels.emplace_back(values[j], weights[j]);
    weight_sum += weights[j];
  }
  require(!levels.empty(), "spectrum: all weights are zero");

  std::sort(levels.begin(), levels.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<double> vs, ws;
  for (const auto& [v, w] : levels) {
    if (!vs.empty() && vs.back() == v) {
      ws.back() += w;
    } else {
      vs.push_back(v);
      ws.push_back(w);
    }
  }
  double mean = 0.0;
  for (std::size_t j = 0; j < vs.size(); ++j) {
    ws[j] /= weight_sum;
    mean += ws[j] * vs[j];
  }
  require(mean > 0.0, "spectrum: at least one eigenvalue must be positive");
  for (double& v : vs) v /= mean;
  return Spectrum(std::move(vs), std::move(ws));
}

Spectrum Spectrum::from_eigenvalues(std::span<const double> raw) {
  require(!raw.empty(), "from_eigenvalues: empty input");
  const std::vector<double> unit(raw.size(), 1.0);
  return from_levels(raw, unit);
}

Spectrum Spectrum::flat() { return Spectrum({1.0}, {1.0}); }

Spectrum Spectrum::semi_flat(double active_fraction) {
  require(active_fraction > 0.0 && active_fraction <= 1.0,
          "semi_flat: active fraction must lie in (0, 1]");
  if (active_fraction == 1.0) return flat();
  return Spectrum({1.0 / active_fraction, 0.0}, {active_fraction, 1.0 - active_fraction});
}

Spectrum Spectrum::sample_random(int k, std::uint64_t seed) {
  require(k >= 1 && k <= 16, "sample_random: k must lie in [1, 16]");
  if (k == 1) return flat();
  RandomStream rng(seed, StreamDomain::kSpectrumSample, static_cast<std::uint64_t>(k));
  std::vector<double> values(static_cast<std::size_t>(k));
  std::vector<double> weights(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    // log-uniform over six decades; roughly one level in five is a zero level
    values[j] = std::exp((rng.uniform() - 0.5) * 6.0 * std::log(10.0));
    if (j > 0 && rng.uniform() < 0.2) values[j] = 0.0;
    weights[j] = std::exp(rng.normal());
  }
  return from_levels(values, weights);
}

std::string Spectrum::to_literal() const {
  std::ostringstream out;
  char buf[64];
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (j) out << ',';
    std::snprintf(buf, sizeof buf, "%.17g:%.17g", values_[j], weights_[j]);
    out << buf;
  }
  return out.str();
}

Spectrum merge_close(const Spectrum& s, double tol) {
  require(tol >= 0.0, "merge_close: tolerance must be nonnegative");
  if (tol == 0.0) return s;
  const auto& vs = s.values();
  const auto& ws = s.weights();
  std::vector<double> out_v, out_w;
  std::size_t j = 0;
  while (j < vs.size()) {
    const double anchor = vs[j];
    double mass = 0.0, moment = 0.0;
    while (j < vs.size() && anchor - vs[j] <= tol) {
      mass += ws[j];
      moment += ws[j] * vs[j];
      ++j;
    }
    out_v.push_back(moment / mass);
    out_w.push_back(mass);
  }
  return Spectrum::from_levels(out_v, out_w);
}

void check_spectrum_invariants(std::span<const double> values,
                               std::span<const double> weights) {
  require(!values.empty() && values.size() == weights.size(),
          "spectrum invariant: nonempty equal-length levels");
  double wsum = 0.0, mean = 0.0;
  bool any_positive = false;
  for (std::size_t j = 0; j < values.size(); ++j) {
    require(values[j] >= 0.0, "spectrum invariant: negative level");
    require(j == 0 || values[j] < values[j - 1], "spectrum invariant: levels not strictly decreasing");
    require(weights[j] > 0.0 && weights[j] <= 1.0, "spectrum invariant: weight outside (0, 1]");
    wsum += weights[j];
    mean += weights[j] * values[j];
    any_positive = any_positive || values[j] > 0.0;
  }
  require(std::abs(wsum - 1.0) <= 1e-12, "spectrum invariant: weights do not sum to one");
  require(std::abs(mean - 1.0) <= 1e-12, "spectrum invariant: mean eigenvalue is not one");
  require(any_positive, "spectrum invariant: no positive level");
}

Expansion expand_to_dimension(const Spectrum& s, std::size_t n) {
  require(n >= 1, "expand_to_dimension: n must be positive");
  const auto& ws = s.weights();
  const std::size_t k = ws.size();

  Expansion out;
  out.counts.assign(k, 0);
  std::vector<double> remainder(k);
  std::size_t assigned = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const double quota = ws[j] * static_cast<double>(n);
    out.counts[j] = static_cast<std::size_t>(std::floor(quota));
    remainder[j] = quota - std::floor(quota);
    assigned += out.counts[j];
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t r = 0; assigned < n; ++r, ++assigned) out.counts[order[r % k]] += 1;

  out.eigenvalues.reserve(n);
  double total = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    if (out.counts[j] == 0) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "level %zu (value %.6g, weight %.6g) received no dimension at n=%zu and was dropped",
                    j, s.values()[j], ws[j], n);
      out.warnings.emplace_back(buf);
    }
    for (std::size_t c = 0; c < out.counts[j]; ++c) {
      out.eigenvalues.push_back(s.values()[j]);
      total += s.values()[j];
    }
  }
  if (!(total > 0.0)) {
    throw InvalidArgument("expand_to_dimension: no positive eigenvalue survives apportionment");
  }
  const double scale = static_cast<double>(n) / total;
  if (scale != 1.0) {
    for (double& v : out.eigenvalues) v *= scale;
  }
  return out;
}

}  // namespace rdgap
