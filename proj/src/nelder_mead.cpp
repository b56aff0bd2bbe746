// rdgap: nelder_mead.cpp
#include "rdgap/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rdgap/errors.hpp"

namespace rdgap {

SimplexResult nelder_mead(const Objective& f, std::vector<double> x0,
                          const SimplexOptions& options) {
  detail::require(!x0.empty(), "nelder_mead: empty starting point");
  const std::size_t dim = x0.size();

  SimplexResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    const double v = f(x);
    return std::isnan(v) ? HUGE_VAL : v;
  };

  std::vector<std::vector<double>> simplex(dim + 1, x0);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += options.initial_step;
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), trial(dim), trial2(dim);

  auto along = [&](double coef, const std::vector<double>& worst, std::vector<double>& out) {
    for (std::size_t d = 0; d < dim; ++d) out[d] = centroid[d] + coef * (worst[d] - centroid[d]);
  };

  while (true) {
    // stable ordering keeps ties deterministic
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[dim - 1];

    double x_spread = 0.0;
    for (std::size_t i = 0; i <= dim; ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        x_spread = std::max(x_spread, std::abs(simplex[i][d] - simplex[best][d]));
      }
    }
    if (values[worst] - values[best] <= options.f_tolerance && x_spread <= options.x_tolerance) {
      result.converged = true;
      break;
    }
    if (result.evaluations >= options.max_evaluations) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    along(-1.0, simplex[worst], trial);
    const double f_reflect = eval(trial);
    if (f_reflect < values[best]) {
      along(-2.0, simplex[worst], trial2);
      const double f_expand = eval(trial2);
      if (f_expand < f_reflect) {
        simplex[worst] = trial2;
        values[worst] = f_expand;
      } else {
        simplex[worst] = trial;
        values[worst] = f_reflect;
      }
      continue;
    }
    if (f_reflect < values[second]) {
      simplex[worst] = trial;
      values[worst] = f_reflect;
      continue;
    }
    // contraction: outside if the reflection improved on the worst vertex
    const bool outside = f_reflect < values[worst];
    along(outside ? -0.5 : 0.5, simplex[worst], trial2);
    const double f_contract = eval(trial2);
    if (f_contract < (outside ? f_reflect : values[worst])) {
      simplex[worst] = trial2;
      values[worst] = f_contract;
      continue;
    }
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      for (std::size_t d = 0; d < dim; ++d) {
        simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
      }
      values[i] = eval(simplex[i]);
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  const auto best_idx = static_cast<std::size_t>(best_it - values.begin());
  result.x = simplex[best_idx];
  result.value = *best_it;
  return result;
}

}  // namespace rdgap
