// rdgap: nelder_mead.hpp
// Derivative-free simplex minimizer (Nelder-Mead with the standard
// reflection/expansion/contraction/shrink coefficients 1, 2, 1/2, 1/2).
#pragma once

#include <functional>
#include <span>
#include <vector>

namespace rdgap {

struct SimplexOptions {
  double initial_step = 0.5;
  int max_evaluations = 2000;
  double x_tolerance = 1e-8;   // max vertex distance (inf-norm) from the best vertex
  double f_tolerance = 1e-12;  // spread of objective values across the simplex
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

SimplexResult nelder_mead(const Objective& f, std::vector<double> x0,
                          const SimplexOptions& options = {});

}  // namespace rdgap
