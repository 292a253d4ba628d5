#pragma once

#include <functional>
#include <span>
#include <vector>

namespace bernegger {

struct SimplexOptions {
  double initial_step = 0.5;
  // Stop once max - min of the simplex values drops below this.
  double tolerance = 1e-9;
  int max_evaluations = 10000;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Downhill simplex minimization. Non-finite objective values are treated
/// as +infinity, so the objective may signal infeasible points that way.
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                          std::vector<double> x0, const SimplexOptions& options = {});

}  // namespace bernegger
