#include "bernegger/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bernegger/errors.hpp"

namespace bernegger {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

}  // namespace

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                          std::vector<double> x0, const SimplexOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0) throw DomainError("nelder_mead: empty starting point");
  if (!(options.initial_step > 0.0)) throw DomainError("nelder_mead: initial_step must be positive");

  SimplexResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    const double v = objective(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += options.initial_step;
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);

  auto point_along = [&](double t, std::vector<double>& out) {
    // centroid + t * (centroid - worst)
    const auto& worst = simplex[order[n]];
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + t * (centroid[j] - worst[j]);
  };

  while (true) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const double best = values[order[0]];
    const double worst = values[order[n]];
    if (std::isfinite(worst) && worst - best < options.tolerance) {
      result.converged = true;
      break;
    }
    if (result.evaluations >= options.max_evaluations) break;
    ++result.iterations;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[order[i]][j];
    for (double& c : centroid) c /= static_cast<double>(n);

    const std::size_t w = order[n];
    const double second_worst = values[order[n - 1]];
    point_along(kReflect, trial);
    const double fr = eval(trial);

    if (fr < best) {
      point_along(kExpand, trial2);
      const double fe = eval(trial2);
      if (fe < fr) {
        simplex[w] = trial2;
        values[w] = fe;
      } else {
        simplex[w] = trial;
        values[w] = fr;
      }
      continue;
    }
    if (fr < second_worst) {
      simplex[w] = trial;
      values[w] = fr;
      continue;
    }
    // Outside contraction when the reflection improved on the worst point,
    // inside contraction otherwise.
    const bool outside = fr < worst;
    point_along(outside ? kContract : -kContract, trial2);
    const double fc = eval(trial2);
    if (fc < (outside ? fr : worst)) {
      simplex[w] = trial2;
      values[w] = fc;
      continue;
    }
    const auto& x_best = simplex[order[0]];
    for (std::size_t i = 1; i <= n; ++i) {
      auto& x = simplex[order[i]];
      for (std::size_t j = 0; j < n; ++j) x[j] = x_best[j] + kShrink * (x[j] - x_best[j]);
      values[order[i]] = eval(x);
    }
  }

  const std::size_t best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  result.x = simplex[best];
  result.value = values[best];
  return result;
}

}  // namespace bernegger
