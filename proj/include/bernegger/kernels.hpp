#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bernegger/exposure_core.hpp"

namespace bernegger {

// Observations per reduction block. Block sums are combined pairwise in block
// order, so the result does not depend on the thread count.
inline constexpr std::size_t kReductionBlock = 2048;

struct LogDensitySum {
  double sum = 0.0;
  // Smallest index whose log-density is not finite; sum is -inf then.
  std::optional<std::size_t> first_invalid;
};

/// Sum of log_density(z_i), OpenMP-parallel over blocks.
LogDensitySum sum_log_density(std::span<const double> z, const RealFunction& log_density);
/// Serial reference with the same blocking, hence bit-identical results.
LogDensitySum sum_log_density_serial(std::span<const double> z, const RealFunction& log_density);

/// Gaussian kernel density of the points, renormalized to unit mass on
/// [0,1), evaluated at each grid point.
std::vector<double> kde_evaluate(std::span<const double> points, double bandwidth,
                                 std::span<const double> grid);
std::vector<double> kde_evaluate_serial(std::span<const double> points, double bandwidth,
                                        std::span<const double> grid);

}  // namespace bernegger
