#include "bernegger/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bernegger/errors.hpp"

namespace bernegger {

namespace {

struct BlockSum {
  double sum = 0.0;
  std::size_t first_invalid = std::numeric_limits<std::size_t>::max();
};

BlockSum block_sum(std::span<const double> z, std::size_t block, const RealFunction& log_density) {
  const std::size_t begin = block * kReductionBlock;
  const std::size_t end = std::min(z.size(), begin + kReductionBlock);
  BlockSum out;
  for (std::size_t i = begin; i < end; ++i) {
    const double v = log_density(z[i]);
    if (!std::isfinite(v)) {
      out.first_invalid = i;
      break;
    }
    out.sum += v;
  }
  return out;
}

// Pairwise combination in place; sums[0] holds the result.
double pairwise(std::vector<double>& sums) {
  if (sums.empty()) return 0.0;
  for (std::size_t stride = 1; stride < sums.size(); stride *= 2)
    for (std::size_t i = 0; i + stride < sums.size(); i += 2 * stride) sums[i] += sums[i + stride];
  return sums[0];
}

LogDensitySum finish(std::vector<BlockSum>& blocks) {
  LogDensitySum out;
  std::vector<double> sums(blocks.size());
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].first_invalid != std::numeric_limits<std::size_t>::max()) {
      out.sum = -std::numeric_limits<double>::infinity();
      out.first_invalid = blocks[k].first_invalid;
      return out;
    }
    sums[k] = blocks[k].sum;
  }
  out.sum = pairwise(sums);
  return out;
}

std::size_t block_count(std::size_t n) { return (n + kReductionBlock - 1) / kReductionBlock; }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

void check_bandwidth(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("kde: bandwidth must be positive");
}

// Mass of the kernel mixture on [0,1), used for renormalization.
double kde_mass(std::span<const double> points, double h) {
  double mass = 0.0;
  for (double x : points) mass += normal_cdf((1.0 - x) / h) - normal_cdf(-x / h);
  return mass / static_cast<double>(points.size());
}

double kde_at(std::span<const double> points, double h, double norm, double x) {
  double s = 0.0;
  for (double xi : points) {
    const double t = (x - xi) / h;
    s += std::exp(-0.5 * t * t);
  }
  return s * norm;
}

}  // namespace

LogDensitySum sum_log_density(std::span<const double> z, const RealFunction& log_density) {
  const std::size_t nb = block_count(z.size());
  std::vector<BlockSum> blocks(nb);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(nb); ++k)
    blocks[k] = block_sum(z, static_cast<std::size_t>(k), log_density);
  return finish(blocks);
}

LogDensitySum sum_log_density_serial(std::span<const double> z, const RealFunction& log_density) {
  const std::size_t nb = block_count(z.size());
  std::vector<BlockSum> blocks(nb);
  for (std::size_t k = 0; k < nb; ++k) blocks[k] = block_sum(z, k, log_density);
  return finish(blocks);
}

std::vector<double> kde_evaluate(std::span<const double> points, double bandwidth,
                                 std::span<const double> grid) {
  check_bandwidth(bandwidth);
  std::vector<double> out(grid.size(), 0.0);
  if (points.empty()) return out;
  const double norm = 1.0 / (static_cast<double>(points.size()) * bandwidth *
                             std::sqrt(2.0 * std::numbers::pi) * kde_mass(points, bandwidth));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid.size()); ++i)
    out[i] = kde_at(points, bandwidth, norm, grid[i]);
  return out;
}

std::vector<double> kde_evaluate_serial(std::span<const double> points, double bandwidth,
                                        std::span<const double> grid) {
  check_bandwidth(bandwidth);
  std::vector<double> out(grid.size(), 0.0);
  if (points.empty()) return out;
  const double norm = 1.0 / (static_cast<double>(points.size()) * bandwidth *
                             std::sqrt(2.0 * std::numbers::pi) * kde_mass(points, bandwidth));
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = kde_at(points, bandwidth, norm, grid[i]);
  return out;
}

}  // namespace bernegger
