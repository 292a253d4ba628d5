#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bernegger/exposure_core.hpp"
#include "bernegger/families.hpp"
#include "bernegger/nelder_mead.hpp"

namespace bernegger {

// z >= 1 - kCensorTol counts as censored.
inline constexpr double kCensorTol = 1e-12;

inline bool is_censored(double z) { return z >= 1.0 - kCensorTol; }

struct SplitSample {
  std::vector<double> uncensored;
  std::size_t censored = 0;
  std::size_t size() const { return uncensored.size() + censored; }
  double censored_fraction() const {
    return static_cast<double>(censored) / static_cast<double>(size());
  }
};

/// Throws DataError for a value outside [0,1] (beyond the censoring tolerance).
SplitSample split_sample(std::span<const double> sample);

enum class FitMode { standard, extended };

std::string_view to_string(FitMode mode);
FitMode parse_fit_mode(std::string_view text);

// Log-likelihoods. A non-positive density or point mass yields -infinity;
// when `diagnostic` is given it receives the reason.

/// sum log f(z_i) over z_i < 1 plus n_censored log p.
double loglik_standard(const CensoredDistribution& dist, const SplitSample& sample,
                       std::string* diagnostic = nullptr);
double loglik_standard(const Family& family, std::span<const double> theta,
                       std::span<const double> sample, std::string* diagnostic = nullptr);

/// sum log f0(z_i) over z_i < 1 with f0 = f/(1-p); the conditional
/// log-likelihood of the uncensored part.
double loglik_conditional(const CensoredDistribution& dist, const SplitSample& sample,
                          std::string* diagnostic = nullptr);

/// loglik_conditional + n_uncensored log(1-q) + n_censored log q. Terms with
/// a zero count are omitted, so q = 0 or q = 1 are admissible boundaries.
double loglik_extended(const CensoredDistribution& dist, double q, const SplitSample& sample,
                       std::string* diagnostic = nullptr);
double loglik_extended(const Family& family, std::span<const double> theta, double q,
                       std::span<const double> sample, std::string* diagnostic = nullptr);

double aic(double loglik_total, std::size_t k);

struct FitOptions {
  // Per-start budget of the screening runs.
  int screening_evaluations = 300;
  // Screening runs on an evenly strided subsample of about this many points;
  // 0 screens on the full sample. Polishing always uses every point.
  std::size_t screening_sample = 5000;
  SimplexOptions simplex{};
  // Tried before the family's own starting points.
  std::vector<std::vector<double>> extra_starts;
};

struct FitResult {
  std::string family;
  FitMode mode = FitMode::standard;
  ParamVector theta_hat;
  std::optional<double> q_hat;
  double loglik_total = 0.0;
  double loglik_conditional = 0.0;
  double aic = 0.0;
  double point_mass = 0.0;
  double mean = 0.0;
  std::size_t n = 0;
  std::size_t k = 0;
  bool converged = false;
  int iterations = 0;
  int evaluations = 0;
  // Largest |u_i| of the optimum in unconstrained coordinates; large values
  // mean the estimate sits against a bound of the fitting domain.
  double boundary_proximity = 0.0;
  bool at_boundary = false;
};

inline constexpr double kBoundaryThreshold = 8.0;

/// Maximum likelihood over the family's fitting domain. In extended mode q
/// is the censored fraction and only the conditional likelihood is
/// optimized over theta. Throws FitError when no start yields a finite
/// likelihood, or DataError for an empty sample.
FitResult fit(const Family& family, std::span<const double> sample, FitMode mode,
              const FitOptions& options = {});

struct Histogram {
  std::vector<double> edges;  // bins + 1 equally spaced edges of [0,1]
  std::vector<std::size_t> counts;
};

struct EmpiricalStats {
  std::size_t n = 0;
  std::size_t censored = 0;
  double point_mass_at_1 = 0.0;
  double mean = 0.0;
  Histogram histogram;  // uncensored points only
  double bandwidth = 0.0;  // 0 when there are too few points for a kde
  std::vector<double> kde_grid;
  std::vector<double> kde;
};

/// Throws DataError on an empty sample or a value outside (0,1].
EmpiricalStats empirical_stats(std::span<const double> sample, int bins = 50, int kde_points = 200);

/// 0.9 min(sd, IQR/1.34) m^(-1/5); 0 when it cannot be formed.
double kde_bandwidth(std::span<const double> points);

struct ComparisonRow {
  std::string family;
  std::string mode;  // empty for the empirical row
  std::string status;  // "ok", "boundary", "not-converged", "failed: ..."
  std::size_t k = 0;
  double point_mass = 0.0;
  double mean = 0.0;
  std::optional<double> loglik_conditional;
  std::optional<double> loglik_total;
  std::optional<double> aic;
  std::optional<FitResult> fit;
};

/// First row is the empirical row; fitted rows follow sorted by AIC, ties
/// broken by k and then by name; failed rows come last.
struct ComparisonTable {
  std::vector<ComparisonRow> rows;
};

ComparisonTable compare(std::span<const Family* const> families, std::span<const double> sample,
                        std::span<const FitMode> modes, const FitOptions& options = {});

std::string to_csv(const ComparisonTable& table);
std::string to_json(const ComparisonTable& table);
std::string to_json(const FitResult& result);
std::string to_json(const EmpiricalStats& stats);

}  // namespace bernegger
