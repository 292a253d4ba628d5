#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bernegger {

using RealFunction = std::function<double(double)>;

/// A candidate exposure curve: G together with its analytic first and second
/// derivatives on [0,1].
struct ExposureCurve {
  RealFunction g;
  RealFunction dg;
  RealFunction d2g;
  std::string label;
};

inline constexpr int kDefaultValidationGrid = 1001;

struct ValidationReport {
  bool starts_at_zero = false;    // |G(0)| <= 1e-12
  bool ends_at_one = false;       // |G(1) - 1| <= 1e-12
  bool positive_slope_at_zero = false;
  bool non_decreasing = false;    // min G' >= -1e-12 on the grid
  bool concave = false;           // max G'' <= 1e-9 on the grid
  bool derivative_consistent = false;  // G' vs central differences of G
  double min_slope = 0.0;
  double max_curvature = 0.0;
  double max_derivative_error = 0.0;

  bool passed() const {
    return starts_at_zero && ends_at_one && positive_slope_at_zero &&
           non_decreasing && concave && derivative_consistent;
  }
  // Names of the failed checks, comma separated; empty when passed.
  std::string failures() const;
};

/// Grid check of the exposure-curve definition. Throws InvalidCurveError if
/// any of G, G', G'' is non-finite at a grid point.
ValidationReport validate_exposure_curve(const ExposureCurve& curve,
                                         int grid_points = kDefaultValidationGrid);

/// Distribution of a normalized loss on [0,1]: an absolutely continuous part
/// on [0,1) and an atom at 1.
class CensoredDistribution {
 public:
  CensoredDistribution() = default;
  // cdf_below_one is only queried on [0,1); cdf() returns 1 from z = 1 on.
  CensoredDistribution(RealFunction cdf_below_one, RealFunction pdf,
                       double point_mass, double mean,
                       RealFunction log_pdf = {});

  double cdf(double z) const;
  double pdf(double z) const { return pdf_(z); }
  double log_pdf(double z) const;
  double point_mass() const { return point_mass_; }
  double mean() const { return mean_; }

  const RealFunction& pdf_function() const { return pdf_; }

 private:
  RealFunction cdf_;
  RealFunction pdf_;
  RealFunction log_pdf_;
  double point_mass_ = 1.0;
  double mean_ = 1.0;
};

/// F(z) = 1 - G'(z)/G'(0), f = -G''/G'(0), p = G'(1)/G'(0), E[Z] = 1/G'(0).
/// The curve is validated first; failures raise InvalidCurveError.
CensoredDistribution curve_to_distribution(const ExposureCurve& curve);

struct ConditionalDensity {
  RealFunction pdf;
  double mean = 0.0;
};

/// Density and mean of Z given Z < 1.
ConditionalDensity conditional_distribution(const CensoredDistribution& dist);

/// Replaces the atom at 1 by q and rescales the continuous part to 1 - q.
CensoredDistribution one_inflate(const CensoredDistribution& dist, double q);

/// Curve of the mixture w*F + (1-w)*delta_1. Here w is the weight of the
/// distribution; the curve itself is alpha*G + (1-alpha)*z with
/// alpha = w / (w + (1-w)G'(0)).
ExposureCurve blend_with_identity(const ExposureCurve& curve, double w);

ExposureCurve identity_curve();

struct MixtureWeights {
  std::vector<double> alphas;     // curve weights
  std::vector<double> derived_w;  // distribution weights
};

/// Convex combination of curves; the induced distribution is sum w_i F_i with
/// w_i = alpha_i G_i'(0) / sum_j alpha_j G_j'(0).
std::pair<ExposureCurve, MixtureWeights> mix_curves(
    std::span<const ExposureCurve> curves, std::span<const double> alphas);

/// Generalized inverse of the cdf; returns exactly 1 on the censoring atom.
double quantile(const CensoredDistribution& dist, double u);

/// Uniforms in (0,1) from a seeded 64-bit Mersenne Twister using the top 53
/// bits, so the stream is identical across standard libraries.
std::vector<double> uniform_stream(std::size_t n, std::uint64_t seed);

/// n inverse-cdf draws. Quantiles are computed in parallel; output depends
/// only on (dist, n, seed).
std::vector<double> sample(const CensoredDistribution& dist, std::size_t n,
                           std::uint64_t seed);
/// Serial reference of sample().
std::vector<double> sample_serial(const CensoredDistribution& dist,
                                  std::size_t n, std::uint64_t seed);

}  // namespace bernegger
