#pragma once

#include <optional>
#include <string_view>

#include "bernegger/exposure_core.hpp"

namespace bernegger {

struct MbbefdParams {
  double b = 0.0;
  double g = 1.0;

  // g = 1 or b = 0: the identity curve, all mass at 1.
  bool degenerate() const { return g == 1.0 || b == 0.0; }
};

/// The (a, b) coordinates in which the curve reads log(a + b^z) up to
/// normalization.
struct AbParams {
  double a = 0.0;
  double b = 0.0;
};

enum class Shape { monotone_decreasing, unimodal, monotone_increasing, multimodal };

std::string_view to_string(Shape shape);

struct ShapeReport {
  Shape shape = Shape::monotone_decreasing;
  std::optional<double> mode;  // present iff shape == unimodal
};

inline constexpr double kMbbefdBranchTol = 1e-10;

enum class MbbefdBranch { identity, b_equals_one, bg_equals_one, general };

/// Which of the four closed forms applies; |b-1| and |bg-1| within 1e-10 are
/// routed to the limit branches.
MbbefdBranch mbbefd_branch(const MbbefdParams& params);

ExposureCurve mbbefd_curve(const MbbefdParams& params);

/// Closed-form cdf, density, p = 1/g and mean. Requires g > 1 and b > 0.
CensoredDistribution mbbefd_distribution(const MbbefdParams& params);

/// Derivative of the density on [0,1).
double mbbefd_pdf_derivative(const MbbefdParams& params, double z);

ShapeReport classify_shape(const MbbefdParams& params);

/// Density through the logistic density psi'(t) = e^t / (e^t + 1)^2; bg < 1.
double logistic_form_pdf(const MbbefdParams& params, double z);

AbParams to_ab(const MbbefdParams& params);
MbbefdParams from_ab(const AbParams& ab);

/// Swiss Re (c = 1.5, 2, 3, 4) and Lloyd's (c = 5) one-parameter curves.
MbbefdParams swiss_re_params(double c);

}  // namespace bernegger
