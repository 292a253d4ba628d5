#pragma once

#include <map>
#include <optional>
#include <string>

#include "bernegger/exposure_core.hpp"
#include "bernegger/mbbefd.hpp"

namespace bernegger {

/// The inner function b of a linked curve G = (h(b(z)) - h(b(0))) / (h(b(1)) - h(b(0))).
struct InnerFunction {
  RealFunction b;
  RealFunction db;
  RealFunction d2b;
  RealFunction d3b;  // optional; empty when unavailable
  std::map<std::string, double> params;
  std::string label;
};

enum class Link { logarithmic, exponential };

// Sign of b' on [0,1] selected by b'(0).
enum class InnerDirection { increasing, decreasing };

inline constexpr int kLinkGrid = 1001;

/// Grid verification of the link conditions: for the log link
/// b > 0, and b' >= 0, b''b - b'^2 <= 0 (or the mirrored set when b'(0) < 0);
/// for the exponential link b' >= 0, b'' + b'^2 <= 0 (or mirrored). Also
/// spot-checks the supplied derivatives of b against finite differences.
/// Throws InvalidCurveError naming the violated inequality and z.
InnerDirection check_link_conditions(Link link, const InnerFunction& inner,
                                     int grid_points = kLinkGrid);

ExposureCurve log_linked_curve(const InnerFunction& inner);
ExposureCurve exp_linked_curve(const InnerFunction& inner);

CensoredDistribution log_linked_distribution(const InnerFunction& inner);
CensoredDistribution exp_linked_distribution(const InnerFunction& inner);

/// f'(z) from b, b', b'', b'''; throws DomainError when d3b is missing.
double linked_pdf_derivative(Link link, const InnerFunction& inner, double z);

// --- concrete inner functions ------------------------------------------------

/// b(z) = a + b^z, the MBBEFD curve in (a, b) coordinates. When a < -max(1, b)
/// (b < 1 < bg) the sign is flipped so that b stays positive.
InnerFunction mbbefd_inner(const AbParams& ab);

/// b(z) = (1 - z/alpha)^delta + a; log link.
struct PowerLogParams {
  double alpha = 2.0;
  double delta = 3.0;
  double a = 1.0;
};

/// b(z) = sin(alpha z + beta) + a; log link.
struct SineLogParams {
  double beta = -0.7853981633974483;
  double alpha = 1.0;
  double a = 1.2;
};

/// b(z) = alpha z^2 + beta z; exponential link.
struct QuadExpParams {
  double alpha = -2.0;
  double beta = -3.0;
};

/// b(z) = epsilon (z + delta)^alpha - beta z; exponential link.
struct PowerExpParams {
  double alpha = 1.5;
  double delta = 0.5;
  double epsilon = -1.0;
  double beta = 0.5;
};

/// b(z) = -lambda z; exponential link, i.e. Z = min(Y, 1) with Y ~ Exp(lambda).
struct ExponentialParams {
  double lambda = 1.0;
};

InnerFunction power_log_inner(const PowerLogParams& p);
InnerFunction sine_log_inner(const SineLogParams& p);
InnerFunction quad_exp_inner(const QuadExpParams& p);
InnerFunction power_exp_inner(const PowerExpParams& p);
InnerFunction exponential_inner(const ExponentialParams& p);

// Violated bound of the well-definedness domain, if any.
std::optional<std::string> validity_violation(const PowerLogParams& p);
std::optional<std::string> validity_violation(const SineLogParams& p);
std::optional<std::string> validity_violation(const QuadExpParams& p);
std::optional<std::string> validity_violation(const PowerExpParams& p);
std::optional<std::string> validity_violation(const ExponentialParams& p);

// Closed-form distributions; throw DomainError outside the validity domain.
CensoredDistribution power_log_distribution(const PowerLogParams& p);
CensoredDistribution sine_log_distribution(const SineLogParams& p);
CensoredDistribution quad_exp_distribution(const QuadExpParams& p);
CensoredDistribution power_exp_distribution(const PowerExpParams& p);
CensoredDistribution censored_exponential(double lambda);

// Shape analysis. Power-log, sine-log and quad-exp use their closed-form
// criteria; power-exp counts sign changes of f' on a grid.
ShapeReport unimodality_check(const PowerLogParams& p);
ShapeReport unimodality_check(const SineLogParams& p);
ShapeReport unimodality_check(const QuadExpParams& p);
ShapeReport unimodality_check(const PowerExpParams& p);
ShapeReport unimodality_check(const ExponentialParams& p);

inline constexpr int kShapeScanGrid = 10000;

/// Sign-change scan of a density derivative on [0,1); a single + to - change
/// is refined by bisection into the mode.
ShapeReport scan_shape(const RealFunction& pdf_derivative, int grid_points = kShapeScanGrid);

}  // namespace bernegger
