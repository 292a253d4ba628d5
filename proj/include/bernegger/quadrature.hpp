#pragma once

#include <functional>

namespace bernegger {

inline constexpr double kDefaultQuadratureTol = 1e-10;
inline constexpr int kDefaultQuadratureDepth = 60;

/// Adaptive Simpson integration of f over [a, b].
///
/// The endpoints are evaluated at a + 1e-12 and b - 1e-12 so integrands with
/// a removable or integrable problem exactly at an endpoint (e.g. densities
/// that are only defined on [0,1)) can be passed as-is. Throws AccuracyError
/// carrying the best estimate when the recursion depth is exhausted.
double quadrature(const std::function<double(double)>& f, double a, double b,
                  double tol = kDefaultQuadratureTol,
                  int max_depth = kDefaultQuadratureDepth);

}  // namespace bernegger
