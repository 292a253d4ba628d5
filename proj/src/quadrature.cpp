#include "bernegger/quadrature.hpp"

#include <cmath>
#include <sstream>

#include "bernegger/errors.hpp"

namespace bernegger {

namespace {

constexpr double kEndpointOffset = 1e-12;

struct Simpson {
  const std::function<double(double)>& f;
  int max_depth;
  bool exhausted = false;

  double recurse(double a, double b, double fa, double fm, double fb,
                 double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= max_depth) {
      exhausted = true;
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

double quadrature(const std::function<double(double)>& f, double a, double b,
                  double tol, int max_depth) {
  if (!(a < b)) throw DomainError("quadrature: require a < b");
  if (!(tol > 0.0)) throw DomainError("quadrature: require tol > 0");

  const double fa = f(a + kEndpointOffset);
  const double fb = f(b - kEndpointOffset);
  const double fm = f(0.5 * (a + b));
  if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
    throw DomainError("quadrature: integrand is not finite at the initial nodes");

  Simpson s{f, max_depth};
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double value = s.recurse(a, b, fa, fm, fb, whole, tol, 0);
  if (s.exhausted || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << "quadrature: recursion depth " << max_depth
        << " exhausted before reaching tolerance " << tol
        << " (best estimate " << value << ")";
    throw AccuracyError(msg.str(), value);
  }
  return value;
}

}  // namespace bernegger
