#include "bernegger/linked_families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bernegger/errors.hpp"

namespace bernegger {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kDerivativeSpotChecks = 101;
constexpr double kDerivativeSpotTol = 1e-5;

std::string at_z(double z) {
  std::ostringstream s;
  s.precision(12);
  s << " at z = " << z;
  return s.str();
}

[[noreturn]] void reject(const InnerFunction& inner, const std::string& what) {
  throw InvalidCurveError("inner function '" + inner.label + "' is not admissible: " + what);
}

double fd(const RealFunction& f, double z) {
  constexpr double h = 1e-5;
  auto quotient = [&](double step) {
    if (z - step < 0.0)
      return (-3.0 * f(z) + 4.0 * f(z + step) - f(z + 2.0 * step)) / (2.0 * step);
    if (z + step > 1.0)
      return (3.0 * f(z) - 4.0 * f(z - step) + f(z - 2.0 * step)) / (2.0 * step);
    return (f(z + step) - f(z - step)) / (2.0 * step);
  };
  return (4.0 * quotient(h) - quotient(2.0 * h)) / 3.0;
}

void spot_check_derivatives(const InnerFunction& inner) {
  struct Pair {
    const RealFunction* f;
    const RealFunction* df;
    const char* name;
  };
  const Pair pairs[] = {{&inner.b, &inner.db, "b'"},
                        {&inner.db, &inner.d2b, "b''"},
                        {&inner.d2b, &inner.d3b, "b'''"}};
  for (const auto& [f, df, name] : pairs) {
    if (!*df) continue;
    for (int i = 0; i < kDerivativeSpotChecks; ++i) {
      const double z = static_cast<double>(i) / (kDerivativeSpotChecks - 1);
      const double exact = (*df)(z);
      if (std::abs(fd(*f, z) - exact) > kDerivativeSpotTol * (1.0 + std::abs(exact)))
        reject(inner, std::string(name) + " does not match finite differences" + at_z(z));
    }
  }
}

struct Endpoints {
  double b0, b1, db0, db1;
};

Endpoints endpoints(const InnerFunction& inner) {
  return {inner.b(0.0), inner.b(1.0), inner.db(0.0), inner.db(1.0)};
}

std::optional<std::string> require(bool ok, const char* family, const char* bound) {
  if (ok) return std::nullopt;
  return std::string(family) + ": require " + bound;
}

template <class Params>
void throw_if_invalid(const Params& p) {
  if (auto v = validity_violation(p)) throw DomainError(*v);
}

}  // namespace

InnerDirection check_link_conditions(Link link, const InnerFunction& inner, int grid_points) {
  if (grid_points < 2) throw DomainError("check_link_conditions: grid_points must be >= 2");
  const double b0 = inner.b(0.0);
  const double b1 = inner.b(1.0);
  if (!std::isfinite(b0) || !std::isfinite(b1)) reject(inner, "b is not finite at the endpoints");
  if (b0 == b1) reject(inner, "b(0) != b(1)");

  const double slope0 = inner.db(0.0);
  if (!(slope0 != 0.0) || !std::isfinite(slope0)) reject(inner, "b'(0) != 0");
  const auto direction = slope0 > 0.0 ? InnerDirection::increasing : InnerDirection::decreasing;
  const bool increasing = direction == InnerDirection::increasing;
  const char* log_curvature = increasing ? "b''(z)b(z) - b'(z)^2 <= 0" : "b''(z)b(z) - b'(z)^2 >= 0";
  const char* exp_curvature = increasing ? "b''(z) + b'(z)^2 <= 0" : "b''(z) + b'(z)^2 >= 0";

  for (int i = 0; i < grid_points; ++i) {
    const double z = static_cast<double>(i) / (grid_points - 1);
    const double v = inner.b(z);
    const double d1 = inner.db(z);
    const double d2 = inner.d2b(z);
    if (!std::isfinite(v) || !std::isfinite(d1) || !std::isfinite(d2))
      reject(inner, "b, b', b'' must be finite" + at_z(z));
    if (link == Link::logarithmic && !(v > 0.0)) reject(inner, "b(z) > 0 violated" + at_z(z));

    const double slope_tol = 1e-12 * (1.0 + std::abs(slope0));
    if (increasing ? d1 < -slope_tol : d1 > slope_tol)
      reject(inner, std::string(increasing ? "b'(z) >= 0" : "b'(z) <= 0") + " violated" + at_z(z));

    double h, scale;
    if (link == Link::logarithmic) {
      h = d2 * v - d1 * d1;
      scale = std::abs(d2 * v) + d1 * d1;
    } else {
      h = d2 + d1 * d1;
      scale = std::abs(d2) + d1 * d1;
    }
    const double tol = 1e-10 * scale;
    if (increasing ? h > tol : h < -tol) {
      std::ostringstream msg;
      msg << (link == Link::logarithmic ? log_curvature : exp_curvature) << " violated"
          << at_z(z) << " (value " << h << ")";
      reject(inner, msg.str());
    }
  }
  spot_check_derivatives(inner);
  return direction;
}

ExposureCurve log_linked_curve(const InnerFunction& inner) {
  check_link_conditions(Link::logarithmic, inner);
  const double b0 = inner.b(0.0);
  const double span = std::log(inner.b(1.0) / b0);
  const InnerFunction f = inner;
  return {[f, b0, span](double z) { return std::log(f.b(z) / b0) / span; },
          [f, span](double z) { return f.db(z) / (f.b(z) * span); },
          [f, span](double z) {
            const double v = f.b(z), d1 = f.db(z);
            return (f.d2b(z) * v - d1 * d1) / (v * v * span);
          },
          "log-linked " + inner.label};
}

ExposureCurve exp_linked_curve(const InnerFunction& inner) {
  check_link_conditions(Link::exponential, inner);
  const double b0 = inner.b(0.0);
  const double span = std::expm1(inner.b(1.0) - b0);
  const InnerFunction f = inner;
  return {[f, b0, span](double z) { return std::expm1(f.b(z) - b0) / span; },
          [f, b0, span](double z) { return std::exp(f.b(z) - b0) * f.db(z) / span; },
          [f, b0, span](double z) {
            const double d1 = f.db(z);
            return std::exp(f.b(z) - b0) * (d1 * d1 + f.d2b(z)) / span;
          },
          "exp-linked " + inner.label};
}

CensoredDistribution log_linked_distribution(const InnerFunction& inner) {
  check_link_conditions(Link::logarithmic, inner);
  const auto [b0, b1, db0, db1] = endpoints(inner);
  const double scale = b0 / -db0;
  const InnerFunction f = inner;
  return CensoredDistribution(
      [f, b0, db0](double z) { return 1.0 - (f.db(z) / db0) * (b0 / f.b(z)); },
      [f, scale](double z) {
        const double v = f.b(z), d1 = f.db(z);
        return scale * (f.d2b(z) * v - d1 * d1) / (v * v);
      },
      (db1 / db0) * (b0 / b1), scale * std::log(b0 / b1));
}

CensoredDistribution exp_linked_distribution(const InnerFunction& inner) {
  check_link_conditions(Link::exponential, inner);
  const auto [b0, b1, db0, db1] = endpoints(inner);
  const InnerFunction f = inner;
  return CensoredDistribution(
      [f, b0, db0](double z) { return 1.0 - std::exp(f.b(z) - b0) * f.db(z) / db0; },
      [f, b0, db0](double z) {
        const double d1 = f.db(z);
        return -std::exp(f.b(z) - b0) * (d1 * d1 + f.d2b(z)) / db0;
      },
      std::exp(b1 - b0) * db1 / db0, std::expm1(b1 - b0) / db0,
      [f, b0, db0](double z) {
        const double d1 = f.db(z);
        return f.b(z) - b0 + std::log(-(d1 * d1 + f.d2b(z)) / db0);
      });
}

double linked_pdf_derivative(Link link, const InnerFunction& inner, double z) {
  if (!inner.d3b)
    throw DomainError("pdf derivative of '" + inner.label + "' needs the third derivative of b");
  const double b0 = inner.b(0.0), db0 = inner.db(0.0);
  const double v = inner.b(z), d1 = inner.db(z), d2 = inner.d2b(z), d3 = inner.d3b(z);
  if (link == Link::logarithmic)
    return b0 / -db0 * (d3 * v * v - 3.0 * d2 * d1 * v + 2.0 * d1 * d1 * d1) / (v * v * v);
  return -std::exp(v - b0) * (d1 * d1 * d1 + 3.0 * d1 * d2 + d3) / db0;
}

// --- inner functions --------------------------------------------------------

InnerFunction mbbefd_inner(const AbParams& ab) {
  const double a = ab.a, log_b = std::log(ab.b);
  if (!(ab.b > 0.0) || !std::isfinite(a) || !std::isfinite(ab.b))
    throw DomainError("mbbefd_inner: require b > 0 and finite a");
  // For b < 1 < bg the reparametrization gives a < -1, where a + b^z < 0 on
  // [0,1]; the curve only sees log-ratios, so -(a + b^z) is used instead.
  double sign = 1.0;
  if (a + std::min(1.0, ab.b) > 0.0) {
    sign = 1.0;
  } else if (a + std::max(1.0, ab.b) < 0.0) {
    sign = -1.0;
  } else {
    throw DomainError("mbbefd_inner: a + b^z must not vanish on [0,1]");
  }
  std::ostringstream label;
  label << "a + b^z (a=" << a << ", b=" << ab.b << ")";
  return {[=](double z) { return sign * (a + std::exp(z * log_b)); },
          [=](double z) { return sign * log_b * std::exp(z * log_b); },
          [=](double z) { return sign * log_b * log_b * std::exp(z * log_b); },
          [=](double z) { return sign * log_b * log_b * log_b * std::exp(z * log_b); },
          {{"a", a}, {"b", ab.b}},
          label.str()};
}

InnerFunction power_log_inner(const PowerLogParams& p) {
  const double alpha = p.alpha, delta = p.delta, a = p.a;
  std::ostringstream label;
  label << "power-log(alpha=" << alpha << ", delta=" << delta << ", a=" << a << ")";
  auto t = [alpha](double z) { return 1.0 - z / alpha; };
  return {[=](double z) { return std::pow(t(z), delta) + a; },
          [=](double z) { return -delta / alpha * std::pow(t(z), delta - 1.0); },
          [=](double z) {
            return delta * (delta - 1.0) / (alpha * alpha) * std::pow(t(z), delta - 2.0);
          },
          [=](double z) {
            return -delta * (delta - 1.0) * (delta - 2.0) / (alpha * alpha * alpha) *
                   std::pow(t(z), delta - 3.0);
          },
          {{"alpha", alpha}, {"delta", delta}, {"a", a}},
          label.str()};
}

InnerFunction sine_log_inner(const SineLogParams& p) {
  const double alpha = p.alpha, beta = p.beta, a = p.a;
  std::ostringstream label;
  label << "sine-log(beta=" << beta << ", alpha=" << alpha << ", a=" << a << ")";
  return {[=](double z) { return std::sin(alpha * z + beta) + a; },
          [=](double z) { return alpha * std::cos(alpha * z + beta); },
          [=](double z) { return -alpha * alpha * std::sin(alpha * z + beta); },
          [=](double z) { return -alpha * alpha * alpha * std::cos(alpha * z + beta); },
          {{"beta", beta}, {"alpha", alpha}, {"a", a}},
          label.str()};
}

InnerFunction quad_exp_inner(const QuadExpParams& p) {
  const double alpha = p.alpha, beta = p.beta;
  std::ostringstream label;
  label << "quad-exp(alpha=" << alpha << ", beta=" << beta << ")";
  return {[=](double z) { return alpha * z * z + beta * z; },
          [=](double z) { return 2.0 * alpha * z + beta; },
          [=](double) { return 2.0 * alpha; },
          [](double) { return 0.0; },
          {{"alpha", alpha}, {"beta", beta}},
          label.str()};
}

InnerFunction power_exp_inner(const PowerExpParams& p) {
  const double alpha = p.alpha, delta = p.delta, eps = p.epsilon, beta = p.beta;
  std::ostringstream label;
  label << "power-exp(alpha=" << alpha << ", delta=" << delta << ", epsilon=" << eps
        << ", beta=" << beta << ")";
  return {[=](double z) { return eps * std::pow(z + delta, alpha) - beta * z; },
          [=](double z) { return alpha * eps * std::pow(z + delta, alpha - 1.0) - beta; },
          [=](double z) {
            return alpha * (alpha - 1.0) * eps * std::pow(z + delta, alpha - 2.0);
          },
          [=](double z) {
            return alpha * (alpha - 1.0) * (alpha - 2.0) * eps * std::pow(z + delta, alpha - 3.0);
          },
          {{"alpha", alpha}, {"delta", delta}, {"epsilon", eps}, {"beta", beta}},
          label.str()};
}

InnerFunction exponential_inner(const ExponentialParams& p) {
  const double lambda = p.lambda;
  std::ostringstream label;
  label << "exponential(lambda=" << lambda << ")";
  return {[=](double z) { return -lambda * z; }, [=](double) { return -lambda; },
          [](double) { return 0.0; }, [](double) { return 0.0; },
          {{"lambda", lambda}}, label.str()};
}

// --- domains ----------------------------------------------------------------

std::optional<std::string> validity_violation(const PowerLogParams& p) {
  if (!std::isfinite(p.alpha) || !std::isfinite(p.delta) || !std::isfinite(p.a))
    return "power-log: parameters must be finite";
  if (auto v = require(p.alpha > 1.0, "power-log", "alpha > 1")) return v;
  if (auto v = require(p.delta > 1.0, "power-log", "delta > 1")) return v;
  return require(p.a > 1.0 / (p.delta - 1.0), "power-log", "a > 1/(delta - 1)");
}

std::optional<std::string> validity_violation(const SineLogParams& p) {
  if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) || !std::isfinite(p.a))
    return "sine-log: parameters must be finite";
  if (auto v = require(p.beta > -kPi / 2 && p.beta < 0.0, "sine-log", "-pi/2 < beta < 0"))
    return v;
  if (auto v = require(p.alpha > 0.0 && p.alpha < kPi / 2 - p.beta, "sine-log",
                       "0 < alpha < pi/2 - beta"))
    return v;
  const double s = std::sin(p.beta);
  if (auto v = require(p.a > -s, "sine-log", "a > -sin(beta)")) return v;
  return require(p.a < -1.0 / s, "sine-log", "a < -1/sin(beta)");
}

std::optional<std::string> validity_violation(const QuadExpParams& p) {
  if (!std::isfinite(p.alpha) || !std::isfinite(p.beta)) return "quad-exp: parameters must be finite";
  if (auto v = require(p.alpha < 0.0, "quad-exp", "alpha < 0")) return v;
  return require(p.beta < -std::sqrt(-2.0 * p.alpha), "quad-exp", "beta < -sqrt(-2 alpha)");
}

std::optional<std::string> validity_violation(const PowerExpParams& p) {
  if (!std::isfinite(p.alpha) || !std::isfinite(p.delta) || !std::isfinite(p.epsilon) ||
      !std::isfinite(p.beta))
    return "power-exp: parameters must be finite";
  if (auto v = require(p.alpha > 1.0 && p.alpha < 2.0, "power-exp", "1 < alpha < 2")) return v;
  if (auto v = require(p.delta > 0.0, "power-exp", "delta > 0")) return v;
  if (auto v = require(p.epsilon < 0.0, "power-exp", "epsilon < 0")) return v;
  const double bound =
      p.epsilon * p.alpha * std::pow(p.delta, p.alpha - 1.0) +
      std::sqrt(-p.epsilon * p.alpha * (p.alpha - 1.0) * std::pow(p.delta, p.alpha - 2.0));
  return require(p.beta > bound, "power-exp",
                 "beta > epsilon alpha delta^(alpha-1) + sqrt(-epsilon alpha (alpha-1) "
                 "delta^(alpha-2))");
}

std::optional<std::string> validity_violation(const ExponentialParams& p) {
  if (!std::isfinite(p.lambda)) return "exponential: lambda must be finite";
  return require(p.lambda > 0.0, "exponential", "lambda > 0");
}

// --- closed-form distributions ------------------------------------------------

CensoredDistribution power_log_distribution(const PowerLogParams& p) {
  throw_if_invalid(p);
  const double alpha = p.alpha, delta = p.delta, a = p.a;
  const double t1 = 1.0 - 1.0 / alpha;
  const double t1d = std::pow(t1, delta);
  const double point_mass = std::pow(t1, delta - 1.0) * (a + 1.0) / (a + t1d);
  const double mean = alpha * (a + 1.0) / delta * std::log((a + 1.0) / (a + t1d));
  const double log_lead = std::log((a + 1.0) / alpha);
  return CensoredDistribution(
      [=](double z) {
        const double t = 1.0 - z / alpha;
        return 1.0 - std::pow(t, delta - 1.0) * (a + 1.0) / (a + std::pow(t, delta));
      },
      [=](double z) {
        const double t = 1.0 - z / alpha;
        const double tdm2 = std::pow(t, delta - 2.0);
        const double td = tdm2 * t * t;
        return (a + 1.0) / alpha * tdm2 / ((a + td) * (a + td)) * (a * (delta - 1.0) - td);
      },
      point_mass, mean,
      [=](double z) {
        const double t = 1.0 - z / alpha;
        const double log_t = std::log(t);
        const double td = std::exp(delta * log_t);
        return log_lead + (delta - 2.0) * log_t - 2.0 * std::log(a + td) +
               std::log(a * (delta - 1.0) - td);
      });
}

CensoredDistribution sine_log_distribution(const SineLogParams& p) {
  throw_if_invalid(p);
  const double alpha = p.alpha, beta = p.beta, a = p.a;
  const double lead = (std::sin(beta) + a) / std::cos(beta);
  const double point_mass = std::cos(alpha + beta) / std::cos(beta) * (std::sin(beta) + a) /
                            (std::sin(alpha + beta) + a);
  const double mean = -(std::sin(beta) + a) / (alpha * std::cos(beta)) *
                      std::log((std::sin(beta) + a) / (std::sin(alpha + beta) + a));
  const double log_lead = std::log(lead * alpha);
  return CensoredDistribution(
      [=](double z) {
        const double x = alpha * z + beta;
        return 1.0 - std::cos(x) / std::cos(beta) * (std::sin(beta) + a) / (std::sin(x) + a);
      },
      [=](double z) {
        const double s = std::sin(alpha * z + beta);
        return lead * alpha * (1.0 + a * s) / ((s + a) * (s + a));
      },
      point_mass, mean,
      [=](double z) {
        const double s = std::sin(alpha * z + beta);
        return log_lead + std::log(1.0 + a * s) - 2.0 * std::log(s + a);
      });
}

CensoredDistribution quad_exp_distribution(const QuadExpParams& p) {
  throw_if_invalid(p);
  const double alpha = p.alpha, beta = p.beta;
  const double point_mass = std::exp(alpha + beta) * (2.0 * alpha + beta) / beta;
  const double mean = std::expm1(alpha + beta) / beta;
  const double log_neg_beta = std::log(-beta);
  return CensoredDistribution(
      [=](double z) {
        return 1.0 - std::exp(alpha * z * z + beta * z) * (2.0 * alpha * z + beta) / beta;
      },
      [=](double z) {
        const double s = 2.0 * alpha * z + beta;
        return -std::exp(alpha * z * z + beta * z) * (s * s + 2.0 * alpha) / beta;
      },
      point_mass, mean,
      [=](double z) {
        const double s = 2.0 * alpha * z + beta;
        return alpha * z * z + beta * z + std::log(s * s + 2.0 * alpha) - log_neg_beta;
      });
}

CensoredDistribution power_exp_distribution(const PowerExpParams& p) {
  throw_if_invalid(p);
  const double alpha = p.alpha, delta = p.delta, eps = p.epsilon, beta = p.beta;
  const double delta_a = std::pow(delta, alpha);
  const double slope0 = alpha * eps * std::pow(delta, alpha - 1.0) - beta;
  const double slope1 = alpha * eps * std::pow(1.0 + delta, alpha - 1.0) - beta;
  const double rise1 = eps * (std::pow(1.0 + delta, alpha) - delta_a) - beta;
  const double log_neg_slope0 = std::log(-slope0);
  // b(z) - b(0), b'(z), b''(z) from one power evaluation.
  auto terms = [=](double z, double& rise, double& d1, double& d2) {
    const double u = z + delta;
    const double pm2 = std::pow(u, alpha - 2.0);
    const double pm1 = pm2 * u;
    rise = eps * (pm1 * u - delta_a) - beta * z;
    d1 = alpha * eps * pm1 - beta;
    d2 = alpha * (alpha - 1.0) * eps * pm2;
  };
  return CensoredDistribution(
      [=](double z) {
        double rise, d1, d2;
        terms(z, rise, d1, d2);
        return 1.0 - std::exp(rise) * d1 / slope0;
      },
      [=](double z) {
        double rise, d1, d2;
        terms(z, rise, d1, d2);
        return -std::exp(rise) * (d1 * d1 + d2) / slope0;
      },
      std::exp(rise1) * slope1 / slope0, std::expm1(rise1) / slope0,
      [=](double z) {
        double rise, d1, d2;
        terms(z, rise, d1, d2);
        return rise + std::log(d1 * d1 + d2) - log_neg_slope0;
      });
}

CensoredDistribution censored_exponential(double lambda) {
  throw_if_invalid(ExponentialParams{lambda});
  return exp_linked_distribution(exponential_inner({lambda}));
}

// --- shapes -----------------------------------------------------------------

ShapeReport scan_shape(const RealFunction& fprime, int grid_points) {
  if (grid_points < 2) throw DomainError("scan_shape: grid_points must be >= 2");
  int changes = 0;
  int first_sign = 0, last_sign = 0;
  double last_z = 0.0, change_lo = 0.0, change_hi = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double z = static_cast<double>(i) / grid_points;
    const double d = fprime(z);
    const int sign = (d > 0.0) - (d < 0.0);
    if (sign == 0) continue;
    if (first_sign == 0) first_sign = sign;
    if (last_sign != 0 && sign != last_sign) {
      ++changes;
      change_lo = last_z;
      change_hi = z;
    }
    last_sign = sign;
    last_z = z;
  }
  if (changes == 0)
    return {first_sign > 0 ? Shape::monotone_increasing : Shape::monotone_decreasing,
            std::nullopt};
  if (changes > 1 || first_sign < 0) return {Shape::multimodal, std::nullopt};

  double lo = change_lo, hi = change_hi;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (fprime(mid) > 0.0 ? lo : hi) = mid;
  }
  return {Shape::unimodal, 0.5 * (lo + hi)};
}

ShapeReport unimodality_check(const PowerLogParams& p) {
  throw_if_invalid(p);
  // For delta <= 2 both roots lie outside the range of y and f is increasing.
  if (p.delta <= 2.0) return {Shape::monotone_increasing, std::nullopt};
  // Smaller root y_- of 2y^2 - a(d-1)(d+4)y + a^2(d-1)(d-2) = 0 with
  // y = (1 - z/alpha)^delta; f' > 0 for y > y_- and f' < 0 below it.
  const double x = p.delta / 4.0 + 1.0;
  const double c = (p.delta - 2.0) / (2.0 * p.delta - 2.0);
  const double y_minus = p.a * (p.delta - 1.0) * c / (x + std::sqrt(x * x - c));
  const double y_floor = std::pow(1.0 - 1.0 / p.alpha, p.delta);
  if (y_minus >= 1.0) return {Shape::monotone_decreasing, std::nullopt};
  if (y_minus <= y_floor) return {Shape::monotone_increasing, std::nullopt};
  return {Shape::unimodal, p.alpha * (1.0 - std::pow(y_minus, 1.0 / p.delta))};
}

ShapeReport unimodality_check(const SineLogParams& p) {
  throw_if_invalid(p);
  const InnerFunction inner = sine_log_inner(p);
  auto fprime = [&inner](double z) { return linked_pdf_derivative(Link::logarithmic, inner, z); };
  if (p.a >= 1.0 && p.a <= 2.0) {
    const double z_star = (std::asin((p.a * p.a - 2.0) / p.a) - p.beta) / p.alpha;
    if (z_star > 0.0 && z_star < 1.0) return {Shape::unimodal, z_star};
  }
  // No admissible root: the scan decides the direction.
  return scan_shape(fprime);
}

ShapeReport unimodality_check(const QuadExpParams& p) {
  throw_if_invalid(p);
  // |b'(z)| = -beta - 2 alpha z grows in z and f' < 0 exactly where
  // b'(z)^2 > -6 alpha.
  const double root6 = std::sqrt(-6.0 * p.alpha);
  if (p.beta <= -root6) return {Shape::monotone_decreasing, std::nullopt};
  if (p.beta >= -2.0 * p.alpha - root6) return {Shape::monotone_increasing, std::nullopt};
  return {Shape::unimodal, (-p.beta - root6) / (2.0 * p.alpha)};
}

ShapeReport unimodality_check(const PowerExpParams& p) {
  throw_if_invalid(p);
  const InnerFunction inner = power_exp_inner(p);
  return scan_shape(
      [&inner](double z) { return linked_pdf_derivative(Link::exponential, inner, z); });
}

ShapeReport unimodality_check(const ExponentialParams& p) {
  throw_if_invalid(p);
  return {Shape::monotone_decreasing, std::nullopt};
}

}  // namespace bernegger
