#include "bernegger/exposure_core.hpp"

#include <cmath>
#include <exception>
#include <numeric>
#include <random>
#include <sstream>

#include "bernegger/errors.hpp"

namespace bernegger {

namespace {

constexpr double kFdStep = 1e-5;

std::string describe_z(double z) {
  std::ostringstream s;
  s.precision(17);
  s << z;
  return s.str();
}

// Richardson-extrapolated difference quotient of g at z with step h; one-sided
// (second order) near the ends of [0,1].
double fd_derivative(const RealFunction& g, double z, double h) {
  auto quotient = [&](double step) {
    if (z - step < 0.0)
      return (-3.0 * g(z) + 4.0 * g(z + step) - g(z + 2.0 * step)) / (2.0 * step);
    if (z + step > 1.0)
      return (3.0 * g(z) - 4.0 * g(z - step) + g(z - 2.0 * step)) / (2.0 * step);
    return (g(z + step) - g(z - step)) / (2.0 * step);
  };
  return (4.0 * quotient(h) - quotient(2.0 * h)) / 3.0;
}

}  // namespace

std::string ValidationReport::failures() const {
  std::string out;
  auto add = [&out](bool ok, const char* name) {
    if (ok) return;
    if (!out.empty()) out += ", ";
    out += name;
  };
  add(starts_at_zero, "G(0) = 0");
  add(ends_at_one, "G(1) = 1");
  add(positive_slope_at_zero, "G'(0) > 0");
  add(non_decreasing, "G'(z) >= 0");
  add(concave, "G''(z) <= 0");
  add(derivative_consistent, "G' matches finite differences of G");
  return out;
}

ValidationReport validate_exposure_curve(const ExposureCurve& curve, int grid_points) {
  if (grid_points < 3) throw DomainError("validate_exposure_curve: grid_points must be >= 3");

  ValidationReport report;
  report.min_slope = std::numeric_limits<double>::infinity();
  report.max_curvature = -std::numeric_limits<double>::infinity();

  for (int i = 0; i < grid_points; ++i) {
    const double z = static_cast<double>(i) / (grid_points - 1);
    const double g = curve.g(z);
    const double g1 = curve.dg(z);
    const double g2 = curve.d2g(z);
    if (!std::isfinite(g) || !std::isfinite(g1) || !std::isfinite(g2))
      throw InvalidCurveError("exposure curve '" + curve.label +
                              "' is not finite at z = " + describe_z(z));
    report.min_slope = std::min(report.min_slope, g1);
    report.max_curvature = std::max(report.max_curvature, g2);
    const double fd = fd_derivative(curve.g, z, kFdStep);
    report.max_derivative_error = std::max(report.max_derivative_error, std::abs(fd - g1));
  }

  report.starts_at_zero = std::abs(curve.g(0.0)) <= 1e-12;
  report.ends_at_one = std::abs(curve.g(1.0) - 1.0) <= 1e-12;
  report.positive_slope_at_zero = curve.dg(0.0) > 0.0;
  report.non_decreasing = report.min_slope >= -1e-12;
  report.concave = report.max_curvature <= 1e-9;
  report.derivative_consistent = report.max_derivative_error <= 1e-6;
  return report;
}

CensoredDistribution::CensoredDistribution(RealFunction cdf_below_one, RealFunction pdf,
                                           double point_mass, double mean,
                                           RealFunction log_pdf)
    : cdf_(std::move(cdf_below_one)),
      pdf_(std::move(pdf)),
      log_pdf_(std::move(log_pdf)),
      point_mass_(point_mass),
      mean_(mean) {}

double CensoredDistribution::cdf(double z) const {
  if (z < 0.0) return 0.0;
  if (z >= 1.0) return 1.0;
  return cdf_(z);
}

double CensoredDistribution::log_pdf(double z) const {
  if (log_pdf_) return log_pdf_(z);
  return std::log(pdf_(z));
}

CensoredDistribution curve_to_distribution(const ExposureCurve& curve) {
  const ValidationReport report = validate_exposure_curve(curve);
  if (!report.passed())
    throw InvalidCurveError("'" + curve.label + "' is not an exposure curve: fails " +
                            report.failures());

  const double slope0 = curve.dg(0.0);
  const double slope1 = curve.dg(1.0);
  auto dg = curve.dg;
  auto d2g = curve.d2g;
  return CensoredDistribution(
      [dg, slope0](double z) { return 1.0 - dg(z) / slope0; },
      [d2g, slope0](double z) { return -d2g(z) / slope0; },
      slope1 / slope0, 1.0 / slope0);
}

ConditionalDensity conditional_distribution(const CensoredDistribution& dist) {
  const double p = dist.point_mass();
  if (p >= 1.0 - 1e-12)
    throw DegenerateError("conditional_distribution: point mass at 1 is (numerically) one");
  const double scale = 1.0 / (1.0 - p);
  auto pdf = dist.pdf_function();
  return {[pdf, scale](double z) { return scale * pdf(z); }, (dist.mean() - p) * scale};
}

CensoredDistribution one_inflate(const CensoredDistribution& dist, double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("one_inflate: require 0 < q < 1");
  const ConditionalDensity cond = conditional_distribution(dist);
  const double scale = (1.0 - q) / (1.0 - dist.point_mass());
  const double log_scale = std::log(scale);
  return CensoredDistribution(
      [dist, scale](double z) { return scale * dist.cdf(z); },
      [dist, scale](double z) { return scale * dist.pdf(z); }, q,
      (1.0 - q) * cond.mean + q,
      [dist, log_scale](double z) { return log_scale + dist.log_pdf(z); });
}

ExposureCurve identity_curve() {
  return {[](double z) { return z; }, [](double) { return 1.0; },
          [](double) { return 0.0; }, "identity"};
}

ExposureCurve blend_with_identity(const ExposureCurve& curve, double w) {
  if (!(w >= 0.0 && w <= 1.0)) throw DomainError("blend_with_identity: require 0 <= w <= 1");
  const double slope0 = curve.dg(0.0);
  const double alpha = (w == 1.0) ? 1.0 : w / (w + (1.0 - w) * slope0);
  return {[curve, alpha](double z) { return alpha * curve.g(z) + (1.0 - alpha) * z; },
          [curve, alpha](double z) { return alpha * curve.dg(z) + (1.0 - alpha); },
          [curve, alpha](double z) { return alpha * curve.d2g(z); },
          curve.label + " blended with identity"};
}

std::pair<ExposureCurve, MixtureWeights> mix_curves(std::span<const ExposureCurve> curves,
                                                    std::span<const double> alphas) {
  if (curves.empty()) throw DomainError("mix_curves: need at least one curve");
  if (curves.size() != alphas.size())
    throw DomainError("mix_curves: number of weights differs from number of curves");
  double total = 0.0;
  for (double a : alphas) {
    if (!(a >= 0.0)) throw DomainError("mix_curves: weights must be non-negative");
    total += a;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("mix_curves: weights must sum to 1");

  MixtureWeights weights;
  weights.alphas.assign(alphas.begin(), alphas.end());
  double norm = 0.0;
  for (std::size_t i = 0; i < curves.size(); ++i) norm += alphas[i] * curves[i].dg(0.0);
  for (std::size_t i = 0; i < curves.size(); ++i)
    weights.derived_w.push_back(alphas[i] * curves[i].dg(0.0) / norm);

  std::vector<ExposureCurve> parts(curves.begin(), curves.end());
  auto combine = [parts, a = weights.alphas](RealFunction ExposureCurve::*member) {
    return [parts, a, member](double z) {
      double s = 0.0;
      for (std::size_t i = 0; i < parts.size(); ++i) s += a[i] * (parts[i].*member)(z);
      return s;
    };
  };
  std::string label = "mixture(";
  for (std::size_t i = 0; i < parts.size(); ++i)
    label += (i ? ", " : "") + parts[i].label;
  label += ")";
  ExposureCurve mixed{combine(&ExposureCurve::g), combine(&ExposureCurve::dg),
                      combine(&ExposureCurve::d2g), label};
  return {std::move(mixed), std::move(weights)};
}

double quantile(const CensoredDistribution& dist, double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile: require 0 < u < 1");
  const double upper = 1.0 - dist.point_mass();
  if (u >= upper) return 1.0;

  double lo = 0.0, hi = 1.0;
  double flo = dist.cdf(lo), fhi = upper;
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    const double fm = dist.cdf(mid);
    if (!(fm >= flo - 1e-14 && fm <= fhi + 1e-14))
      throw InvalidDistributionError("quantile: cdf is not monotone near z = " + describe_z(mid));
    if (std::abs(fm - u) <= 1e-12) return mid;
    if (fm < u) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> uniform_stream(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<double> u(n);
  for (auto& x : u) x = (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
  return u;
}

std::vector<double> sample_serial(const CensoredDistribution& dist, std::size_t n,
                                  std::uint64_t seed) {
  std::vector<double> z = uniform_stream(n, seed);
  for (auto& x : z) x = quantile(dist, x);
  return z;
}

std::vector<double> sample(const CensoredDistribution& dist, std::size_t n,
                           std::uint64_t seed) {
  std::vector<double> z = uniform_stream(n, seed);
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      z[i] = quantile(dist, z[i]);
    } catch (...) {
#pragma omp critical(bernegger_sample_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return z;
}

}  // namespace bernegger
