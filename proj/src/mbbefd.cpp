#include "bernegger/mbbefd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bernegger/errors.hpp"

namespace bernegger {

namespace {

void require_domain(const MbbefdParams& p) {
  if (!std::isfinite(p.b) || !std::isfinite(p.g))
    throw DomainError("mbbefd: parameters must be finite");
  if (p.b < 0.0) throw DomainError("mbbefd: require b >= 0");
  if (p.g < 1.0) throw DomainError("mbbefd: require g >= 1");
}

void require_non_degenerate(const MbbefdParams& p) {
  require_domain(p);
  if (p.degenerate())
    throw DegenerateError("mbbefd: g = 1 or b = 0 puts all mass at z = 1");
}

// psi'(t) evaluated without overflow.
double logistic_density(double t) {
  const double e = std::exp(-std::abs(t));
  return e / ((1.0 + e) * (1.0 + e));
}

}  // namespace

std::string_view to_string(Shape shape) {
  switch (shape) {
    case Shape::monotone_decreasing: return "monotone-decreasing";
    case Shape::unimodal: return "unimodal";
    case Shape::monotone_increasing: return "monotone-increasing";
    case Shape::multimodal: return "multimodal";
  }
  return "unknown";
}

MbbefdBranch mbbefd_branch(const MbbefdParams& p) {
  require_domain(p);
  if (p.degenerate()) return MbbefdBranch::identity;
  if (std::abs(p.b - 1.0) <= kMbbefdBranchTol) return MbbefdBranch::b_equals_one;
  if (std::abs(p.b * p.g - 1.0) <= kMbbefdBranchTol) return MbbefdBranch::bg_equals_one;
  return MbbefdBranch::general;
}

ExposureCurve mbbefd_curve(const MbbefdParams& p) {
  std::ostringstream label;
  label << "mbbefd(b=" << p.b << ", g=" << p.g << ")";
  const double b = p.b, g = p.g;

  switch (mbbefd_branch(p)) {
    case MbbefdBranch::identity: {
      ExposureCurve c = identity_curve();
      c.label = label.str();
      return c;
    }
    case MbbefdBranch::b_equals_one: {
      const double gm1 = g - 1.0;
      const double log_g = std::log(g);
      return {[=](double z) { return std::log1p(gm1 * z) / log_g; },
              [=](double z) { return gm1 / ((1.0 + gm1 * z) * log_g); },
              [=](double z) {
                const double d = 1.0 + gm1 * z;
                return -gm1 * gm1 / (d * d * log_g);
              },
              label.str()};
    }
    case MbbefdBranch::bg_equals_one: {
      const double log_b = std::log(b);
      return {[=](double z) { return -std::expm1(z * log_b) / (1.0 - b); },
              [=](double z) { return -log_b * std::exp(z * log_b) / (1.0 - b); },
              [=](double z) { return -log_b * log_b * std::exp(z * log_b) / (1.0 - b); },
              label.str()};
    }
    case MbbefdBranch::general: break;
  }

  // D(z) = (g-1)b + (1-bg)b^z, G = log(D/(1-b)) / log(bg).
  const double log_b = std::log(b);
  const double log_bg = std::log(b * g);
  const double c1 = (g - 1.0) * b;
  const double c2 = 1.0 - b * g;
  const double one_minus_b = 1.0 - b;
  return {[=](double z) {
            const double d = c1 + c2 * std::exp(z * log_b);
            return std::log(d / one_minus_b) / log_bg;
          },
          [=](double z) {
            const double bz = std::exp(z * log_b);
            return c2 * log_b * bz / ((c1 + c2 * bz) * log_bg);
          },
          [=](double z) {
            const double bz = std::exp(z * log_b);
            const double d = c1 + c2 * bz;
            return c2 * log_b * log_b * c1 * bz / (d * d * log_bg);
          },
          label.str()};
}

CensoredDistribution mbbefd_distribution(const MbbefdParams& p) {
  require_non_degenerate(p);
  const double b = p.b, g = p.g;
  const double point_mass = 1.0 / g;

  switch (mbbefd_branch(p)) {
    case MbbefdBranch::b_equals_one: {
      const double gm1 = g - 1.0;
      return CensoredDistribution(
          [=](double z) { return 1.0 - 1.0 / (1.0 + gm1 * z); },
          [=](double z) {
            const double d = 1.0 + gm1 * z;
            return gm1 / (d * d);
          },
          point_mass, std::log(g) / gm1,
          [=](double z) { return std::log(gm1) - 2.0 * std::log1p(gm1 * z); });
    }
    case MbbefdBranch::bg_equals_one: {
      const double log_b = std::log(b);
      return CensoredDistribution(
          [=](double z) { return -std::expm1(z * log_b); },
          [=](double z) { return -log_b * std::exp(z * log_b); }, point_mass,
          (b - 1.0) / log_b,
          [=](double z) { return std::log(-log_b) + z * log_b; });
    }
    default: break;
  }

  const double log_b = std::log(b);
  const double gm1 = g - 1.0;
  const double c2 = 1.0 - b * g;
  // (g-1)(b-1)log(b) > 0 for every admissible b != 1.
  const double numer = gm1 * (b - 1.0) * log_b;
  const double log_numer = std::log(numer);
  const double mean = (b - 1.0) / log_b * std::log(b * g) / (b * g - 1.0);
  return CensoredDistribution(
      [=](double z) { return 1.0 - (1.0 - b) / (gm1 * std::exp((1.0 - z) * log_b) + c2); },
      [=](double z) {
        const double b1z = std::exp((1.0 - z) * log_b);
        const double d = gm1 * b1z + c2;
        return numer * b1z / (d * d);
      },
      point_mass, mean,
      [=](double z) {
        const double d = gm1 * std::exp((1.0 - z) * log_b) + c2;
        return log_numer + (1.0 - z) * log_b - 2.0 * std::log(std::abs(d));
      });
}

double mbbefd_pdf_derivative(const MbbefdParams& p, double z) {
  require_non_degenerate(p);
  const double b = p.b, g = p.g;
  switch (mbbefd_branch(p)) {
    case MbbefdBranch::b_equals_one: {
      const double d = 1.0 + (g - 1.0) * z;
      return -2.0 * (g - 1.0) * (g - 1.0) / (d * d * d);
    }
    case MbbefdBranch::bg_equals_one: {
      const double log_b = std::log(b);
      return -log_b * log_b * std::exp(z * log_b);
    }
    default: break;
  }
  const double log_b = std::log(b);
  const double b1z = std::exp((1.0 - z) * log_b);
  const double d = (g - 1.0) * b1z + (1.0 - b * g);
  return (g - 1.0) * (b - 1.0) * log_b * log_b * b1z *
         ((g - 1.0) * b1z - (1.0 - b * g)) / (d * d * d);
}

ShapeReport classify_shape(const MbbefdParams& p) {
  require_non_degenerate(p);
  const double b = p.b, g = p.g;
  if (b * g >= 1.0 - kMbbefdBranchTol) return {Shape::monotone_decreasing, std::nullopt};
  const double ratio = (1.0 - b * g) / (g - 1.0);
  if (ratio <= b) return {Shape::monotone_decreasing, std::nullopt};
  if (ratio >= 1.0) return {Shape::monotone_increasing, std::nullopt};
  return {Shape::unimodal, 1.0 - std::log(ratio) / std::log(b)};
}

double logistic_form_pdf(const MbbefdParams& p, double z) {
  require_non_degenerate(p);
  if (!(p.b * p.g < 1.0)) throw DomainError("logistic_form_pdf: require bg < 1");
  const double a = p.b * (p.g - 1.0) / (1.0 - p.b * p.g);
  const double scale = -std::log(p.b);
  return (a + 1.0) * scale * logistic_density(z * scale + std::log(a));
}

AbParams to_ab(const MbbefdParams& p) {
  require_non_degenerate(p);
  if (std::abs(p.b * p.g - 1.0) <= kMbbefdBranchTol)
    throw DomainError("to_ab: reparametrization is singular at bg = 1");
  return {p.b * (p.g - 1.0) / (1.0 - p.b * p.g), p.b};
}

MbbefdParams from_ab(const AbParams& ab) {
  const double denom = (ab.a + 1.0) * ab.b;
  if (denom == 0.0 || !std::isfinite(denom))
    throw DomainError("from_ab: reparametrization is singular at (a+1)b = 0");
  if (ab.b < 0.0 || !(ab.a > -std::min(1.0, ab.b) || ab.a < -std::max(1.0, ab.b)))
    throw DomainError("from_ab: require b >= 0 and a > -min(1, b) or a < -max(1, b)");
  return {ab.b, (ab.a + ab.b) / denom};
}

MbbefdParams swiss_re_params(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("swiss_re_params: require c > 0");
  return {std::exp(3.1 - 0.15 * (1.0 + c) * c), std::exp((0.78 + 0.12 * c) * c)};
}

}  // namespace bernegger
