#include "bernegger/families.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "bernegger/errors.hpp"

namespace bernegger {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPowerExpScaleLimit = 1e6;

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }
double logit(double x) { return std::log(x / (1.0 - x)); }

// x in (lo, hi) <-> u in R.
double to_interval(double u, double lo, double hi) { return lo + (hi - lo) * logistic(u); }
double from_interval(double x, double lo, double hi) { return logit((x - lo) / (hi - lo)); }

void require_size(const Family& f, std::span<const double> theta) {
  if (theta.size() != f.dimension())
    throw DomainError(std::string(f.name()) + ": expected " + std::to_string(f.dimension()) +
                      " parameters, got " + std::to_string(theta.size()));
}

// Families built from an inner function and a link.
class LinkedFamily : public Family {
 public:
  virtual Link link() const = 0;
  virtual InnerFunction inner(std::span<const double> theta) const = 0;

  ExposureCurve curve(std::span<const double> theta) const override {
    throw_if_invalid(theta);
    const InnerFunction b = inner(theta);
    return link() == Link::logarithmic ? log_linked_curve(b) : exp_linked_curve(b);
  }

  double pdf_derivative(std::span<const double> theta, double z) const override {
    throw_if_invalid(theta);
    return linked_pdf_derivative(link(), inner(theta), z);
  }

 protected:
  void throw_if_invalid(std::span<const double> theta) const {
    if (auto v = validity_violation(theta)) throw DomainError(*v);
  }
};

class MbbefdFamily final : public Family {
 public:
  std::string_view name() const override { return "mbbefd"; }
  std::span<const std::string> parameter_names() const override { return names_; }

  std::optional<std::string> validity_violation(std::span<const double> t) const override {
    require_size(*this, t);
    if (!std::isfinite(t[0]) || !std::isfinite(t[1])) return "mbbefd: parameters must be finite";
    if (!(t[0] >= 0.0)) return "mbbefd: require b >= 0";
    if (!(t[1] >= 1.0)) return "mbbefd: require g >= 1";
    return std::nullopt;
  }

  std::optional<std::string> fit_domain_violation(std::span<const double> t) const override {
    if (auto v = validity_violation(t)) return v;
    const double b = t[0], g = t[1];
    if (!(g > 1.0)) return "mbbefd: require g > 1";
    if (!(b > std::max(0.0, (2.0 - g) / g))) return "mbbefd: require b > max(0, (2 - g)/g)";
    if (!(b < 1.0 / (2.0 * g - 1.0))) return "mbbefd: require b < 1/(2g - 1)";
    return std::nullopt;
  }

  std::vector<double> to_unconstrained(std::span<const double> t) const override {
    require_size(*this, t);
    const double b = t[0], g = t[1];
    return {from_interval(b, lower_b(g), upper_b(g)), std::log(g - 1.0)};
  }

  std::vector<double> from_unconstrained(std::span<const double> u) const override {
    require_size(*this, u);
    const double g = 1.0 + std::exp(u[1]);
    return {to_interval(u[0], lower_b(g), upper_b(g)), g};
  }

  ExposureCurve curve(std::span<const double> t) const override {
    return mbbefd_curve(checked(t));
  }
  CensoredDistribution distribution(std::span<const double> t) const override {
    return mbbefd_distribution(checked(t));
  }
  double pdf_derivative(std::span<const double> t, double z) const override {
    return mbbefd_pdf_derivative(checked(t), z);
  }
  ShapeReport unimodality(std::span<const double> t) const override {
    return classify_shape(checked(t));
  }

  std::vector<std::vector<double>> initial_points() const override {
    std::vector<std::vector<double>> starts;
    for (auto [g, frac] : {std::pair{3.0, 0.5}, {1.5, 0.5}, {10.0, 0.3}, {30.0, 0.7}, {2.0, 0.2}})
      starts.push_back({lower_b(g) + frac * (upper_b(g) - lower_b(g)), g});
    return starts;
  }

 private:
  static double lower_b(double g) { return std::max(0.0, (2.0 - g) / g); }
  static double upper_b(double g) { return 1.0 / (2.0 * g - 1.0); }

  MbbefdParams checked(std::span<const double> t) const {
    if (auto v = validity_violation(t)) throw DomainError(*v);
    return {t[0], t[1]};
  }

  std::array<std::string, 2> names_{"b", "g"};
};

class PowerLogFamily final : public LinkedFamily {
 public:
  std::string_view name() const override { return "power-log"; }
  std::span<const std::string> parameter_names() const override { return names_; }
  Link link() const override { return Link::logarithmic; }
  InnerFunction inner(std::span<const double> t) const override {
    return power_log_inner(power_log_params(t));
  }

  std::optional<std::string> validity_violation(std::span<const double> t) const override {
    require_size(*this, t);
    return bernegger::validity_violation(power_log_params(t));
  }
  std::optional<std::string> fit_domain_violation(std::span<const double> t) const override {
    if (auto v = validity_violation(t)) return v;
    if (!(t[1] > 2.0)) return "power-log: require delta > 2 (unimodal domain)";
    return std::nullopt;
  }

  std::vector<double> to_unconstrained(std::span<const double> t) const override {
    require_size(*this, t);
    return {std::log(t[0] - 1.0), std::log(t[1] - 2.0), std::log(t[2] - 1.0 / (t[1] - 1.0))};
  }
  std::vector<double> from_unconstrained(std::span<const double> u) const override {
    require_size(*this, u);
    const double delta = 2.0 + std::exp(u[1]);
    return {1.0 + std::exp(u[0]), delta, 1.0 / (delta - 1.0) + std::exp(u[2])};
  }

  CensoredDistribution distribution(std::span<const double> t) const override {
    require_size(*this, t);
    return power_log_distribution(power_log_params(t));
  }
  ShapeReport unimodality(std::span<const double> t) const override {
    require_size(*this, t);
    return unimodality_check(power_log_params(t));
  }

  std::vector<std::vector<double>> initial_points() const override {
    return {{1.5, 3.0, 1.0}, {2.0, 4.0, 0.5}, {1.2, 2.5, 2.0}, {3.0, 5.0, 0.5}, {1.1, 3.0, 1.0}};
  }

 private:
  std::array<std::string, 3> names_{"alpha", "delta", "a"};
};

class SineLogFamily final : public LinkedFamily {
 public:
  std::string_view name() const override { return "sine-log"; }
  std::span<const std::string> parameter_names() const override { return names_; }
  Link link() const override { return Link::logarithmic; }
  InnerFunction inner(std::span<const double> t) const override {
    return sine_log_inner(sine_log_params(t));
  }

  std::optional<std::string> validity_violation(std::span<const double> t) const override {
    require_size(*this, t);
    return bernegger::validity_violation(sine_log_params(t));
  }
  std::optional<std::string> fit_domain_violation(std::span<const double> t) const override {
    if (auto v = validity_violation(t)) return v;
    if (!(t[2] > 1.0)) return "sine-log: require a > 1 (unimodal domain)";
    if (!(t[2] < 2.0)) return "sine-log: require a < 2 (unimodal domain)";
    return std::nullopt;
  }

  std::vector<double> to_unconstrained(std::span<const double> t) const override {
    require_size(*this, t);
    const double beta = t[0], alpha = t[1], a = t[2];
    return {from_interval(beta, -kPi / 2, 0.0), from_interval(alpha, 0.0, kPi / 2 - beta),
            from_interval(a, 1.0, upper_a(beta))};
  }
  std::vector<double> from_unconstrained(std::span<const double> u) const override {
    require_size(*this, u);
    const double beta = to_interval(u[0], -kPi / 2, 0.0);
    return {beta, to_interval(u[1], 0.0, kPi / 2 - beta), to_interval(u[2], 1.0, upper_a(beta))};
  }

  CensoredDistribution distribution(std::span<const double> t) const override {
    require_size(*this, t);
    return sine_log_distribution(sine_log_params(t));
  }
  ShapeReport unimodality(std::span<const double> t) const override {
    require_size(*this, t);
    return unimodality_check(sine_log_params(t));
  }

  std::vector<std::vector<double>> initial_points() const override {
    return {{-0.8, 1.0, 1.2}, {-0.5, 1.5, 1.5}, {-1.2, 2.0, 1.05}, {-0.3, 1.5, 1.8}, {-1.0, 0.5, 1.1}};
  }

 private:
  static double upper_a(double beta) { return std::min(-1.0 / std::sin(beta), 2.0); }

  std::array<std::string, 3> names_{"beta", "alpha", "a"};
};

class QuadExpFamily final : public LinkedFamily {
 public:
  std::string_view name() const override { return "quad-exp"; }
  std::span<const std::string> parameter_names() const override { return names_; }
  Link link() const override { return Link::exponential; }
  InnerFunction inner(std::span<const double> t) const override {
    return quad_exp_inner(quad_exp_params(t));
  }

  std::optional<std::string> validity_violation(std::span<const double> t) const override {
    require_size(*this, t);
    return bernegger::validity_violation(quad_exp_params(t));
  }
  std::optional<std::string> fit_domain_violation(std::span<const double> t) const override {
    if (auto v = validity_violation(t)) return v;
    if (!(t[1] > lower_beta(t[0])))
      return "quad-exp: require beta > -sqrt(-6 alpha) (unimodal domain)";
    if (!(t[1] < upper_beta(t[0])))
      return "quad-exp: require beta < -2 alpha - sqrt(-6 alpha) (unimodal domain)";
    return std::nullopt;
  }

  std::vector<double> to_unconstrained(std::span<const double> t) const override {
    require_size(*this, t);
    return {std::log(-t[0]), from_interval(t[1], lower_beta(t[0]), upper_beta(t[0]))};
  }
  std::vector<double> from_unconstrained(std::span<const double> u) const override {
    require_size(*this, u);
    const double alpha = -std::exp(u[0]);
    return {alpha, to_interval(u[1], lower_beta(alpha), upper_beta(alpha))};
  }

  CensoredDistribution distribution(std::span<const double> t) const override {
    require_size(*this, t);
    return quad_exp_distribution(quad_exp_params(t));
  }
  ShapeReport unimodality(std::span<const double> t) const override {
    require_size(*this, t);
    return unimodality_check(quad_exp_params(t));
  }

  std::vector<std::vector<double>> initial_points() const override {
    std::vector<std::vector<double>> starts;
    for (auto [alpha, frac] : {std::pair{-2.0, 0.5}, {-5.0, 0.5}, {-1.0, 0.3}, {-10.0, 0.7}, {-0.5, 0.5}})
      starts.push_back({alpha, lower_beta(alpha) + frac * (upper_beta(alpha) - lower_beta(alpha))});
    return starts;
  }

 private:
  static double lower_beta(double alpha) { return -std::sqrt(-6.0 * alpha); }
  static double upper_beta(double alpha) {
    return std::min(-2.0 * alpha - std::sqrt(-6.0 * alpha), -std::sqrt(-2.0 * alpha));
  }

  std::array<std::string, 2> names_{"alpha", "beta"};
};

class PowerExpFamily final : public LinkedFamily {
 public:
  std::string_view name() const override { return "power-exp"; }
  std::span<const std::string> parameter_names() const override { return names_; }
  Link link() const override { return Link::exponential; }
  InnerFunction inner(std::span<const double> t) const override {
    return power_exp_inner(power_exp_params(t));
  }

  std::optional<std::string> validity_violation(std::span<const double> t) const override {
    require_size(*this, t);
    return bernegger::validity_violation(power_exp_params(t));
  }
  std::optional<std::string> fit_domain_violation(std::span<const double> t) const override {
    if (auto v = validity_violation(t)) return v;
    // b'(z) subtracts two terms of this size; beyond it the log density is
    // dominated by rounding and the likelihood can no longer be trusted.
    const double scale = std::max(-t[2] * std::pow(1.0 + t[1], t[0]), std::abs(t[3]));
    if (!(scale <= kPowerExpScaleLimit))
      return "power-exp: require |epsilon| (1 + delta)^alpha and |beta| <= 1e6 (stable evaluation)";
    return std::nullopt;
  }

  std::vector<double> to_unconstrained(std::span<const double> t) const override {
    require_size(*this, t);
    const double alpha = t[0], delta = t[1], eps = t[2], beta = t[3];
    return {from_interval(alpha, 1.0, 2.0), std::log(delta), std::log(-eps),
            std::log(beta - beta_bound(alpha, delta, eps))};
  }
  std::vector<double> from_unconstrained(std::span<const double> u) const override {
    require_size(*this, u);
    const double alpha = to_interval(u[0], 1.0, 2.0);
    const double delta = std::exp(u[1]);
    const double eps = -std::exp(u[2]);
    return {alpha, delta, eps, beta_bound(alpha, delta, eps) + std::exp(u[3])};
  }

  CensoredDistribution distribution(std::span<const double> t) const override {
    require_size(*this, t);
    return power_exp_distribution(power_exp_params(t));
  }
  ShapeReport unimodality(std::span<const double> t) const override {
    require_size(*this, t);
    return unimodality_check(power_exp_params(t));
  }

  std::vector<std::vector<double>> initial_points() const override {
    std::vector<std::vector<double>> starts;
    for (auto [alpha, delta, eps, gap] : {std::array{1.5, 0.5, -1.0, 1.0}, {1.3, 0.2, -2.0, 0.5},
                                          {1.7, 1.0, -0.5, 2.0}, {1.5, 0.1, -3.0, 1.0},
                                          {1.2, 0.05, -1.0, 3.0}})
      starts.push_back({alpha, delta, eps, beta_bound(alpha, delta, eps) + gap});
    return starts;
  }

 private:
  static double beta_bound(double alpha, double delta, double eps) {
    return eps * alpha * std::pow(delta, alpha - 1.0) +
           std::sqrt(-eps * alpha * (alpha - 1.0) * std::pow(delta, alpha - 2.0));
  }

  std::array<std::string, 4> names_{"alpha", "delta", "epsilon", "beta"};
};

class ExponentialFamily final : public LinkedFamily {
 public:
  std::string_view name() const override { return "exponential"; }
  std::span<const std::string> parameter_names() const override { return names_; }
  Link link() const override { return Link::exponential; }
  InnerFunction inner(std::span<const double> t) const override {
    return exponential_inner({t[0]});
  }

  std::optional<std::string> validity_violation(std::span<const double> t) const override {
    require_size(*this, t);
    return bernegger::validity_violation(ExponentialParams{t[0]});
  }
  std::optional<std::string> fit_domain_violation(std::span<const double> t) const override {
    return validity_violation(t);
  }

  std::vector<double> to_unconstrained(std::span<const double> t) const override {
    require_size(*this, t);
    return {std::log(t[0])};
  }
  std::vector<double> from_unconstrained(std::span<const double> u) const override {
    require_size(*this, u);
    return {std::exp(u[0])};
  }

  CensoredDistribution distribution(std::span<const double> t) const override {
    throw_if_invalid(t);
    const double lambda = t[0];
    const double log_lambda = std::log(lambda);
    return CensoredDistribution([lambda](double z) { return -std::expm1(-lambda * z); },
                                [lambda](double z) { return lambda * std::exp(-lambda * z); },
                                std::exp(-lambda), -std::expm1(-lambda) / lambda,
                                [lambda, log_lambda](double z) { return log_lambda - lambda * z; });
  }
  ShapeReport unimodality(std::span<const double> t) const override {
    require_size(*this, t);
    return unimodality_check(ExponentialParams{t[0]});
  }

  std::vector<std::vector<double>> initial_points() const override {
    return {{1.0}, {0.5}, {2.0}, {5.0}, {10.0}};
  }

 private:
  std::array<std::string, 1> names_{"lambda"};
};

const MbbefdFamily kMbbefd;
const PowerLogFamily kPowerLog;
const SineLogFamily kSineLog;
const QuadExpFamily kQuadExp;
const PowerExpFamily kPowerExp;
const ExponentialFamily kExponential;

const std::array<const Family*, 6> kRegistry{&kMbbefd,   &kPowerLog,  &kSineLog,
                                             &kQuadExp, &kPowerExp, &kExponential};

}  // namespace

std::span<const Family* const> all_families() { return kRegistry; }

const Family& find_family(std::string_view name) {
  for (const Family* f : kRegistry)
    if (f->name() == name) return *f;
  std::string known;
  for (const Family* f : kRegistry) known += (known.empty() ? "" : ", ") + std::string(f->name());
  throw DomainError("unknown family '" + std::string(name) + "' (known: " + known + ")");
}

ParamVector::ParamVector(const Family& family, std::vector<double> values)
    : family_(&family), values_(std::move(values)) {
  if (auto v = family.validity_violation(values_)) throw DomainError(*v);
}

ParamVector ParamVector::from_named(const Family& family,
                                    const std::map<std::string, double>& named) {
  for (const auto& [key, value] : named) {
    bool known = false;
    for (const auto& n : family.parameter_names()) known = known || n == key;
    if (!known)
      throw DomainError(std::string(family.name()) + ": unknown parameter '" + key + "'");
  }
  std::vector<double> values;
  for (const auto& n : family.parameter_names()) {
    auto it = named.find(n);
    if (it == named.end())
      throw DomainError(std::string(family.name()) + ": missing parameter '" + n + "'");
    values.push_back(it->second);
  }
  return ParamVector(family, std::move(values));
}

ParamVector ParamVector::from_unconstrained(const Family& family, std::span<const double> u) {
  return ParamVector(family, family.from_unconstrained(u));
}

double ParamVector::operator[](std::string_view name) const {
  const auto names = family_->parameter_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return values_[i];
  throw DomainError(std::string(family_->name()) + ": unknown parameter '" + std::string(name) + "'");
}

std::map<std::string, double> ParamVector::named() const {
  std::map<std::string, double> out;
  const auto names = family_->parameter_names();
  for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = values_[i];
  return out;
}

PowerLogParams power_log_params(std::span<const double> t) { return {t[0], t[1], t[2]}; }
SineLogParams sine_log_params(std::span<const double> t) { return {t[0], t[1], t[2]}; }
QuadExpParams quad_exp_params(std::span<const double> t) { return {t[0], t[1]}; }
PowerExpParams power_exp_params(std::span<const double> t) { return {t[0], t[1], t[2], t[3]}; }
MbbefdParams mbbefd_params(std::span<const double> t) { return {t[0], t[1]}; }

}  // namespace bernegger
