#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bernegger/exposure_core.hpp"
#include "bernegger/linked_families.hpp"
#include "bernegger/mbbefd.hpp"

namespace bernegger {

/// A named parametric family of the registry.
///
/// Two parameter domains are distinguished: the validity domain, on which the
/// curve is a well-defined exposure curve, and the (open) fitting domain used
/// by maximum likelihood, which for the unimodal families is the subdomain
/// of unimodal densities. The fitting domain is mapped onto R^k by
/// log/logit transforms; coupled bounds are recomputed from the parameters
/// that precede them.
class Family {
 public:
  virtual ~Family() = default;

  virtual std::string_view name() const = 0;
  virtual std::span<const std::string> parameter_names() const = 0;
  std::size_t dimension() const { return parameter_names().size(); }

  virtual std::optional<std::string> validity_violation(std::span<const double> theta) const = 0;
  virtual std::optional<std::string> fit_domain_violation(std::span<const double> theta) const = 0;

  virtual std::vector<double> to_unconstrained(std::span<const double> theta) const = 0;
  virtual std::vector<double> from_unconstrained(std::span<const double> u) const = 0;

  virtual ExposureCurve curve(std::span<const double> theta) const = 0;
  virtual CensoredDistribution distribution(std::span<const double> theta) const = 0;
  virtual double pdf_derivative(std::span<const double> theta, double z) const = 0;
  virtual ShapeReport unimodality(std::span<const double> theta) const = 0;

  // Deterministic starting points inside the fitting domain.
  virtual std::vector<std::vector<double>> initial_points() const = 0;
};

/// Registry names: mbbefd, power-log, sine-log, quad-exp, power-exp, exponential.
std::span<const Family* const> all_families();

/// Throws DomainError listing the known names when `name` is not registered.
const Family& find_family(std::string_view name);

/// A point of a family's validity domain.
class ParamVector {
 public:
  ParamVector(const Family& family, std::vector<double> values);

  /// Every parameter must be named exactly once.
  static ParamVector from_named(const Family& family, const std::map<std::string, double>& named);
  static ParamVector from_unconstrained(const Family& family, std::span<const double> u);

  const Family& family() const { return *family_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::string_view name) const;
  std::map<std::string, double> named() const;
  std::vector<double> unconstrained() const { return family_->to_unconstrained(values_); }

  CensoredDistribution distribution() const { return family_->distribution(values_); }

 private:
  const Family* family_;
  std::vector<double> values_;
};

// Typed views of the registry parameter order.
PowerLogParams power_log_params(std::span<const double> theta);
SineLogParams sine_log_params(std::span<const double> theta);
QuadExpParams quad_exp_params(std::span<const double> theta);
PowerExpParams power_exp_params(std::span<const double> theta);
MbbefdParams mbbefd_params(std::span<const double> theta);

}  // namespace bernegger
