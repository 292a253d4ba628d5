#pragma once

// Independent reference tools for the tests: fixed-order composite
// Gauss-Legendre integration and random parameter draws per family.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

inline constexpr int kOrder = 20;

struct Rule {
  std::array<double, kOrder> nodes{};
  std::array<double, kOrder> weights{};
};

// Nodes on [-1,1] by Newton iteration on P_n.
inline const Rule& legendre_rule() {
  static const Rule rule = [] {
    Rule r;
    constexpr int n = kOrder;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      r.nodes[i] = x;
      r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        int panels = 64) {
  const Rule& r = legendre_rule();
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * h;
    double s = 0.0;
    for (int i = 0; i < kOrder; ++i) s += r.weights[i] * f(mid + 0.5 * h * r.nodes[i]);
    total += 0.5 * h * s;
  }
  return total;
}

// Argmax of f on a uniform grid of [0,1) with `points` nodes.
inline double grid_argmax(const std::function<double(double)>& f, int points) {
  double best_z = 0.0, best = -INFINITY;
  for (int i = 0; i < points; ++i) {
    const double z = static_cast<double>(i) / points;
    const double v = f(z);
    if (v > best) {
      best = v;
      best_z = z;
    }
  }
  return best_z;
}

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  // Parameters inside the validity domain, in registry order.
  std::vector<double> valid(const std::string& family) {
    constexpr double pi = std::numbers::pi;
    if (family == "mbbefd") {
      while (true) {
        const double g = log_uniform(1.05, 50.0);
        const double b = log_uniform(0.005, 50.0);
        if (std::abs(b - 1.0) > 1e-3 && std::abs(b * g - 1.0) > 1e-3) return {b, g};
      }
    }
    if (family == "power-log") {
      const double alpha = uniform(1.05, 5.0);
      const double delta = uniform(1.2, 6.0);
      return {alpha, delta, 1.0 / (delta - 1.0) * uniform(1.05, 4.0)};
    }
    if (family == "sine-log") {
      const double beta = uniform(-pi / 2 + 0.05, -0.05);
      const double alpha = uniform(0.05, pi / 2 - beta - 0.05);
      const double lo = -std::sin(beta), hi = -1.0 / std::sin(beta);
      return {beta, alpha, lo + (hi - lo) * uniform(0.02, 0.98)};
    }
    if (family == "quad-exp") {
      const double alpha = -log_uniform(0.1, 10.0);
      return {alpha, -std::sqrt(-2.0 * alpha) - uniform(0.05, 4.0)};
    }
    if (family == "power-exp") {
      const double alpha = uniform(1.05, 1.95);
      const double delta = log_uniform(0.05, 2.0);
      const double eps = -log_uniform(0.1, 3.0);
      return {alpha, delta, eps, power_exp_bound(alpha, delta, eps) + uniform(0.05, 3.0)};
    }
    if (family == "exponential") return {log_uniform(0.1, 10.0)};
    throw std::invalid_argument("unknown family " + family);
  }

  static double power_exp_bound(double alpha, double delta, double eps) {
    return eps * alpha * std::pow(delta, alpha - 1.0) +
           std::sqrt(-eps * alpha * (alpha - 1.0) * std::pow(delta, alpha - 2.0));
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
