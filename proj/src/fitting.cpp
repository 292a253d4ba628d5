#include "bernegger/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "bernegger/errors.hpp"
#include "bernegger/format.hpp"
#include "bernegger/kernels.hpp"

namespace bernegger {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double fail(std::string* diagnostic, std::string message) {
  if (diagnostic) *diagnostic = std::move(message);
  return -kInf;
}

double sum_log_pdf(const CensoredDistribution& dist, const SplitSample& s, std::string* diagnostic,
                   bool* ok) {
  const LogDensitySum r =
      sum_log_density(s.uncensored, [&dist](double z) { return dist.log_pdf(z); });
  *ok = !r.first_invalid.has_value();
  if (!*ok) {
    const double z = s.uncensored[*r.first_invalid];
    fail(diagnostic, "density is not positive at z = " + format_double(z) +
                         " (f = " + format_double(dist.pdf(z)) + ")");
  }
  return r.sum;
}

std::size_t dimension_for(const Family& family, FitMode mode) {
  return family.dimension() + (mode == FitMode::extended ? 1 : 0);
}

// Type-7 sample quantile of sorted data.
double sorted_quantile(const std::vector<double>& sorted, double prob) {
  const double h = prob * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(const std::optional<double>& x) {
  return x ? format_double(*x) : std::string();
}

nlohmann::json json_number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

nlohmann::json fit_json(const FitResult& r) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [name, value] : r.theta_hat.named()) params[name] = json_number(value);
  nlohmann::json j;
  j["family"] = r.family;
  j["mode"] = std::string(to_string(r.mode));
  j["params"] = params;
  j["q"] = r.q_hat ? json_number(*r.q_hat) : nlohmann::json(nullptr);
  j["point_mass"] = json_number(r.point_mass);
  j["mean"] = json_number(r.mean);
  j["loglik_total"] = json_number(r.loglik_total);
  j["loglik_conditional"] = json_number(r.loglik_conditional);
  j["aic"] = json_number(r.aic);
  j["n"] = r.n;
  j["k"] = r.k;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["evaluations"] = r.evaluations;
  j["boundary_proximity"] = json_number(r.boundary_proximity);
  j["at_boundary"] = r.at_boundary;
  return j;
}

}  // namespace

SplitSample split_sample(std::span<const double> sample) {
  SplitSample s;
  s.uncensored.reserve(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double z = sample[i];
    if (!(z >= 0.0) || !(z <= 1.0 + kCensorTol))
      throw DataError("observation " + std::to_string(i) + " = " + format_double(z) +
                      " lies outside [0,1]");
    if (is_censored(z))
      ++s.censored;
    else
      s.uncensored.push_back(z);
  }
  return s;
}

std::string_view to_string(FitMode mode) {
  return mode == FitMode::standard ? "standard" : "extended";
}

FitMode parse_fit_mode(std::string_view text) {
  if (text == "standard") return FitMode::standard;
  if (text == "extended") return FitMode::extended;
  throw DomainError("unknown mode '" + std::string(text) + "' (expected standard or extended)");
}

double loglik_standard(const CensoredDistribution& dist, const SplitSample& sample,
                       std::string* diagnostic) {
  const double p = dist.point_mass();
  if (sample.censored > 0 && !(p > 0.0))
    return fail(diagnostic, "point mass p = " + format_double(p) + " is not positive");
  bool ok = true;
  const double sum = sum_log_pdf(dist, sample, diagnostic, &ok);
  if (!ok) return -kInf;
  return sample.censored > 0 ? sum + static_cast<double>(sample.censored) * std::log(p) : sum;
}

double loglik_standard(const Family& family, std::span<const double> theta,
                       std::span<const double> sample, std::string* diagnostic) {
  return loglik_standard(family.distribution(theta), split_sample(sample), diagnostic);
}

double loglik_conditional(const CensoredDistribution& dist, const SplitSample& sample,
                          std::string* diagnostic) {
  const double p = dist.point_mass();
  if (!(p < 1.0))
    return fail(diagnostic, "point mass p = " + format_double(p) + " leaves no continuous part");
  bool ok = true;
  const double sum = sum_log_pdf(dist, sample, diagnostic, &ok);
  if (!ok) return -kInf;
  return sum - static_cast<double>(sample.uncensored.size()) * std::log1p(-p);
}

double loglik_extended(const CensoredDistribution& dist, double q, const SplitSample& sample,
                       std::string* diagnostic) {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("loglik_extended: require 0 <= q <= 1");
  const double nu = static_cast<double>(sample.uncensored.size());
  const double nc = static_cast<double>(sample.censored);
  if ((nc > 0 && q == 0.0) || (nu > 0 && q == 1.0))
    return fail(diagnostic, "q = " + format_double(q) + " gives an observed outcome zero mass");
  double ll = 0.0;
  if (nu > 0) {
    ll = loglik_conditional(dist, sample, diagnostic);
    if (!std::isfinite(ll)) return ll;
    ll += nu * std::log1p(-q);
  }
  if (nc > 0) ll += nc * std::log(q);
  return ll;
}

double loglik_extended(const Family& family, std::span<const double> theta, double q,
                       std::span<const double> sample, std::string* diagnostic) {
  return loglik_extended(family.distribution(theta), q, split_sample(sample), diagnostic);
}

double aic(double loglik_total, std::size_t k) {
  if (k < 1) throw DomainError("aic: require k >= 1");
  return 2.0 * static_cast<double>(k) - 2.0 * loglik_total;
}

namespace {

// Every stride-th point of each part, so the censored fraction is kept.
SplitSample thin(const SplitSample& s, std::size_t target) {
  if (target == 0 || s.size() <= target) return s;
  const std::size_t stride = (s.size() + target - 1) / target;
  SplitSample out;
  for (std::size_t i = 0; i < s.uncensored.size(); i += stride) out.uncensored.push_back(s.uncensored[i]);
  out.censored = (s.censored + stride - 1) / stride;
  if (out.uncensored.empty()) out.uncensored.push_back(s.uncensored.front());
  return out;
}

}  // namespace

FitResult fit(const Family& family, std::span<const double> sample, FitMode mode,
              const FitOptions& options) {
  if (sample.empty()) throw DataError("fit: empty sample");
  const SplitSample s = split_sample(sample);
  const std::size_t k = dimension_for(family, mode);
  if (s.uncensored.empty())
    throw FitError(std::string(family.name()) + ": no uncensored observations, theta is not identified");
  if (s.size() <= k)
    throw FitError(std::string(family.name()) + ": " + std::to_string(s.size()) +
                   " observations cannot identify " + std::to_string(k) + " parameters");

  auto negative_loglik = [&](const SplitSample& data) {
    return [&family, &data, mode](std::span<const double> u) {
      const std::vector<double> theta = family.from_unconstrained(u);
      for (double t : theta)
        if (!std::isfinite(t)) return kInf;
      if (family.fit_domain_violation(theta)) return kInf;
      try {
        const CensoredDistribution dist = family.distribution(theta);
        return -(mode == FitMode::standard ? loglik_standard(dist, data)
                                           : loglik_conditional(dist, data));
      } catch (const Error&) {
        return kInf;
      }
    };
  };
  const SplitSample screen_data = thin(s, options.screening_sample);
  const auto objective = negative_loglik(s);
  const auto screen_objective = negative_loglik(screen_data);

  std::vector<std::vector<double>> starts = options.extra_starts;
  for (auto& p : family.initial_points()) starts.push_back(std::move(p));

  std::ostringstream trace;
  std::optional<SimplexResult> best;
  int iterations = 0, evaluations = 0;
  SimplexOptions screen = options.simplex;
  screen.max_evaluations = std::min(options.screening_evaluations, options.simplex.max_evaluations);
  for (const auto& theta0 : starts) {
    if (auto v = family.fit_domain_violation(theta0)) {
      trace << "\n  start rejected: " << *v;
      continue;
    }
    SimplexResult r = nelder_mead(screen_objective, family.to_unconstrained(theta0), screen);
    iterations += r.iterations;
    evaluations += r.evaluations;
    if (!std::isfinite(r.value)) {
      trace << "\n  start diverged: no finite likelihood reached";
      continue;
    }
    if (!best || r.value < best->value) best = std::move(r);
  }
  if (!best)
    throw FitError(std::string(family.name()) + " (" + std::string(to_string(mode)) +
                   "): every start failed" + trace.str());

  SimplexResult polished = nelder_mead(objective, best->x, options.simplex);
  iterations += polished.iterations;
  evaluations += polished.evaluations;
  SimplexOptions again = options.simplex;
  again.initial_step = 0.2 * options.simplex.initial_step;
  SimplexResult restarted = nelder_mead(objective, polished.x, again);
  iterations += restarted.iterations;
  evaluations += restarted.evaluations;
  const SimplexResult& final_run = restarted.value <= polished.value ? restarted : polished;

  std::vector<double> theta = family.from_unconstrained(final_run.x);
  const CensoredDistribution dist = family.distribution(theta);
  FitResult out{.family = std::string(family.name()),
                .mode = mode,
                .theta_hat = ParamVector(family, theta)};
  out.n = s.size();
  out.k = k;
  out.converged = restarted.converged;
  out.iterations = iterations;
  out.evaluations = evaluations;
  out.loglik_conditional = loglik_conditional(dist, s);
  if (mode == FitMode::standard) {
    out.loglik_total = loglik_standard(dist, s);
    out.point_mass = dist.point_mass();
    out.mean = dist.mean();
  } else {
    const double q = s.censored_fraction();
    const double p = dist.point_mass();
    out.q_hat = q;
    out.loglik_total = loglik_extended(dist, q, s);
    out.point_mass = q;
    out.mean = (1.0 - q) * (dist.mean() - p) / (1.0 - p) + q;
  }
  out.aic = aic(out.loglik_total, k);
  for (double u : final_run.x) out.boundary_proximity = std::max(out.boundary_proximity, std::abs(u));
  out.at_boundary = out.boundary_proximity > kBoundaryThreshold ||
                    (out.q_hat && (*out.q_hat == 0.0 || *out.q_hat == 1.0));
  return out;
}

double kde_bandwidth(std::span<const double> points) {
  const std::size_t m = points.size();
  if (m < 2) return 0.0;
  const double mean = std::accumulate(points.begin(), points.end(), 0.0) / static_cast<double>(m);
  double ss = 0.0;
  for (double x : points) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(m - 1));
  std::vector<double> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);
  double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  if (!(spread > 0.0)) return 0.0;
  return 0.9 * spread * std::pow(static_cast<double>(m), -0.2);
}

EmpiricalStats empirical_stats(std::span<const double> sample, int bins, int kde_points) {
  if (sample.empty()) throw DataError("empirical_stats: empty sample");
  if (bins < 1) throw DomainError("empirical_stats: bins must be >= 1");
  if (kde_points < 2) throw DomainError("empirical_stats: kde grid needs >= 2 points");
  for (std::size_t i = 0; i < sample.size(); ++i)
    if (!(sample[i] > 0.0))
      throw DataError("observation " + std::to_string(i) + " = " + format_double(sample[i]) +
                      " lies outside (0,1]");
  const SplitSample s = split_sample(sample);

  EmpiricalStats out;
  out.n = s.size();
  out.censored = s.censored;
  out.point_mass_at_1 = s.censored_fraction();
  double total = static_cast<double>(s.censored);
  for (double z : s.uncensored) total += z;
  out.mean = total / static_cast<double>(out.n);

  out.histogram.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) out.histogram.edges[i] = static_cast<double>(i) / bins;
  out.histogram.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double z : s.uncensored) {
    const auto bin = std::min(static_cast<std::size_t>(z * bins), static_cast<std::size_t>(bins) - 1);
    ++out.histogram.counts[bin];
  }

  out.bandwidth = kde_bandwidth(s.uncensored);
  if (out.bandwidth > 0.0) {
    out.kde_grid.resize(static_cast<std::size_t>(kde_points));
    for (int i = 0; i < kde_points; ++i) out.kde_grid[i] = static_cast<double>(i) / kde_points;
    out.kde = kde_evaluate(s.uncensored, out.bandwidth, out.kde_grid);
  }
  return out;
}

ComparisonTable compare(std::span<const Family* const> families, std::span<const double> sample,
                        std::span<const FitMode> modes, const FitOptions& options) {
  if (families.empty()) throw DomainError("compare: need at least one family");
  if (modes.empty()) throw DomainError("compare: need at least one mode");
  const EmpiricalStats stats = empirical_stats(sample);

  ComparisonTable table;
  table.rows.push_back({.family = "empirical",
                        .status = "ok",
                        .point_mass = stats.point_mass_at_1,
                        .mean = stats.mean});

  std::vector<ComparisonRow> fitted, failed;
  for (const Family* family : families) {
    for (FitMode mode : modes) {
      ComparisonRow row{.family = std::string(family->name()),
                        .mode = std::string(to_string(mode)),
                        .k = dimension_for(*family, mode)};
      try {
        FitResult r = fit(*family, sample, mode, options);
        row.status = r.at_boundary ? "boundary" : (r.converged ? "ok" : "not-converged");
        row.point_mass = r.point_mass;
        row.mean = r.mean;
        row.loglik_conditional = r.loglik_conditional;
        row.loglik_total = r.loglik_total;
        row.aic = r.aic;
        row.fit = std::move(r);
        fitted.push_back(std::move(row));
      } catch (const Error& e) {
        row.status = std::string("failed: ") + e.what();
        row.point_mass = std::numeric_limits<double>::quiet_NaN();
        row.mean = std::numeric_limits<double>::quiet_NaN();
        failed.push_back(std::move(row));
      }
    }
  }
  std::stable_sort(fitted.begin(), fitted.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
    if (*a.aic != *b.aic) return *a.aic < *b.aic;
    if (a.k != b.k) return a.k < b.k;
    if (a.family != b.family) return a.family < b.family;
    return a.mode < b.mode;
  });
  for (auto& r : fitted) table.rows.push_back(std::move(r));
  for (auto& r : failed) table.rows.push_back(std::move(r));
  return table;
}

std::string to_csv(const ComparisonTable& table) {
  std::string out = "family,mode,point_mass,mean,loglik_conditional,loglik_total,aic,status\n";
  for (const auto& r : table.rows) {
    const bool has_values = r.status.rfind("failed", 0) != 0;
    out += csv_field(r.family) + ',' + r.mode + ',' +
           (has_values ? format_double(r.point_mass) : "") + ',' +
           (has_values ? format_double(r.mean) : "") + ',' + csv_number(r.loglik_conditional) + ',' +
           csv_number(r.loglik_total) + ',' + csv_number(r.aic) + ',' + csv_field(r.status) + '\n';
  }
  return out;
}

std::string to_json(const ComparisonTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    nlohmann::json j;
    j["family"] = r.family;
    j["mode"] = r.mode.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.mode);
    j["point_mass"] = json_number(r.point_mass);
    j["mean"] = json_number(r.mean);
    j["loglik_conditional"] = r.loglik_conditional ? json_number(*r.loglik_conditional) : nullptr;
    j["loglik_total"] = r.loglik_total ? json_number(*r.loglik_total) : nullptr;
    j["aic"] = r.aic ? json_number(*r.aic) : nullptr;
    j["status"] = r.status;
    if (r.fit) j["params"] = fit_json(*r.fit)["params"];
    rows.push_back(std::move(j));
  }
  nlohmann::json j;
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string to_json(const FitResult& result) { return fit_json(result).dump(2) + "\n"; }

std::string to_json(const EmpiricalStats& stats) {
  nlohmann::json j;
  j["n"] = stats.n;
  j["censored"] = stats.censored;
  j["point_mass"] = stats.point_mass_at_1;
  j["mean"] = stats.mean;
  j["histogram"] = {{"edges", stats.histogram.edges}, {"counts", stats.histogram.counts}};
  j["bandwidth"] = stats.bandwidth;
  j["kde"] = {{"z", stats.kde_grid}, {"density", stats.kde}};
  return j.dump(2) + "\n";
}

}  // namespace bernegger
