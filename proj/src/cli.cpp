#include "bernegger/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "bernegger/claims_io.hpp"
#include "bernegger/errors.hpp"
#include "bernegger/families.hpp"
#include "bernegger/fitting.hpp"
#include "bernegger/format.hpp"
#include "bernegger/mbbefd.hpp"

namespace bernegger {

namespace {

struct Config {
  std::vector<std::string> families;
  std::vector<std::string> modes;
  std::string input;
  std::string schema = "z";
  std::vector<std::string> params;
  std::optional<double> swiss_re;
  int grid = 101;
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  std::string out;
  std::string format;
  int bins = 50;
};

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> named;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw DomainError("--param expects name=value, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    double value = 0.0;
    try {
      value = parse_double(std::string_view(item).substr(eq + 1));
    } catch (const DataError&) {
      throw DomainError("--param " + name + ": not a number: '" + item.substr(eq + 1) + "'");
    }
    if (!named.emplace(name, value).second) throw DomainError("--param " + name + " given twice");
  }
  return named;
}

const Family& single_family(const Config& c) {
  if (c.families.size() != 1) throw DomainError("exactly one --family is required");
  return find_family(c.families.front());
}

// Family and parameters from --family/--param, or the --swiss-re shortcut.
ParamVector chosen_params(const Config& c) {
  if (c.swiss_re) {
    if (!c.params.empty()) throw DomainError("--swiss-re cannot be combined with --param");
    if (!c.families.empty() && !(c.families.size() == 1 && c.families.front() == "mbbefd"))
      throw DomainError("--swiss-re selects the mbbefd family");
    const MbbefdParams p = swiss_re_params(*c.swiss_re);
    return ParamVector(find_family("mbbefd"), {p.b, p.g});
  }
  return ParamVector::from_named(single_family(c), parse_params(c.params));
}

// The degenerate MBBEFD curve puts all mass at 1.
CensoredDistribution distribution_or_atom(const ParamVector& theta) {
  try {
    return theta.distribution();
  } catch (const DegenerateError&) {
    return CensoredDistribution([](double) { return 0.0; }, [](double) { return 0.0; }, 1.0, 1.0);
  }
}

NormalizedSample read_input(const Config& c, std::ostream& err) {
  if (c.input.empty()) throw DataError("--input is required");
  NormalizedSample s = load_claims(c.input, parse_schema(c.schema));
  if (s.dropped_zero > 0)
    err << "note: " << s.dropped_zero << " record(s) with z = 0 excluded from the sample\n";
  if (s.z_values.empty()) throw DataError("no observations with z > 0 in '" + c.input + "'");
  return s;
}

void emit(const Config& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw DataError("cannot write '" + c.out + "'");
  file << text;
  if (!file) throw DataError("write failed for '" + c.out + "'");
}

void require_format(const Config& c, std::initializer_list<std::string_view> allowed) {
  for (auto a : allowed)
    if (c.format == a) return;
  throw DomainError("unsupported --format '" + c.format + "' for this command");
}

int cmd_fit(Config c, std::ostream& out, std::ostream& err) {
  if (c.format.empty()) c.format = "json";
  require_format(c, {"json", "csv"});
  const Family& family = single_family(c);
  if (c.modes.size() > 1) throw DomainError("fit takes a single --mode");
  const FitMode mode = parse_fit_mode(c.modes.empty() ? "standard" : c.modes.front());
  FitOptions options;
  if (!c.params.empty()) {
    const ParamVector start = ParamVector::from_named(family, parse_params(c.params));
    if (auto v = family.fit_domain_violation(start.values()))
      throw DomainError("initial parameters: " + *v);
    options.extra_starts.emplace_back(start.values().begin(), start.values().end());
  }
  const NormalizedSample sample = read_input(c, err);
  const FitResult result = fit(family, sample.z_values, mode, options);

  std::string text;
  if (c.format == "json") {
    text = to_json(result);
  } else {
    ComparisonRow row{.family = result.family,
                      .mode = std::string(to_string(mode)),
                      .status = result.at_boundary ? "boundary"
                                                   : (result.converged ? "ok" : "not-converged"),
                      .k = result.k,
                      .point_mass = result.point_mass,
                      .mean = result.mean,
                      .loglik_conditional = result.loglik_conditional,
                      .loglik_total = result.loglik_total,
                      .aic = result.aic};
    text = to_csv(ComparisonTable{{row}});
  }
  emit(c, text, out);
  if (result.at_boundary) err << "warning: estimate lies on the boundary of the parameter domain\n";
  if (!result.converged) {
    err << "error: optimizer did not converge within the evaluation budget\n";
    return kExitFitFailure;
  }
  return kExitOk;
}

int cmd_compare(Config c, std::ostream& out, std::ostream& err) {
  if (c.format.empty()) c.format = "csv";
  require_format(c, {"json", "csv"});
  if (!c.params.empty()) throw DomainError("compare does not take --param");
  std::vector<const Family*> families;
  if (c.families.empty()) {
    for (const Family* f : all_families()) families.push_back(f);
  } else {
    for (const auto& name : c.families) families.push_back(&find_family(name));
  }
  std::vector<FitMode> modes;
  if (c.modes.empty()) modes = {FitMode::standard, FitMode::extended};
  for (const auto& m : c.modes) modes.push_back(parse_fit_mode(m));

  const NormalizedSample sample = read_input(c, err);
  const ComparisonTable table = compare(families, sample.z_values, modes);
  for (const auto& row : table.rows)
    if (row.status.rfind("failed", 0) == 0)
      err << "warning: " << row.family << " (" << row.mode << ") " << row.status << '\n';
  emit(c, c.format == "csv" ? to_csv(table) : to_json(table), out);
  return kExitOk;
}

int cmd_curve(Config c, std::ostream& out, std::ostream&) {
  if (c.format.empty()) c.format = "csv";
  require_format(c, {"csv"});
  if (c.grid < 2) throw DomainError("--grid must be >= 2");
  const ParamVector theta = chosen_params(c);
  const ExposureCurve curve = theta.family().curve(theta.values());
  const CensoredDistribution dist = distribution_or_atom(theta);

  std::string text = "z,G,F,f\n";
  for (int i = 0; i < c.grid; ++i) {
    const double z = static_cast<double>(i) / (c.grid - 1);
    text += format_double(z) + ',' + format_double(curve.g(z)) + ',' + format_double(dist.cdf(z)) +
            ',' + format_double(dist.pdf(z)) + '\n';
  }
  text += "# point_mass=" + format_double(dist.point_mass()) + ", mean=" + format_double(dist.mean()) +
          '\n';
  emit(c, text, out);
  return kExitOk;
}

int cmd_simulate(Config c, std::ostream& out, std::ostream&) {
  if (c.format.empty()) c.format = "csv";
  require_format(c, {"csv"});
  const ParamVector theta = chosen_params(c);
  const CensoredDistribution dist = distribution_or_atom(theta);
  const std::vector<double> z = sample(dist, c.n, c.seed);
  std::ostringstream text;
  write_z_csv(text, z);
  emit(c, text.str(), out);
  return kExitOk;
}

int cmd_stats(Config c, std::ostream& out, std::ostream& err) {
  if (c.format.empty()) c.format = "json";
  require_format(c, {"json"});
  const NormalizedSample sample = read_input(c, err);
  emit(c, to_json(empirical_stats(sample.z_values, c.bins)), out);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exposure-curve distributions: fit, compare, curve, simulate, stats"};
  app.require_subcommand(1);
  Config c;

  auto add_family = [&](CLI::App* sub, bool many) {
    if (many)
      sub->add_option("--family", c.families, "Family names (repeatable; default: all)");
    else
      sub->add_option("--family", c.families, "Family name")->expected(1);
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input", c.input, "CSV input file")->required();
    sub->add_option("--schema", c.schema, "Input schema: z or raw");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", c.out, "Output file (default: stdout)");
    sub->add_option("--format", c.format, "Output format: csv or json");
  };
  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--param", c.params, "Parameter as name=value (repeatable)");
  };

  CLI::App* fit_cmd = app.add_subcommand("fit", "Maximum-likelihood fit of one family");
  add_family(fit_cmd, false);
  fit_cmd->add_option("--mode", c.modes, "standard or extended")->expected(1);
  add_input(fit_cmd);
  add_params(fit_cmd);
  add_output(fit_cmd);

  CLI::App* compare_cmd = app.add_subcommand("compare", "Fit several families and rank by AIC");
  add_family(compare_cmd, true);
  compare_cmd->add_option("--mode", c.modes, "Modes to fit (repeatable; default: both)");
  add_input(compare_cmd);
  add_params(compare_cmd);
  add_output(compare_cmd);

  CLI::App* curve_cmd = app.add_subcommand("curve", "Tabulate z, G, F, f on a grid");
  add_family(curve_cmd, false);
  add_params(curve_cmd);
  curve_cmd->add_option("--swiss-re", c.swiss_re, "Swiss Re / Lloyd's curve with parameter c");
  curve_cmd->add_option("--grid", c.grid, "Number of grid points");
  add_output(curve_cmd);

  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Draw a sample of normalized losses");
  add_family(simulate_cmd, false);
  add_params(simulate_cmd);
  simulate_cmd->add_option("--swiss-re", c.swiss_re, "Swiss Re / Lloyd's curve with parameter c");
  simulate_cmd->add_option("--n", c.n, "Number of draws");
  simulate_cmd->add_option("--seed", c.seed, "Random seed");
  add_output(simulate_cmd);

  CLI::App* stats_cmd = app.add_subcommand("stats", "Empirical point mass, mean, histogram, kde");
  add_input(stats_cmd);
  stats_cmd->add_option("--bins", c.bins, "Histogram bins");
  add_output(stats_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitInputError;
  }

  try {
    if (*fit_cmd) return cmd_fit(c, out, err);
    if (*compare_cmd) return cmd_compare(c, out, err);
    if (*curve_cmd) return cmd_curve(c, out, err);
    if (*simulate_cmd) return cmd_simulate(c, out, err);
    return cmd_stats(c, out, err);
  } catch (const FitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFitFailure;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"bernegger"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace bernegger
