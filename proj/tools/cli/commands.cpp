#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "quanto/estimators.hpp"
#include "report.hpp"

namespace quanto::cli {

namespace {

struct Options {
  std::string config_path;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> seed;
  bool antithetic = false;
  std::optional<std::string> scheme;
  std::optional<unsigned> threads;
  std::vector<std::string> variants;
  bool all_variants = false;
  std::string oracle;
  std::string out_path;
  std::string format = "csv";
  std::string grid;
  std::string n_grid;
  bool timing = false;
};

/// Bad flag values or grids; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

void add_common(CLI::App& cmd, Options& o) {
  cmd.add_option("--config", o.config_path, "Model/payoff config file")->required();
  cmd.add_option("--n", o.n, "Number of Monte Carlo samples");
  cmd.add_option("--seed", o.seed, "Random seed");
  cmd.add_flag("--antithetic", o.antithetic, "Antithetic pairs");
  cmd.add_option("--scheme", o.scheme, "exact | euler:STEPS");
  cmd.add_option("--threads", o.threads, "Worker threads (results do not depend on it)");
  cmd.add_option("--out", o.out_path, "Write the report to PATH instead of stdout");
  cmd.add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  cmd.add_flag("--timing", o.timing, "Fill the seconds column with wall time");
}

double seconds_cell(const GreekEstimate& e, const Options& o) { return o.timing ? e.seconds : 0.0; }

std::vector<std::string> estimate_row(const GreekEstimate& e, const Options& o,
                                      std::optional<double> oracle_value,
                                      double oracle_stderr) {
  std::vector<std::string> row = {e.variant, format_number(e.value), format_number(e.std_error),
                                  std::to_string(e.n), format_number(seconds_cell(e, o)), "", ""};
  if (oracle_value) {
    row[5] = format_number(*oracle_value);
    const double se = std::sqrt(e.std_error * e.std_error + oracle_stderr * oracle_stderr);
    const double diff = e.value - *oracle_value;
    row[6] = format_number(se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : INFINITY));
  }
  return row;
}

std::vector<WeightVariant> requested_variants(const Options& o, const MarketModel& m) {
  if (o.all_variants) return {kAllWeightVariants.begin(), kAllWeightVariants.end()};
  std::vector<WeightVariant> out;
  for (const auto& name : o.variants) {
    try {
      out.push_back(parse_weight_variant(name));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (!out.empty()) return out;
  if (m.rho == 0.0)
    return {WeightVariant::IndepDeltaE, WeightVariant::IndepDeltaI, WeightVariant::IndepCrossGamma};
  return {WeightVariant::CorrDeltaE_Conditional, WeightVariant::CorrDeltaI_Prop52,
          WeightVariant::CorrCrossGamma_Conditional};
}

Report cmd_price(const RunConfig& rc, const Options& o) {
  Report r{"price", rc.sim.seed, rc.echo, kEstimateColumns, {}};
  const auto est = mc_price(rc.model, rc.payoff, rc.sim);
  std::optional<double> oracle;
  if (o.oracle == "quad" || o.oracle == "both") oracle = quad_price(rc.model, rc.payoff, rc.quad);
  r.rows.push_back(estimate_row(est, o, oracle, 0.0));
  if (oracle) r.rows.push_back({"Quadrature:price", format_number(*oracle), "0", "", "0", "", ""});
  return r;
}

Report cmd_greeks(const RunConfig& rc, const Options& o) {
  Report r{"greeks", rc.sim.seed, rc.echo, kEstimateColumns, {}};
  const auto variants = requested_variants(o, rc.model);
  const bool use_quad = o.oracle == "quad" || o.oracle == "both";
  const bool use_fd = o.oracle == "fd" || o.oracle == "both";

  std::map<Greek, double> quad;
  std::map<Greek, GreekEstimate> fd;
  std::vector<Greek> greek_order;
  for (auto v : variants) {
    const Greek g = greek_of(v);
    if (use_quad && !quad.count(g)) quad[g] = quad_greek(rc.model, rc.payoff, g, rc.quad);
    if (use_fd && !fd.count(g)) fd[g] = fd_greek(rc.model, rc.payoff, g, rc.fd, rc.sim);
    if (std::find(greek_order.begin(), greek_order.end(), g) == greek_order.end())
      greek_order.push_back(g);
  }

  for (auto v : variants) {
    const auto est = mc_greek(rc.model, rc.payoff, rc.tuning, v, rc.sim, true);
    const Greek g = greek_of(v);
    if (use_quad) {
      r.rows.push_back(estimate_row(est, o, quad[g], 0.0));
    } else if (use_fd) {
      r.rows.push_back(estimate_row(est, o, fd[g].value, fd[g].std_error));
    } else {
      r.rows.push_back(estimate_row(est, o, std::nullopt, 0.0));
    }
  }
  for (Greek g : greek_order) {
    if (use_fd) r.rows.push_back(estimate_row(fd[g], o, std::nullopt, 0.0));
    if (use_quad)
      r.rows.push_back({"Quadrature:" + to_string(g), format_number(quad[g]), "0", "", "0", "", ""});
  }
  return r;
}

WeightVariant single_variant(const Options& o, WeightVariant fallback) {
  if (o.variants.empty()) return fallback;
  if (o.variants.size() > 1) throw UsageError("this command takes a single --variant");
  try {
    return parse_weight_variant(o.variants.front());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Report cmd_sweep_rho(const RunConfig& rc, const Options& o) {
  std::vector<double> grid;
  try {
    grid = parse_float_list(o.grid);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--grid: ") + e.what());
  }
  for (double x : grid) {
    if (!(std::abs(x) < 1.0)) throw UsageError("--grid: rho values must satisfy |rho| < 1");
  }
  const WeightVariant v = single_variant(o, WeightVariant::CorrDeltaE_Conditional);
  if (!is_correlated(v)) throw UsageError("sweep-rho needs a correlated --variant");

  Report r{"sweep-rho", rc.sim.seed, rc.echo, {"rho", "delta_corr", "delta_ind", "abs_diff", "stderr"}, {}};
  r.echo["run.variant"] = to_string(v);
  for (const auto& row : residual_risk(rc.model, rc.payoff, rc.tuning, v, grid, rc.sim)) {
    r.rows.push_back({format_number(row.rho), format_number(row.delta_corr),
                      format_number(row.delta_ind), format_number(row.abs_diff),
                      format_number(row.std_error)});
  }
  return r;
}

Report cmd_converge(const RunConfig& rc, const Options& o) {
  std::vector<std::size_t> grid;
  try {
    grid = parse_count_list(o.n_grid);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--n-grid: ") + e.what());
  }
  std::optional<WeightVariant> variant;
  if (!o.variants.empty()) variant = single_variant(o, WeightVariant::IndepDeltaE);

  Report r{"converge", rc.sim.seed, rc.echo, {"n", "value", "stderr"}, {}};
  r.echo["run.variant"] = variant ? to_string(*variant) : "price";
  std::vector<ConvergenceRow> rows;
  try {
    rows = convergence_table(rc.model, rc.payoff, rc.tuning, variant, grid, rc.sim);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--n-grid: ") + e.what());
  }
  for (const auto& row : rows) {
    r.rows.push_back({std::to_string(row.n), format_number(row.value), format_number(row.std_error)});
  }
  return r;
}

RunConfig prepare(const Options& o) {
  RunConfig rc = load_run_config(o.config_path);
  if (o.n) rc.sim.n_samples = *o.n;
  if (o.seed) rc.sim.seed = *o.seed;
  if (o.antithetic) rc.sim.antithetic = true;
  if (o.scheme) {
    try {
      rc.sim.scheme = parse_scheme(*o.scheme);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (o.threads) rc.sim.threads = *o.threads;
  try {
    validate_sim_config(rc.sim);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  // Effective sampling settings become part of the provenance echo.
  rc.echo["sim.n"] = std::to_string(rc.sim.n_samples);
  rc.echo["sim.seed"] = std::to_string(rc.sim.seed);
  rc.echo["sim.scheme"] = to_string(rc.sim.scheme);
  rc.echo["sim.antithetic"] = rc.sim.antithetic ? "true" : "false";
  return rc;
}

}  // namespace

std::vector<double> parse_float_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size() || !std::isfinite(x))
      throw std::invalid_argument("'" + item + "' is not a number");
    out.push_back(x);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<std::size_t> parse_count_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (double x : parse_float_list(text)) {
    if (!(x >= 1.0) || x != std::floor(x) || x > 1e15)
      throw std::invalid_argument(format_number(x) + " is not a positive integer count");
    out.push_back(static_cast<std::size_t>(x));
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monte Carlo pricing and Malliavin Greeks for energy quanto options"};
  app.require_subcommand(1);
  Options o;

  auto* price = app.add_subcommand("price", "Price estimate with standard error");
  add_common(*price, o);
  price->add_option("--oracle", o.oracle, "quad | both: add the quadrature price")
      ->check(CLI::IsMember({"fd", "quad", "both"}));

  auto* greeks = app.add_subcommand("greeks", "Malliavin Greek estimates");
  add_common(*greeks, o);
  greeks->add_option("--variant", o.variants, "Weight variant (repeatable)");
  greeks->add_flag("--all-variants", o.all_variants, "Run every weight variant");
  greeks->add_option("--oracle", o.oracle, "fd | quad | both")
      ->check(CLI::IsMember({"fd", "quad", "both"}));

  auto* sweep = app.add_subcommand("sweep-rho", "Residual risk |Greek(rho) - Greek(0)|");
  add_common(*sweep, o);
  sweep->add_option("--grid", o.grid, "Comma-separated rho values in (-1, 1)")->required();
  sweep->add_option("--variant", o.variants, "Correlated weight variant");

  auto* converge = app.add_subcommand("converge", "Estimates and standard errors over an N grid");
  add_common(*converge, o);
  converge->add_option("--n-grid", o.n_grid, "Comma-separated increasing sample counts")
      ->required();
  converge->add_option("--variant", o.variants, "Weight variant (default: price)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    const RunConfig rc = prepare(o);
    if (auto report = validate_run_config(rc); !report.ok()) {
      err << "model validation failed:\n" << report.to_string();
      return kExitValidationError;
    }
    Report report;
    if (*price) {
      report = cmd_price(rc, o);
    } else if (*greeks) {
      report = cmd_greeks(rc, o);
    } else if (*sweep) {
      report = cmd_sweep_rho(rc, o);
    } else {
      report = cmd_converge(rc, o);
    }
    const std::string text =
        render(report, o.format == "json" ? OutputFormat::Json : OutputFormat::Csv);
    if (o.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(o.out_path, std::ios::binary);
      if (!file) {
        err << "error: cannot write '" << o.out_path << "'\n";
        return kExitFailure;
      }
      file << text;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace quanto::cli
