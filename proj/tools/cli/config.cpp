#include "config.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <set>

#include <json.hpp>

namespace quanto::cli {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "tau1", "tau2", "rho", "rate", "correlation_mode", "eta", "tuning",
      "energy.f0", "energy.sigma", "temperature.f0", "temperature.sigma",
      "payoff.variant", "payoff.kE", "payoff.kI", "payoff.kE_high", "payoff.kI_high",
      "payoff.kE_low", "payoff.kI_low", "payoff.alpha",
      "payoff.g", "payoff.g_left_slope", "payoff.g_right_slope",
      "payoff.h", "payoff.h_left_slope", "payoff.h_right_slope",
      "sim.n", "sim.seed", "sim.antithetic", "sim.scheme",
      "fd.bump", "quad.nodes", "quad.halfwidth", "quad.tol"};
  return keys;
}

class Reader {
 public:
  explicit Reader(const KeyValues& kv) : kv_(kv) {}

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  json value(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError(key, "missing required key '" + key + "'");
    const std::string& text = it->second;
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) return json(text);  // bare word
    return parsed;
  }

  double number(const std::string& key) const {
    const json v = value(key);
    if (!v.is_number()) throw ConfigError(key, "key '" + key + "' must be a number");
    return v.get<double>();
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  std::string word(const std::string& key) const {
    const json v = value(key);
    if (!v.is_string()) throw ConfigError(key, "key '" + key + "' must be a word");
    return v.get<std::string>();
  }

  std::vector<std::pair<double, double>> pairs(const std::string& key) const {
    const json v = value(key);
    std::vector<std::pair<double, double>> out;
    if (!v.is_array() || v.empty())
      throw ConfigError(key, "key '" + key + "' must be a list [[x0, y0], ...]");
    for (const auto& item : v) {
      if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
        throw ConfigError(key, "key '" + key + "' entries must be numeric pairs");
      out.emplace_back(item[0].get<double>(), item[1].get<double>());
    }
    return out;
  }

  StepFunction step_function(const std::string& key, double horizon) const {
    const json v = value(key);
    if (v.is_number()) return StepFunction::constant(v.get<double>(), horizon);
    StepFunction f;
    f.horizon = horizon;
    for (const auto& [t, x] : pairs(key)) f.segments.push_back({t, x});
    return f;
  }

 private:
  const KeyValues& kv_;
};

PiecewiseLinear leg(const Reader& r, const std::string& name) {
  PiecewiseLinear f;
  f.knots = r.pairs("payoff." + name);
  f.left_slope = r.number_or("payoff." + name + "_left_slope", 0.0);
  f.right_slope = r.number_or("payoff." + name + "_right_slope", 0.0);
  return f;
}

PayoffSpec read_payoff(const Reader& r) {
  const std::string variant = r.word("payoff.variant");
  if (variant == "ProductCall") return ProductCall{r.number("payoff.kE"), r.number("payoff.kI")};
  if (variant == "DigitalProduct")
    return DigitalProduct{r.number("payoff.kE"), r.number("payoff.kI")};
  if (variant == "FourStrikeCollar") {
    return FourStrikeCollar{r.number("payoff.kE_high"), r.number("payoff.kI_high"),
                            r.number("payoff.kE_low"), r.number("payoff.kI_low"),
                            r.number_or("payoff.alpha", 1.0)};
  }
  if (variant == "Separable") return Separable{leg(r, "g"), leg(r, "h")};
  throw ConfigError("payoff.variant", "unknown payoff.variant '" + variant + "'");
}

std::size_t count_value(const Reader& r, const std::string& key) {
  const double v = r.number(key);
  if (!(v >= 1.0) || v != std::floor(v))
    throw ConfigError(key, key + " must be a positive integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(key, "line " + std::to_string(line_no) + ": empty key or value");
    if (!known_keys().count(key)) throw ConfigError(key, "unknown key '" + key + "'");
    if (kv.count(key)) throw ConfigError(key, "duplicate key '" + key + "'");
    kv[key] = value;
  }
  return kv;
}

RunConfig build_run_config(const KeyValues& kv) {
  const Reader r(kv);
  RunConfig rc;
  rc.echo = kv;

  const double tau1 = r.number("tau1");
  const double tau2 = r.number("tau2");
  auto& m = rc.model;
  m.energy = {r.number("energy.f0"), tau1, tau2};
  m.temperature = {r.number("temperature.f0"), tau1, tau2};
  m.energy_vol = {r.step_function("energy.sigma", tau2)};
  m.temperature_vol = {r.step_function("temperature.sigma", tau2)};
  m.rho = r.number("rho");
  m.rate = r.number_or("rate", 0.0);
  if (r.has("correlation_mode")) {
    try {
      m.correlation_mode = parse_correlation_mode(r.word("correlation_mode"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("correlation_mode", e.what());
    }
  }
  rc.eta = r.number_or("eta", kDefaultEllipticityFloor);

  if (!r.has("tuning") || r.value("tuning") == json("uniform")) {
    rc.tuning = TuningFunction::uniform(tau2);
  } else {
    rc.tuning = {r.step_function("tuning", tau2)};
  }

  rc.payoff = read_payoff(r);

  if (r.has("sim.n")) rc.sim.n_samples = count_value(r, "sim.n");
  if (r.has("sim.seed")) {
    const json v = r.value("sim.seed");
    if (!v.is_number_unsigned())
      throw ConfigError("sim.seed", "sim.seed must be a nonnegative integer");
    rc.sim.seed = v.get<std::uint64_t>();
  }
  if (r.has("sim.antithetic")) {
    const json v = r.value("sim.antithetic");
    if (!v.is_boolean())
      throw ConfigError("sim.antithetic", "sim.antithetic must be true or false");
    rc.sim.antithetic = v.get<bool>();
  }
  if (r.has("sim.scheme")) {
    try {
      rc.sim.scheme = parse_scheme(r.word("sim.scheme"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("sim.scheme", e.what());
    }
  }
  rc.fd.bump = r.number_or("fd.bump", rc.fd.bump);
  if (r.has("quad.nodes")) rc.quad.nodes_per_panel = count_value(r, "quad.nodes");
  rc.quad.domain_halfwidth = r.number_or("quad.halfwidth", rc.quad.domain_halfwidth);
  rc.quad.tol = r.number_or("quad.tol", rc.quad.tol);
  return rc;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  return build_run_config(parse_key_values(in));
}

ValidationReport validate_run_config(const RunConfig& rc) {
  auto report = validate_model(rc.model, rc.tuning, rc.eta);
  auto payoff = validate_payoff(rc.payoff);
  report.violations.insert(report.violations.end(), payoff.violations.begin(),
                           payoff.violations.end());
  return report;
}

}  // namespace quanto::cli
