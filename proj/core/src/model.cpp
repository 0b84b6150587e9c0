#include "quanto/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace quanto {

namespace {

// Breakpoints of the common refinement of several step functions on [0, horizon).
std::vector<double> merged_breaks(std::initializer_list<const StepFunction*> fns, double horizon) {
  std::vector<double> breaks;
  for (const auto* f : fns) {
    for (const auto& s : f->segments) {
      if (s.t_start >= 0.0 && s.t_start < horizon) breaks.push_back(s.t_start);
    }
  }
  breaks.push_back(0.0);
  breaks.push_back(horizon);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return breaks;
}

std::string interval_text(double a, double b) {
  std::ostringstream os;
  os << "[" << a << ", " << b << ")";
  return os.str();
}

void check_curve(const char* name, const VolatilityCurve& c, double eta,
                 std::vector<Violation>& out) {
  if (auto defect = c.sigma.structural_defect(); !defect.empty()) {
    out.push_back({"curve coverage", std::string(name) + " volatility: " + defect});
    return;
  }
  const auto& segs = c.sigma.segments;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const double end = i + 1 < segs.size() ? segs[i + 1].t_start : c.horizon();
    if (!(segs[i].value >= eta)) {
      std::ostringstream os;
      os << name << " sigma=" << segs[i].value << " on " << interval_text(segs[i].t_start, end)
         << " is below the floor eta=" << eta;
      out.push_back({"uniform ellipticity", os.str()});
    }
  }
}

}  // namespace

StepFunction StepFunction::constant(double value, double horizon) {
  return StepFunction{{Segment{0.0, value}}, horizon};
}

std::string StepFunction::structural_defect() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) return "horizon must be positive and finite";
  if (segments.empty()) return "no segments";
  if (segments.front().t_start != 0.0) return "first segment must start at 0";
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!std::isfinite(segments[i].value)) return "non-finite value";
    if (segments[i].t_start >= horizon) return "segment starts at or beyond the horizon";
    if (i > 0 && !(segments[i].t_start > segments[i - 1].t_start))
      return "segment start times must be strictly increasing";
  }
  return {};
}

double StepFunction::value_at(double t) const {
  auto it = std::upper_bound(segments.begin(), segments.end(), t,
                             [](double x, const Segment& s) { return x < s.t_start; });
  if (it == segments.begin()) return segments.front().value;
  return std::prev(it)->value;
}

double StepFunction::integral(double s, double t) const {
  double total = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const double lo = std::max(s, segments[i].t_start);
    const double hi = std::min(t, i + 1 < segments.size() ? segments[i + 1].t_start : horizon);
    if (hi > lo) total += segments[i].value * (hi - lo);
  }
  return total;
}

double StepFunction::integral_of_square(double s, double t) const {
  double total = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const double lo = std::max(s, segments[i].t_start);
    const double hi = std::min(t, i + 1 < segments.size() ? segments[i + 1].t_start : horizon);
    if (hi > lo) total += segments[i].value * segments[i].value * (hi - lo);
  }
  return total;
}

std::string to_string(CorrelationMode mode) {
  return mode == CorrelationMode::PayoffMixing ? "PayoffMixing" : "SdeMixing";
}

CorrelationMode parse_correlation_mode(const std::string& text) {
  if (text == "PayoffMixing" || text == "payoff") return CorrelationMode::PayoffMixing;
  if (text == "SdeMixing" || text == "sde") return CorrelationMode::SdeMixing;
  throw std::invalid_argument("unknown correlation_mode '" + text +
                              "' (expected PayoffMixing or SdeMixing)");
}

double MarketModel::discount() const { return std::exp(-rate * maturity()); }

double MarketModel::rho_complement() const { return std::sqrt(1.0 - rho * rho); }

double MarketModel::effective_index(double energy_T, double temperature_T) const {
  if (correlation_mode == CorrelationMode::SdeMixing) return temperature_T;
  return rho * energy_T + rho_complement() * temperature_T;
}

MarketModel MarketModel::with_rho(double new_rho) const {
  MarketModel m = *this;
  m.rho = new_rho;
  return m;
}

MarketModel MarketModel::with_initial(double f0_energy, double f0_temperature) const {
  MarketModel m = *this;
  m.energy.f0 = f0_energy;
  m.temperature.f0 = f0_temperature;
  return m;
}

bool ValidationReport::has(const std::string& invariant) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.invariant == invariant; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v.invariant << ": " << v.detail << "\n";
  return os.str();
}

ValidationReport validate_model(const MarketModel& m, double eta) {
  ValidationReport report;
  auto& out = report.violations;

  for (const auto* spec : {&m.energy, &m.temperature}) {
    const char* name = spec == &m.energy ? "energy" : "temperature";
    if (!(spec->f0 > 0.0) || !std::isfinite(spec->f0))
      out.push_back({"futures positivity", std::string(name) + " f0 must be positive"});
    if (!(spec->delivery_start > 0.0) || !(spec->delivery_start <= spec->delivery_end))
      out.push_back({"delivery period", std::string(name) + " requires 0 < tau1 <= tau2"});
  }
  if (m.energy.delivery_end != m.temperature.delivery_end)
    out.push_back({"horizon consistency", "energy and temperature contracts must share tau2"});

  check_curve("energy", m.energy_vol, eta, out);
  check_curve("temperature", m.temperature_vol, eta, out);
  if (m.energy_vol.horizon() != m.maturity() || m.temperature_vol.horizon() != m.maturity())
    out.push_back({"horizon consistency", "volatility curves must cover [0, tau2)"});

  if (!(std::abs(m.rho) < 1.0))
    out.push_back({"correlation bounds", "rho must lie in (-1, 1)"});
  if (!std::isfinite(m.rate)) out.push_back({"rate", "risk-free rate must be finite"});
  return report;
}

ValidationReport validate_tuning(const TuningFunction& a, double horizon) {
  ValidationReport report;
  if (auto defect = a.a.structural_defect(); !defect.empty()) {
    report.violations.push_back({"tuning coverage", defect});
    return report;
  }
  if (a.horizon() != horizon)
    report.violations.push_back({"horizon consistency", "tuning function must cover [0, tau2]"});
  const double mass = a.a.integral(0.0, a.horizon());
  if (!(std::abs(mass - 1.0) <= kTuningNormalizationTol)) {
    std::ostringstream os;
    os << "integral of a over [0, tau2] is " << mass << ", expected 1";
    report.violations.push_back({"tuning normalization", os.str()});
  }
  return report;
}

ValidationReport validate_model(const MarketModel& m, const TuningFunction& a, double eta) {
  auto report = validate_model(m, eta);
  auto tuning = validate_tuning(a, m.maturity());
  report.violations.insert(report.violations.end(), tuning.violations.begin(),
                           tuning.violations.end());
  return report;
}

double integrated_variance(const VolatilityCurve& curve, double s, double t) {
  if (s > t) throw std::invalid_argument("integrated_variance: s must not exceed t");
  if (s < 0.0 || t > curve.horizon())
    throw std::invalid_argument("integrated_variance: interval outside [0, tau2]");
  return curve.sigma.integral_of_square(s, t);
}

KernelMoments weight_kernel_moments(const VolatilityCurve& curve, const TuningFunction& a) {
  const double horizon = curve.horizon();
  const auto breaks = merged_breaks({&curve.sigma, &a.a}, horizon);
  KernelMoments k;
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    const double t = breaks[j];
    const double dt = breaks[j + 1] - t;
    const double sig = curve.sigma.value_at(t);
    const double av = a.a.value_at(t);
    k.v_aa += av * av / (sig * sig) * dt;
    k.v_as += av * dt;
    k.v_ss += sig * sig * dt;
  }
  return k;
}

double weight_cross_moment(const VolatilityCurve& energy, const VolatilityCurve& temperature,
                           const TuningFunction& a) {
  const double horizon = energy.horizon();
  const auto breaks = merged_breaks({&energy.sigma, &temperature.sigma, &a.a}, horizon);
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    const double t = breaks[j];
    const double av = a.a.value_at(t);
    total += av * av / (energy.sigma.value_at(t) * temperature.sigma.value_at(t)) *
             (breaks[j + 1] - t);
  }
  return total;
}

std::vector<GridCell> merged_grid(const MarketModel& m, const TuningFunction& a) {
  const double horizon = m.maturity();
  const auto breaks =
      merged_breaks({&m.energy_vol.sigma, &m.temperature_vol.sigma, &a.a}, horizon);
  std::vector<GridCell> cells;
  cells.reserve(breaks.size());
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    const double t = breaks[j];
    cells.push_back({t, breaks[j + 1] - t, m.energy_vol.sigma.value_at(t),
                     m.temperature_vol.sigma.value_at(t), a.a.value_at(t)});
  }
  return cells;
}

LognormalCoordinates::LognormalCoordinates(const MarketModel& m)
    : f0_e_(m.energy.f0), f0_i_(m.temperature.f0) {
  const double horizon = m.maturity();
  var_e_ = integrated_variance(m.energy_vol, 0.0, horizon);
  var_i_ = integrated_variance(m.temperature_vol, 0.0, horizon);
  sd_e_ = std::sqrt(var_e_);
  sd_i_ = std::sqrt(var_i_);
  corr_ = 0.0;
  if (m.correlation_mode == CorrelationMode::SdeMixing && sd_e_ > 0.0 && sd_i_ > 0.0) {
    const auto breaks = merged_breaks({&m.energy_vol.sigma, &m.temperature_vol.sigma}, horizon);
    double cross = 0.0;
    for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
      cross += m.energy_vol.sigma.value_at(breaks[j]) *
               m.temperature_vol.sigma.value_at(breaks[j]) * (breaks[j + 1] - breaks[j]);
    }
    corr_ = m.rho * cross / (sd_e_ * sd_i_);
  }
  corr_c_ = std::sqrt(1.0 - corr_ * corr_);
}

double LognormalCoordinates::energy(double z1) const {
  return f0_e_ * std::exp(-0.5 * var_e_ + sd_e_ * z1);
}

double LognormalCoordinates::temperature(double z1, double z2) const {
  return f0_i_ * std::exp(-0.5 * var_i_ + sd_i_ * (corr_ * z1 + corr_c_ * z2));
}

double LognormalCoordinates::energy_coordinate(double level) const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (!(level > 0.0)) return -inf;
  const double x = std::log(level / f0_e_) + 0.5 * var_e_;
  if (sd_e_ == 0.0) return x > 0.0 ? inf : -inf;
  return x / sd_e_;
}

double LognormalCoordinates::temperature_coordinate(double z1, double level) const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (!(level > 0.0)) return -inf;
  const double x = std::log(level / f0_i_) + 0.5 * var_i_ - sd_i_ * corr_ * z1;
  const double scale = sd_i_ * corr_c_;
  if (scale == 0.0) return x > 0.0 ? inf : -inf;
  return x / scale;
}

}  // namespace quanto
