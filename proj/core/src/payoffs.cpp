#include "quanto/payoffs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace quanto {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double call(double x, double k) { return x > k ? x - k : 0.0; }
double put(double x, double k) { return k > x ? k - x : 0.0; }

void check_strike(const char* name, double k, ValidationReport& r) {
  if (!(k >= 0.0) || !std::isfinite(k))
    r.violations.push_back({"strike sign", std::string(name) + " must be a finite value >= 0"});
}

void check_leg(const char* name, const PiecewiseLinear& f, ValidationReport& r) {
  if (f.knots.empty()) {
    r.violations.push_back({"separable leg", std::string(name) + " needs at least one knot"});
    return;
  }
  for (std::size_t i = 0; i < f.knots.size(); ++i) {
    if (i > 0 && !(f.knots[i].first > f.knots[i - 1].first))
      r.violations.push_back(
          {"separable leg", std::string(name) + " knots must be strictly increasing"});
    if (!(f.knots[i].second >= 0.0))
      r.violations.push_back({"payoff positivity", std::string(name) + " knot value below 0"});
  }
  if (!(f.left_slope <= 0.0) || !(f.right_slope >= 0.0))
    r.violations.push_back({"payoff positivity",
                            std::string(name) + " needs left_slope <= 0 and right_slope >= 0"});
}

}  // namespace

double PiecewiseLinear::operator()(double x) const {
  if (x <= knots.front().first)
    return knots.front().second + left_slope * (x - knots.front().first);
  if (x >= knots.back().first) return knots.back().second + right_slope * (x - knots.back().first);
  auto hi = std::upper_bound(knots.begin(), knots.end(), x,
                             [](double v, const auto& k) { return v < k.first; });
  auto lo = std::prev(hi);
  const double w = (x - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

std::string variant_name(const PayoffSpec& p) {
  return std::visit(overloaded{[](const ProductCall&) { return std::string("ProductCall"); },
                               [](const FourStrikeCollar&) { return std::string("FourStrikeCollar"); },
                               [](const DigitalProduct&) { return std::string("DigitalProduct"); },
                               [](const Separable&) { return std::string("Separable"); }},
                    p);
}

ValidationReport validate_payoff(const PayoffSpec& p) {
  ValidationReport r;
  std::visit(overloaded{
                 [&](const ProductCall& c) {
                   check_strike("kE", c.strike_e, r);
                   check_strike("kI", c.strike_i, r);
                 },
                 [&](const FourStrikeCollar& c) {
                   check_strike("kE_high", c.strike_e_high, r);
                   check_strike("kI_high", c.strike_i_high, r);
                   check_strike("kE_low", c.strike_e_low, r);
                   check_strike("kI_low", c.strike_i_low, r);
                   if (!(c.strike_e_low <= c.strike_e_high) || !(c.strike_i_low <= c.strike_i_high))
                     r.violations.push_back({"collar ordering", "low strikes must not exceed high strikes"});
                   if (!(c.alpha > 0.0))
                     r.violations.push_back({"volume factor", "alpha must be positive"});
                 },
                 [&](const DigitalProduct& c) {
                   check_strike("kE", c.strike_e, r);
                   check_strike("kI", c.strike_i, r);
                 },
                 [&](const Separable& s) {
                   check_leg("g", s.g, r);
                   check_leg("h", s.h, r);
                 }},
             p);
  return r;
}

double evaluate(const PayoffSpec& p, double energy, double index) {
  return std::visit(
      overloaded{
          [&](const ProductCall& c) { return call(energy, c.strike_e) * call(index, c.strike_i); },
          [&](const FourStrikeCollar& c) {
            return c.alpha * (call(energy, c.strike_e_high) * call(index, c.strike_i_high) +
                              put(energy, c.strike_e_low) * put(index, c.strike_i_low));
          },
          [&](const DigitalProduct& c) {
            return (energy > c.strike_e && index > c.strike_i) ? 1.0 : 0.0;
          },
          [&](const Separable& s) { return s.g(energy) * s.h(index); }},
      p);
}

namespace {

std::vector<double> knot_positions(const PiecewiseLinear& f) {
  std::vector<double> out;
  for (const auto& k : f.knots) out.push_back(k.first);
  return out;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<double> energy_kinks(const PayoffSpec& p) {
  return sorted_unique(std::visit(
      overloaded{[](const ProductCall& c) { return std::vector<double>{c.strike_e}; },
                 [](const FourStrikeCollar& c) {
                   return std::vector<double>{c.strike_e_low, c.strike_e_high};
                 },
                 [](const DigitalProduct& c) { return std::vector<double>{c.strike_e}; },
                 [](const Separable& s) { return knot_positions(s.g); }},
      p));
}

std::vector<double> index_kinks(const PayoffSpec& p) {
  return sorted_unique(std::visit(
      overloaded{[](const ProductCall& c) { return std::vector<double>{c.strike_i}; },
                 [](const FourStrikeCollar& c) {
                   return std::vector<double>{c.strike_i_low, c.strike_i_high};
                 },
                 [](const DigitalProduct& c) { return std::vector<double>{c.strike_i}; },
                 [](const Separable& s) { return knot_positions(s.h); }},
      p));
}

std::vector<double> kink_lines(const PayoffSpec& p, const MarketModel& m, double z1) {
  return kink_lines(p, m, LognormalCoordinates(m), z1);
}

std::vector<double> kink_lines(const PayoffSpec& p, const MarketModel& m,
                               const LognormalCoordinates& coords, double z1) {
  const double energy = coords.energy(z1);
  std::vector<double> out;
  for (double level : index_kinks(p)) {
    // Temperature futures level at which the leg argument equals `level`.
    double target = level;
    if (m.correlation_mode == CorrelationMode::PayoffMixing) {
      const double c = m.rho_complement();
      const double remaining = level - m.rho * energy;
      if (!(remaining > 0.0) || !(c > 0.0)) continue;
      target = remaining / c;
    }
    if (!(target > 0.0)) continue;
    const double z2 = coords.temperature_coordinate(z1, target);
    if (std::isfinite(z2)) out.push_back(z2);
  }
  return sorted_unique(std::move(out));
}

}  // namespace quanto
