#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "quanto/model.hpp"

namespace quanto {

/// (F^E - K^E)^+ (x - K^I)^+
struct ProductCall {
  double strike_e = 0.0;
  double strike_i = 0.0;
};

/// alpha * [call-call at the high strikes + put-put at the low strikes]
struct FourStrikeCollar {
  double strike_e_high = 0.0;
  double strike_i_high = 0.0;
  double strike_e_low = 0.0;
  double strike_i_low = 0.0;
  double alpha = 1.0;
};

/// 1{F^E > K^E} 1{x > K^I}; zero on the boundary.
struct DigitalProduct {
  double strike_e = 0.0;
  double strike_i = 0.0;
};

/// Continuous piecewise-linear function through sorted knots, extended
/// linearly with the given end slopes.
struct PiecewiseLinear {
  std::vector<std::pair<double, double>> knots;
  double left_slope = 0.0;
  double right_slope = 0.0;

  double operator()(double x) const;
};

/// g(F^E) h(x) for user-supplied piecewise-linear legs.
struct Separable {
  PiecewiseLinear g;
  PiecewiseLinear h;
};

using PayoffSpec = std::variant<ProductCall, FourStrikeCollar, DigitalProduct, Separable>;

std::string variant_name(const PayoffSpec& p);

/// Invariant violations of the payoff parameters (strike signs, collar ordering,
/// alpha, nonnegative legs).
ValidationReport validate_payoff(const PayoffSpec& p);

/// Payoff at maturity. `index` is the temperature-leg argument, already mixed
/// according to the correlation mode (see MarketModel::effective_index).
double evaluate(const PayoffSpec& p, double energy, double index);

/// Energy levels where the energy leg has a kink or jump.
std::vector<double> energy_kinks(const PayoffSpec& p);

/// Temperature-leg argument levels where the second leg has a kink or jump.
std::vector<double> index_kinks(const PayoffSpec& p);

/// Sorted z2 coordinates at which the temperature-leg argument crosses one of
/// index_kinks(p), with energy fixed at F^E(z1).
std::vector<double> kink_lines(const PayoffSpec& p, const MarketModel& m, double z1);
std::vector<double> kink_lines(const PayoffSpec& p, const MarketModel& m,
                               const LognormalCoordinates& coords, double z1);

}  // namespace quanto
