#pragma once

#include <cmath>

#include "quanto/estimators.hpp"

namespace fixtures {

inline quanto::MarketModel lognormal_pair(double f0_e, double sigma_e, double f0_i, double sigma_i,
                                          double rho, double t = 1.0,
                                          quanto::CorrelationMode mode =
                                              quanto::CorrelationMode::PayoffMixing) {
  quanto::MarketModel m;
  m.energy = {f0_e, 0.5 * t, t};
  m.temperature = {f0_i, 0.5 * t, t};
  m.energy_vol = quanto::VolatilityCurve::constant(sigma_e, t);
  m.temperature_vol = quanto::VolatilityCurve::constant(sigma_i, t);
  m.rho = rho;
  m.correlation_mode = mode;
  return m;
}

// both legs at 100, 20% vol, one year
inline quanto::MarketModel atm(double rho = 0.0,
                               quanto::CorrelationMode mode = quanto::CorrelationMode::PayoffMixing) {
  return lognormal_pair(100.0, 0.2, 100.0, 0.2, rho, 1.0, mode);
}

inline quanto::SimConfig sim(std::size_t n, std::uint64_t seed = 42, bool antithetic = false) {
  quanto::SimConfig cfg;
  cfg.n_samples = n;
  cfg.seed = seed;
  cfg.antithetic = antithetic;
  return cfg;
}

inline double combined_z(const quanto::GreekEstimate& a, double b, double b_se = 0.0) {
  return (a.value - b) / std::sqrt(a.std_error * a.std_error + b_se * b_se);
}

}  // namespace fixtures
