#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quanto/model.hpp"
#include "quanto/payoffs.hpp"
#include "quanto/simulate.hpp"
#include "quanto/weights.hpp"

namespace quanto {

struct GreekEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
  /// Weight variant name, "price", "FD:<greek>" or "Quadrature:<greek>".
  std::string variant;
  double seconds = 0.0;
};

struct FdConfig {
  /// Relative bump of the initial futures level; central differences.
  double bump = 1e-4;
};

struct QuadConfig {
  std::size_t nodes_per_panel = 64;
  /// Integration domain [-w, w] in standard deviations, per coordinate.
  double domain_halfwidth = 10.0;
  /// Relative tolerance of the panel refinement test.
  double tol = 1e-8;
};

/// Relative step of the central differences taken on quad_price.
inline constexpr double kQuadratureGreekStep = 1e-5;

void validate_fd_config(const FdConfig& fd);
void validate_quad_config(const QuadConfig& q);

/// Discounted mean payoff. The temperature-leg argument follows the model's
/// correlation mode.
GreekEstimate mc_price(const MarketModel& m, const PayoffSpec& p, const SimConfig& cfg);

/// Discounted mean of payoff * weight * multiplier.
GreekEstimate mc_greek(const MarketModel& m, const PayoffSpec& p, const TuningFunction& a,
                       WeightVariant variant, const SimConfig& cfg,
                       bool allow_independent_override = false);

/// Bump-and-revalue with common random numbers: every bumped scenario reuses
/// the same draws, and the standard error comes from per-draw differences.
GreekEstimate fd_greek(const MarketModel& m, const PayoffSpec& p, Greek which, const FdConfig& fd,
                       const SimConfig& cfg);

/// Deterministic price: Gauss-Legendre panels over the two standard normal
/// coordinates, split at every payoff kink. Shares no code with the sampler.
double quad_price(const MarketModel& m, const PayoffSpec& p, const QuadConfig& q = {});

/// Central differences of quad_price in the initial futures levels.
double quad_greek(const MarketModel& m, const PayoffSpec& p, Greek which, const QuadConfig& q = {});

struct ResidualRiskRow {
  double rho = 0.0;
  double delta_corr = 0.0;
  double delta_ind = 0.0;
  double abs_diff = 0.0;
  /// Standard error of the per-draw difference.
  double std_error = 0.0;
};

/// |Greek(rho) - Greek(0)| for each rho in the grid, using `variant` at rho
/// and its independent counterpart at rho = 0 on the same draws.
std::vector<ResidualRiskRow> residual_risk(const MarketModel& m, const PayoffSpec& p,
                                           const TuningFunction& a, WeightVariant variant,
                                           std::span<const double> rho_grid,
                                           const SimConfig& cfg);

struct ConvergenceRow {
  std::size_t n = 0;
  double value = 0.0;
  double std_error = 0.0;
};

/// Estimates on the first n draws of one seed for each n in the strictly
/// increasing grid. No variant means the price.
std::vector<ConvergenceRow> convergence_table(const MarketModel& m, const PayoffSpec& p,
                                              const TuningFunction& a,
                                              std::optional<WeightVariant> variant,
                                              std::span<const std::size_t> n_grid,
                                              const SimConfig& cfg);

}  // namespace quanto
