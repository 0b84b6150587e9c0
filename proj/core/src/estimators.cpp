#include "quanto/estimators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "quanto/quadrature.hpp"
#include "quanto/stats.hpp"

namespace quanto {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Mean of f over the draws of `sampler`; antithetic pairs are averaged first
// so the standard error counts pairs as the independent units.
template <class F>
RunningStats simulate_mean(const Sampler& sampler, std::size_t n, F&& f) {
  const auto& cfg = sampler.config();
  const bool pairs = cfg.antithetic;
  const std::size_t units = pairs ? n / 2 : n;
  return reduce_blocks<RunningStats>(units, cfg.threads, [&](std::size_t begin, std::size_t end) {
    RunningStats st;
    for (std::size_t u = begin; u < end; ++u) {
      if (pairs) {
        st.add(0.5 * (f(sampler(2 * u)) + f(sampler(2 * u + 1))));
      } else {
        st.add(f(sampler(u)));
      }
    }
    return st;
  });
}

GreekEstimate finish(const RunningStats& st, std::size_t n, std::string label,
                     Clock::time_point start) {
  return {st.mean, st.std_error(), n, std::move(label), seconds_since(start)};
}

void require_valid(const MarketModel& m, const PayoffSpec& p) {
  if (auto r = validate_model(m); !r.ok())
    throw std::invalid_argument("invalid model: " + r.to_string());
  if (auto r = validate_payoff(p); !r.ok())
    throw std::invalid_argument("invalid payoff: " + r.to_string());
}

}  // namespace

void validate_fd_config(const FdConfig& fd) {
  if (!(fd.bump > 0.0 && fd.bump < 0.1))
    throw std::invalid_argument("FD bump must lie in (0, 0.1)");
}

void validate_quad_config(const QuadConfig& q) {
  if (q.nodes_per_panel < 2) throw std::invalid_argument("quadrature needs >= 2 nodes per panel");
  if (!(q.domain_halfwidth > 0.0)) throw std::invalid_argument("domain_halfwidth must be positive");
  if (!(q.tol > 0.0)) throw std::invalid_argument("quadrature tol must be positive");
}

GreekEstimate mc_price(const MarketModel& m, const PayoffSpec& p, const SimConfig& cfg) {
  const auto start = Clock::now();
  require_valid(m, p);
  const Sampler sampler(m, TuningFunction::uniform(m.maturity()), cfg);
  const double disc = m.discount();
  const auto st = simulate_mean(sampler, cfg.n_samples, [&](const SampleDraw& d) {
    return disc * evaluate(p, d.terminal_e, m.effective_index(d.terminal_e, d.terminal_i));
  });
  return finish(st, cfg.n_samples, "price", start);
}

GreekEstimate mc_greek(const MarketModel& m, const PayoffSpec& p, const TuningFunction& a,
                       WeightVariant variant, const SimConfig& cfg,
                       bool allow_independent_override) {
  const auto start = Clock::now();
  require_valid(m, p);
  if (auto r = validate_tuning(a, m.maturity()); !r.ok())
    throw std::invalid_argument("invalid tuning function: " + r.to_string());
  check_variant_applicable(variant, m, allow_independent_override);

  const Sampler sampler(m, a, cfg);
  const WeightContext ctx = make_weight_context(m, a);
  const double disc = m.discount();
  const auto st = simulate_mean(sampler, cfg.n_samples, [&](const SampleDraw& d) {
    const double payoff =
        disc * evaluate(p, d.terminal_e, m.effective_index(d.terminal_e, d.terminal_i));
    const WeightFactor w = weight_for(variant, d, ctx);
    return payoff * w.weight * w.multiplier;
  });
  return finish(st, cfg.n_samples, to_string(variant), start);
}

GreekEstimate fd_greek(const MarketModel& m, const PayoffSpec& p, Greek which, const FdConfig& fd,
                       const SimConfig& cfg) {
  const auto start = Clock::now();
  require_valid(m, p);
  validate_fd_config(fd);
  const Sampler sampler(m, TuningFunction::uniform(m.maturity()), cfg);
  const double disc = m.discount();
  const double h = fd.bump;
  const double up = 1.0 + h;
  const double dn = 1.0 - h;
  auto value = [&](double fe, double fi) {
    return evaluate(p, fe, m.effective_index(fe, fi));
  };

  RunningStats st;
  switch (which) {
    case Greek::DeltaE: {
      const double scale = disc / (2.0 * h * m.energy.f0);
      st = simulate_mean(sampler, cfg.n_samples, [&](const SampleDraw& d) {
        return scale * (value(d.terminal_e * up, d.terminal_i) -
                        value(d.terminal_e * dn, d.terminal_i));
      });
      break;
    }
    case Greek::DeltaI: {
      const double scale = disc / (2.0 * h * m.temperature.f0);
      st = simulate_mean(sampler, cfg.n_samples, [&](const SampleDraw& d) {
        return scale * (value(d.terminal_e, d.terminal_i * up) -
                        value(d.terminal_e, d.terminal_i * dn));
      });
      break;
    }
    case Greek::CrossGamma: {
      const double scale = disc / (4.0 * h * h * m.energy.f0 * m.temperature.f0);
      st = simulate_mean(sampler, cfg.n_samples, [&](const SampleDraw& d) {
        const double eu = d.terminal_e * up, ed = d.terminal_e * dn;
        const double iu = d.terminal_i * up, id = d.terminal_i * dn;
        return scale * (value(eu, iu) - value(eu, id) - value(ed, iu) + value(ed, id));
      });
      break;
    }
  }
  return finish(st, cfg.n_samples, "FD:" + to_string(which), start);
}

double quad_price(const MarketModel& m, const PayoffSpec& p, const QuadConfig& q) {
  require_valid(m, p);
  validate_quad_config(q);

  const LognormalCoordinates coords(m);
  const GaussLegendre rule(q.nodes_per_panel);
  const PanelOptions opts{2.0, q.tol, 16};
  const double w = q.domain_halfwidth;
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  auto density = [&](double z) { return inv_sqrt_2pi * std::exp(-0.5 * z * z); };

  std::vector<double> outer_breaks;
  for (double k : energy_kinks(p)) outer_breaks.push_back(coords.energy_coordinate(k));
  if (m.correlation_mode == CorrelationMode::PayoffMixing && m.rho > 0.0) {
    // The set of inner kinks changes where rho * F^E crosses a temperature-leg kink.
    for (double k : index_kinks(p)) {
      if (k > 0.0) outer_breaks.push_back(coords.energy_coordinate(k / m.rho));
    }
  }

  auto outer = [&](double z1) {
    const double energy = coords.energy(z1);
    const auto inner_breaks = kink_lines(p, m, coords, z1);
    auto inner = [&](double z2) {
      const double temperature = coords.temperature(z1, z2);
      return evaluate(p, energy, m.effective_index(energy, temperature)) * density(z2);
    };
    return density(z1) * integrate_panels(inner, -w, w, inner_breaks, rule, opts);
  };
  return m.discount() * integrate_panels(outer, -w, w, outer_breaks, rule, opts);
}

double quad_greek(const MarketModel& m, const PayoffSpec& p, Greek which, const QuadConfig& q) {
  const double h = kQuadratureGreekStep;
  const double fe = m.energy.f0;
  const double fi = m.temperature.f0;
  auto price = [&](double e_scale, double i_scale) {
    return quad_price(m.with_initial(fe * e_scale, fi * i_scale), p, q);
  };
  switch (which) {
    case Greek::DeltaE: return (price(1.0 + h, 1.0) - price(1.0 - h, 1.0)) / (2.0 * h * fe);
    case Greek::DeltaI: return (price(1.0, 1.0 + h) - price(1.0, 1.0 - h)) / (2.0 * h * fi);
    case Greek::CrossGamma:
      return (price(1.0 + h, 1.0 + h) - price(1.0 + h, 1.0 - h) - price(1.0 - h, 1.0 + h) +
              price(1.0 - h, 1.0 - h)) /
             (4.0 * h * h * fe * fi);
  }
  return 0.0;
}

namespace {

struct ResidualAccumulator {
  RunningStats corr, ind, diff;
  void merge(const ResidualAccumulator& o) {
    corr.merge(o.corr);
    ind.merge(o.ind);
    diff.merge(o.diff);
  }
};

}  // namespace

std::vector<ResidualRiskRow> residual_risk(const MarketModel& m, const PayoffSpec& p,
                                           const TuningFunction& a, WeightVariant variant,
                                           std::span<const double> rho_grid,
                                           const SimConfig& cfg) {
  for (double r : rho_grid) {
    if (!(std::abs(r) < 1.0)) throw std::invalid_argument("rho grid values must lie in (-1, 1)");
  }
  const WeightVariant benchmark = independent_counterpart(variant);
  const MarketModel m_ind = m.with_rho(0.0);
  require_valid(m_ind, p);
  const Sampler s_ind(m_ind, a, cfg);
  const WeightContext ctx_ind = make_weight_context(m_ind, a);
  const double disc = m.discount();

  auto estimate = [&](const MarketModel& model, const WeightContext& ctx, WeightVariant v,
                      const SampleDraw& d) {
    const double payoff =
        disc * evaluate(p, d.terminal_e, model.effective_index(d.terminal_e, d.terminal_i));
    const WeightFactor w = weight_for(v, d, ctx);
    return payoff * w.weight * w.multiplier;
  };

  std::vector<ResidualRiskRow> rows;
  for (double r : rho_grid) {
    const MarketModel m_corr = m.with_rho(r);
    require_valid(m_corr, p);
    const Sampler s_corr(m_corr, a, cfg);
    const WeightContext ctx_corr = make_weight_context(m_corr, a);
    const bool pairs = cfg.antithetic;
    const std::size_t units = pairs ? cfg.n_samples / 2 : cfg.n_samples;

    auto unit_values = [&](std::uint64_t i) {
      const double c = estimate(m_corr, ctx_corr, variant, s_corr(i));
      const double b = estimate(m_ind, ctx_ind, benchmark, s_ind(i));
      return std::pair{c, b};
    };
    const auto acc = reduce_blocks<ResidualAccumulator>(
        units, cfg.threads, [&](std::size_t begin, std::size_t end) {
          ResidualAccumulator out;
          for (std::size_t u = begin; u < end; ++u) {
            double c, b;
            if (pairs) {
              const auto [c0, b0] = unit_values(2 * u);
              const auto [c1, b1] = unit_values(2 * u + 1);
              c = 0.5 * (c0 + c1);
              b = 0.5 * (b0 + b1);
            } else {
              std::tie(c, b) = unit_values(u);
            }
            out.corr.add(c);
            out.ind.add(b);
            out.diff.add(c - b);
          }
          return out;
        });
    rows.push_back({r, acc.corr.mean, acc.ind.mean, std::abs(acc.diff.mean),
                    acc.diff.std_error()});
  }
  return rows;
}

std::vector<ConvergenceRow> convergence_table(const MarketModel& m, const PayoffSpec& p,
                                              const TuningFunction& a,
                                              std::optional<WeightVariant> variant,
                                              std::span<const std::size_t> n_grid,
                                              const SimConfig& cfg) {
  if (n_grid.empty()) throw std::invalid_argument("convergence grid is empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1) throw std::invalid_argument("convergence grid entries must be >= 1");
    if (i > 0 && !(n_grid[i] > n_grid[i - 1]))
      throw std::invalid_argument("convergence grid must be strictly increasing");
  }
  std::vector<ConvergenceRow> rows;
  for (std::size_t n : n_grid) {
    SimConfig c = cfg;
    c.n_samples = n;
    const GreekEstimate e = variant ? mc_greek(m, p, a, *variant, c, true) : mc_price(m, p, c);
    rows.push_back({n, e.value, e.std_error});
  }
  return rows;
}

}  // namespace quanto
