#include "quanto/simulate.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace quanto {

Scheme parse_scheme(const std::string& text) {
  if (text == "exact") return Scheme::exact();
  const std::string prefix = "euler:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string digits = text.substr(prefix.size());
    std::size_t used = 0;
    long long steps = 0;
    try {
      steps = std::stoll(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != digits.size())
      throw std::invalid_argument("scheme '" + text + "': STEPS must be an integer");
    if (steps < 1) throw std::invalid_argument("scheme '" + text + "': STEPS must be >= 1");
    return Scheme::log_euler(static_cast<std::size_t>(steps));
  }
  throw std::invalid_argument("unknown scheme '" + text + "' (expected exact or euler:STEPS)");
}

std::string to_string(const Scheme& scheme) {
  if (scheme.kind == SchemeKind::ExactTerminal) return "exact";
  return "euler:" + std::to_string(scheme.steps);
}

void validate_sim_config(const SimConfig& cfg) {
  if (cfg.n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  if (cfg.scheme.kind == SchemeKind::LogEuler && cfg.scheme.steps < 1)
    throw std::invalid_argument("LogEuler scheme requires steps >= 1");
  if (cfg.antithetic && cfg.n_samples % 2 != 0)
    throw std::invalid_argument("antithetic sampling requires an even n_samples");
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 outer(seed);
  SplitMix64 inner(outer() ^ (index * 0xd1b54a32d192ed03ULL));
  return inner();
}

SampleDraw antithetic_pair(const SampleDraw& d, const MarketModel& m) {
  SampleDraw r;
  r.log_e = -d.log_e;
  r.log_i = -d.log_i;
  r.log_i_common = -d.log_i_common;
  r.score_e = -d.score_e;
  r.score_i = -d.score_i;
  r.score_e_tilde = -d.score_e_tilde;
  r.bm_e = -d.bm_e;
  r.bm_i_tilde = -d.bm_i_tilde;
  r.terminal_e = d.terminal_e * std::exp(-2.0 * d.log_e);
  const double shift_i = m.correlation_mode == CorrelationMode::SdeMixing
                             ? m.rho * d.log_i_common + m.rho_complement() * d.log_i
                             : d.log_i;
  r.terminal_i = d.terminal_i * std::exp(-2.0 * shift_i);
  return r;
}

namespace {

double inverse_or_nan(double sigma) {
  return sigma > 0.0 ? 1.0 / sigma : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

Sampler::Sampler(const MarketModel& m, const TuningFunction& a, const SimConfig& cfg)
    : model_(m), cfg_(cfg) {
  validate_sim_config(cfg);
  for (const auto* f : {&m.energy_vol.sigma, &m.temperature_vol.sigma, &a.a}) {
    if (auto defect = f->structural_defect(); !defect.empty())
      throw std::invalid_argument("sampler: malformed step function: " + defect);
  }

  if (cfg.scheme.kind == SchemeKind::ExactTerminal) {
    for (const auto& c : merged_grid(m, a)) {
      steps_.push_back({c.dt, std::sqrt(c.dt), c.sigma_e, c.sigma_i, c.a});
    }
  } else {
    const double horizon = m.maturity();
    const double dt = horizon / static_cast<double>(cfg.scheme.steps);
    for (std::size_t k = 0; k < cfg.scheme.steps; ++k) {
      // Left-point coefficients: the Ito sums stay non-anticipating.
      const double t = horizon * static_cast<double>(k) / static_cast<double>(cfg.scheme.steps);
      steps_.push_back({dt, std::sqrt(dt), m.energy_vol.sigma.value_at(t),
                        m.temperature_vol.sigma.value_at(t), a.a.value_at(t)});
    }
  }

  f0_e_ = m.energy.f0;
  f0_i_ = m.temperature.f0;
  drift_e_ = 0.0;
  drift_i_ = 0.0;
  for (const auto& s : steps_) {
    drift_e_ -= 0.5 * s.sigma_e * s.sigma_e * s.dt;
    drift_i_ -= 0.5 * s.sigma_i * s.sigma_i * s.dt;
  }
}

SampleDraw Sampler::base_draw(std::uint64_t stream) const {
  SplitMix64 rng(stream);
  std::normal_distribution<double> normal;
  SampleDraw d;
  for (const auto& s : steps_) {
    const double dw_e = s.sqrt_dt * normal(rng);
    const double dw_i = s.sqrt_dt * normal(rng);
    const double inv_e = inverse_or_nan(s.sigma_e);
    const double inv_i = inverse_or_nan(s.sigma_i);
    d.log_e += s.sigma_e * dw_e;
    d.log_i += s.sigma_i * dw_i;
    d.log_i_common += s.sigma_i * dw_e;
    d.score_e += s.a * inv_e * dw_e;
    d.score_i += s.a * inv_i * dw_i;
    d.score_e_tilde += s.a * inv_e * dw_i;
    d.bm_e += dw_e;
    d.bm_i_tilde += dw_i;
  }
  d.terminal_e = f0_e_ * std::exp(drift_e_ + d.log_e);
  const double shift_i = model_.correlation_mode == CorrelationMode::SdeMixing
                             ? model_.rho * d.log_i_common + model_.rho_complement() * d.log_i
                             : d.log_i;
  d.terminal_i = f0_i_ * std::exp(drift_i_ + shift_i);
  return d;
}

SampleDraw Sampler::operator()(std::uint64_t index) const {
  if (!cfg_.antithetic) return base_draw(stream_seed(cfg_.seed, index));
  const SampleDraw d = base_draw(stream_seed(cfg_.seed, index / 2));
  return index % 2 == 0 ? d : antithetic_pair(d, model_);
}

namespace {

std::vector<SampleDraw> collect(const Sampler& sampler) {
  std::vector<SampleDraw> out;
  out.reserve(sampler.config().n_samples);
  for (std::uint64_t i = 0; i < sampler.config().n_samples; ++i) out.push_back(sampler(i));
  return out;
}

}  // namespace

std::vector<SampleDraw> sample_terminal(const MarketModel& m, const TuningFunction& a,
                                        const SimConfig& cfg) {
  if (cfg.scheme.kind != SchemeKind::ExactTerminal)
    throw std::invalid_argument("sample_terminal requires the exact scheme");
  return collect(Sampler(m, a, cfg));
}

std::vector<SampleDraw> sample_paths_log_euler(const MarketModel& m, const TuningFunction& a,
                                               const SimConfig& cfg) {
  if (cfg.scheme.kind != SchemeKind::LogEuler)
    throw std::invalid_argument("sample_paths_log_euler requires scheme euler:STEPS");
  return collect(Sampler(m, a, cfg));
}

}  // namespace quanto
