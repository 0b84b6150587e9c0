#include "quanto/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace quanto {

std::string to_string(WeightVariant v) {
  switch (v) {
    case WeightVariant::IndepDeltaE: return "IndepDeltaE";
    case WeightVariant::IndepDeltaI: return "IndepDeltaI";
    case WeightVariant::IndepCrossGamma: return "IndepCrossGamma";
    case WeightVariant::CorrDeltaE_Prop51: return "CorrDeltaE_Prop51";
    case WeightVariant::CorrDeltaE_Matrix62: return "CorrDeltaE_Matrix62";
    case WeightVariant::CorrDeltaE_Conditional: return "CorrDeltaE_Conditional";
    case WeightVariant::CorrDeltaI_Prop52: return "CorrDeltaI_Prop52";
    case WeightVariant::CorrCrossGamma_Prop53: return "CorrCrossGamma_Prop53";
    case WeightVariant::CorrCrossGamma_Matrix62: return "CorrCrossGamma_Matrix62";
    case WeightVariant::CorrCrossGamma_Conditional: return "CorrCrossGamma_Conditional";
  }
  return "?";
}

WeightVariant parse_weight_variant(const std::string& name) {
  for (auto v : kAllWeightVariants) {
    if (to_string(v) == name) return v;
  }
  throw std::invalid_argument("unknown weight variant '" + name + "'");
}

std::string to_string(Greek g) {
  switch (g) {
    case Greek::DeltaE: return "dE";
    case Greek::DeltaI: return "dI";
    case Greek::CrossGamma: return "dEdI";
  }
  return "?";
}

Greek greek_of(WeightVariant v) {
  switch (v) {
    case WeightVariant::IndepDeltaE:
    case WeightVariant::CorrDeltaE_Prop51:
    case WeightVariant::CorrDeltaE_Matrix62:
    case WeightVariant::CorrDeltaE_Conditional: return Greek::DeltaE;
    case WeightVariant::IndepDeltaI:
    case WeightVariant::CorrDeltaI_Prop52: return Greek::DeltaI;
    default: return Greek::CrossGamma;
  }
}

bool is_correlated(WeightVariant v) {
  return v != WeightVariant::IndepDeltaE && v != WeightVariant::IndepDeltaI &&
         v != WeightVariant::IndepCrossGamma;
}

WeightVariant independent_counterpart(WeightVariant v) {
  switch (greek_of(v)) {
    case Greek::DeltaE: return WeightVariant::IndepDeltaE;
    case Greek::DeltaI: return WeightVariant::IndepDeltaI;
    case Greek::CrossGamma: break;
  }
  return WeightVariant::IndepCrossGamma;
}

WeightContext make_weight_context(const MarketModel& m, const TuningFunction& a) {
  WeightContext ctx;
  ctx.f0_e = m.energy.f0;
  ctx.f0_i = m.temperature.f0;
  ctx.rho = m.rho;
  ctx.rho_c = m.rho_complement();
  ctx.mode = m.correlation_mode;
  const double cross = weight_cross_moment(m.energy_vol, m.temperature_vol, a);
  ctx.dt_correction = m.rho * cross / ((1.0 - m.rho * m.rho) * ctx.f0_e * ctx.f0_i);
  return ctx;
}

void check_variant_applicable(WeightVariant v, const MarketModel& m,
                              bool allow_independent_override) {
  if (!(std::abs(m.rho) < 1.0))
    throw std::invalid_argument("weight variants require |rho| < 1");
  if (!is_correlated(v) && m.rho != 0.0 && !allow_independent_override)
    throw std::invalid_argument(to_string(v) + " assumes rho = 0; rho is " + std::to_string(m.rho));
}

double weight_indep_delta_e(const SampleDraw& d, const WeightContext& ctx) {
  return d.score_e / ctx.f0_e;
}

double weight_indep_delta_i(const SampleDraw& d, const WeightContext& ctx) {
  return d.score_i / ctx.f0_i;
}

double weight_indep_cross_gamma(const SampleDraw& d, const WeightContext& ctx) {
  return (d.score_e / ctx.f0_e) * (d.score_i / ctx.f0_i);
}

namespace {

// Energy weight from the inverted 2x2 diffusion matrix: removes the W^E
// exposure of the temperature futures through the independent driver.
double matrix_delta_e(const SampleDraw& d, const WeightContext& ctx) {
  return (d.score_e - (ctx.rho / ctx.rho_c) * d.score_e_tilde) / ctx.f0_e;
}

double matrix_delta_i(const SampleDraw& d, const WeightContext& ctx) {
  return d.score_i / (ctx.f0_i * ctx.rho_c);
}

}  // namespace

WeightFactor weight_corr_delta_e(const SampleDraw& d, const WeightContext& ctx, WeightVariant v) {
  switch (v) {
    case WeightVariant::CorrDeltaE_Prop51: return {d.score_e / ctx.f0_e, 1.0 + ctx.rho};
    case WeightVariant::CorrDeltaE_Matrix62: return {matrix_delta_e(d, ctx), 1.0};
    case WeightVariant::CorrDeltaE_Conditional:
      if (ctx.mode == CorrelationMode::SdeMixing) return {matrix_delta_e(d, ctx), 1.0};
      return {d.score_e / ctx.f0_e, 1.0};
    default:
      throw std::invalid_argument("weight_corr_delta_e: variant mismatch " + to_string(v));
  }
}

WeightFactor weight_corr_delta_i(const SampleDraw& d, const WeightContext& ctx) {
  return {matrix_delta_i(d, ctx), ctx.rho_c};
}

WeightFactor weight_corr_cross_gamma(const SampleDraw& d, const WeightContext& ctx,
                                     WeightVariant v) {
  switch (v) {
    case WeightVariant::CorrCrossGamma_Prop53:
      return {(d.score_e / ctx.f0_e) * (d.score_i / ctx.f0_i), ctx.rho_c + ctx.rho * ctx.rho_c};
    case WeightVariant::CorrCrossGamma_Matrix62:
      return {matrix_delta_e(d, ctx) * matrix_delta_i(d, ctx) - ctx.dt_correction, 1.0};
    case WeightVariant::CorrCrossGamma_Conditional:
      if (ctx.mode == CorrelationMode::SdeMixing) {
        // delta(pi_E u_I) = pi_E pi_I - <D pi_E, u_I>, and <D pi_E, u_I> = -dt_correction.
        return {matrix_delta_e(d, ctx) * matrix_delta_i(d, ctx) + ctx.dt_correction, 1.0};
      }
      return {(d.score_e / ctx.f0_e) * (d.score_i / ctx.f0_i), 1.0};
    default:
      throw std::invalid_argument("weight_corr_cross_gamma: variant mismatch " + to_string(v));
  }
}

WeightFactor weight_for(WeightVariant v, const SampleDraw& d, const WeightContext& ctx) {
  switch (v) {
    case WeightVariant::IndepDeltaE: return {weight_indep_delta_e(d, ctx), 1.0};
    case WeightVariant::IndepDeltaI: return {weight_indep_delta_i(d, ctx), 1.0};
    case WeightVariant::IndepCrossGamma: return {weight_indep_cross_gamma(d, ctx), 1.0};
    case WeightVariant::CorrDeltaI_Prop52: return weight_corr_delta_i(d, ctx);
    default: break;
  }
  if (greek_of(v) == Greek::DeltaE) return weight_corr_delta_e(d, ctx, v);
  return weight_corr_cross_gamma(d, ctx, v);
}

double deterministic_part(WeightVariant v, const WeightContext& ctx) {
  if (v == WeightVariant::CorrCrossGamma_Matrix62) return -ctx.dt_correction;
  if (v == WeightVariant::CorrCrossGamma_Conditional && ctx.mode == CorrelationMode::SdeMixing)
    return ctx.dt_correction;
  return 0.0;
}

}  // namespace quanto
