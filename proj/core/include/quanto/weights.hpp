#pragma once

#include <array>
#include <string>

#include "quanto/model.hpp"
#include "quanto/simulate.hpp"

namespace quanto {

/// Malliavin weight estimators. The Prop* and Matrix62 variants reproduce the
/// published weights as written; the Conditional variants are the weights
/// obtained by applying the adapted-factor (Skorohod) correction in the
/// active correlation mode.
enum class WeightVariant {
  IndepDeltaE,
  IndepDeltaI,
  IndepCrossGamma,
  CorrDeltaE_Prop51,
  CorrDeltaE_Matrix62,
  CorrDeltaE_Conditional,
  CorrDeltaI_Prop52,
  CorrCrossGamma_Prop53,
  CorrCrossGamma_Matrix62,
  CorrCrossGamma_Conditional,
};

inline constexpr std::array<WeightVariant, 10> kAllWeightVariants = {
    WeightVariant::IndepDeltaE,           WeightVariant::IndepDeltaI,
    WeightVariant::IndepCrossGamma,       WeightVariant::CorrDeltaE_Prop51,
    WeightVariant::CorrDeltaE_Matrix62,   WeightVariant::CorrDeltaE_Conditional,
    WeightVariant::CorrDeltaI_Prop52,     WeightVariant::CorrCrossGamma_Prop53,
    WeightVariant::CorrCrossGamma_Matrix62, WeightVariant::CorrCrossGamma_Conditional,
};

enum class Greek { DeltaE, DeltaI, CrossGamma };

std::string to_string(WeightVariant v);
/// Throws std::invalid_argument for an unknown name.
WeightVariant parse_weight_variant(const std::string& name);
std::string to_string(Greek g);

Greek greek_of(WeightVariant v);
bool is_correlated(WeightVariant v);
WeightVariant independent_counterpart(WeightVariant v);

/// Per-draw estimator factor: the Greek is E[discounted payoff * weight * multiplier].
struct WeightFactor {
  double weight = 0.0;
  double multiplier = 1.0;
};

/// Deterministic quantities shared by every draw of one (model, tuning) pair.
struct WeightContext {
  double f0_e = 0.0;
  double f0_i = 0.0;
  double rho = 0.0;
  double rho_c = 1.0;  // sqrt(1 - rho^2)
  CorrelationMode mode = CorrelationMode::PayoffMixing;
  /// rho \int a^2/(sigma_E sigma_I) dt / ((1 - rho^2) F^E(0) F^I(0))
  double dt_correction = 0.0;
};

WeightContext make_weight_context(const MarketModel& m, const TuningFunction& a);

/// Throws std::invalid_argument when an independent variant is used at rho != 0
/// without the override, or a correlated variant at |rho| >= 1.
void check_variant_applicable(WeightVariant v, const MarketModel& m, bool allow_independent_override);

double weight_indep_delta_e(const SampleDraw& d, const WeightContext& ctx);
double weight_indep_delta_i(const SampleDraw& d, const WeightContext& ctx);
double weight_indep_cross_gamma(const SampleDraw& d, const WeightContext& ctx);

/// Accepts the three CorrDeltaE_* tags; throws on any other tag.
WeightFactor weight_corr_delta_e(const SampleDraw& d, const WeightContext& ctx, WeightVariant v);
WeightFactor weight_corr_delta_i(const SampleDraw& d, const WeightContext& ctx);
/// Accepts the three CorrCrossGamma_* tags; throws on any other tag.
WeightFactor weight_corr_cross_gamma(const SampleDraw& d, const WeightContext& ctx,
                                     WeightVariant v);

WeightFactor weight_for(WeightVariant v, const SampleDraw& d, const WeightContext& ctx);

/// Non-random additive part of the weight (the dt correction), zero for most variants.
double deterministic_part(WeightVariant v, const WeightContext& ctx);

}  // namespace quanto
