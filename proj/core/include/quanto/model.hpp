#pragma once

#include <string>
#include <vector>

namespace quanto {

/// Lower bound on volatility used when validating a model (uniform ellipticity).
inline constexpr double kDefaultEllipticityFloor = 1e-6;

/// Tolerance on the normalization of a tuning function.
inline constexpr double kTuningNormalizationTol = 1e-12;

struct Segment {
  double t_start = 0.0;
  double value = 0.0;
};

/// Right-continuous step function on [0, horizon). Segment i holds on
/// [segments[i].t_start, segments[i+1].t_start), the last one up to horizon.
struct StepFunction {
  std::vector<Segment> segments;
  double horizon = 0.0;

  static StepFunction constant(double value, double horizon);

  double value_at(double t) const;
  double integral(double s, double t) const;
  double integral_of_square(double s, double t) const;
  /// Empty when the segment list is well formed; otherwise a description of the defect.
  std::string structural_defect() const;
};

/// Deterministic volatility sigma(t) per square-root year.
struct VolatilityCurve {
  StepFunction sigma;

  static VolatilityCurve constant(double sigma, double horizon) {
    return {StepFunction::constant(sigma, horizon)};
  }
  double horizon() const { return sigma.horizon; }
};

/// Weight function a(t) on [0, tau2]; admissible when it integrates to one.
struct TuningFunction {
  StepFunction a;

  static TuningFunction uniform(double horizon) {
    return {StepFunction::constant(1.0 / horizon, horizon)};
  }
  double horizon() const { return a.horizon; }
};

struct FuturesSpec {
  double f0 = 0.0;
  double delivery_start = 0.0;  // tau1, metadata only
  double delivery_end = 0.0;    // tau2, also the option maturity
};

enum class CorrelationMode {
  /// Temperature futures driven by the independent driver only; correlation
  /// enters the payoff through h(rho*F^E + sqrt(1-rho^2)*F^I).
  PayoffMixing,
  /// Temperature futures driven by rho*dW^E + sqrt(1-rho^2)*dW~^I; payoff h(F^I).
  SdeMixing,
};

std::string to_string(CorrelationMode mode);
CorrelationMode parse_correlation_mode(const std::string& text);

struct MarketModel {
  FuturesSpec energy;
  VolatilityCurve energy_vol;
  FuturesSpec temperature;
  VolatilityCurve temperature_vol;
  double rho = 0.0;
  double rate = 0.0;
  CorrelationMode correlation_mode = CorrelationMode::PayoffMixing;

  double maturity() const { return energy.delivery_end; }
  double discount() const;
  /// sqrt(1 - rho^2)
  double rho_complement() const;
  /// Argument handed to the temperature leg h of the payoff.
  double effective_index(double energy_T, double temperature_T) const;

  MarketModel with_rho(double new_rho) const;
  MarketModel with_initial(double f0_energy, double f0_temperature) const;
};

struct Violation {
  std::string invariant;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& invariant) const;
  std::string to_string() const;
};

ValidationReport validate_model(const MarketModel& m,
                                double eta = kDefaultEllipticityFloor);
ValidationReport validate_model(const MarketModel& m, const TuningFunction& a,
                                double eta = kDefaultEllipticityFloor);
ValidationReport validate_tuning(const TuningFunction& a, double horizon);

/// Exact \int_s^t sigma(u)^2 du. Throws std::invalid_argument unless 0 <= s <= t <= horizon.
double integrated_variance(const VolatilityCurve& curve, double s, double t);

/// Covariance integrals of the Gaussian pair (\int sigma dW, \int a/sigma dW).
struct KernelMoments {
  double v_aa = 0.0;  // \int a^2 / sigma^2
  double v_as = 0.0;  // \int a, equal to one for admissible a
  double v_ss = 0.0;  // \int sigma^2
};

KernelMoments weight_kernel_moments(const VolatilityCurve& curve, const TuningFunction& a);

/// \int a^2 / (sigma_E sigma_I) dt, the deterministic cross term in correlated
/// cross-gamma weights.
double weight_cross_moment(const VolatilityCurve& energy, const VolatilityCurve& temperature,
                           const TuningFunction& a);

/// One interval of the common refinement of the volatility curves and the
/// tuning function; every coefficient is constant on it.
struct GridCell {
  double t0 = 0.0;
  double dt = 0.0;
  double sigma_e = 0.0;
  double sigma_i = 0.0;
  double a = 0.0;
};

std::vector<GridCell> merged_grid(const MarketModel& m, const TuningFunction& a);

/// Maps standard normal coordinates (z1, z2) to terminal futures prices with
/// the exact lognormal law of the model. z1 drives energy; z2 is the part of
/// the temperature driver independent of z1.
class LognormalCoordinates {
 public:
  explicit LognormalCoordinates(const MarketModel& m);

  double energy(double z1) const;
  double temperature(double z1, double z2) const;
  /// Energy quantile coordinate where F^E(z1) = level.
  double energy_coordinate(double level) const;
  /// z2 where F^I(z1, z2) = level.
  double temperature_coordinate(double z1, double level) const;

  double energy_variance() const { return var_e_; }
  double temperature_variance() const { return var_i_; }
  /// Correlation between log F^E and log F^I.
  double log_correlation() const { return corr_; }

 private:
  double f0_e_, f0_i_;
  double var_e_, var_i_;
  double sd_e_, sd_i_;
  double corr_, corr_c_;
};

}  // namespace quanto
