#include <gtest/gtest.h>

#include "../oracles/black76.hpp"
#include "fixtures.hpp"

using namespace quanto;
using fixtures::combined_z;

namespace {

const double kBlackAtm = oracle::black_call(100, 100, 0.2, 1.0);
const double kDeltaAtm = oracle::black_delta(100, 100, 0.2, 1.0) * kBlackAtm;
const auto kUniform = TuningFunction::uniform(1.0);

oracle::Market market_of(const MarketModel& m) {
  return {m.energy.f0, m.temperature.f0, m.energy_vol.sigma.segments[0].value,
          m.temperature_vol.sigma.segments[0].value, m.maturity(), m.rho};
}

// 1-D oracle Greeks for ProductCall with constant vols
struct OracleGreeks {
  double price, d_e, d_i, cross;
};

OracleGreeks oracle_greeks(const MarketModel& m, double ke, double ki) {
  auto price = [&](const oracle::Market& x) {
    return m.correlation_mode == CorrelationMode::PayoffMixing
               ? oracle::product_call_payoff_mixing(x, ke, ki)
               : oracle::product_call_sde_mixing(x, ke, ki);
  };
  const auto x = market_of(m);
  return {price(x), oracle::bump_e(x, 1e-4, price), oracle::bump_i(x, 1e-4, price),
          oracle::bump_cross(x, 1e-3, price)};
}

}  // namespace

TEST(Oracle, BlackAtmValues) {
  EXPECT_NEAR(kBlackAtm, 7.9656, 1e-4);
  EXPECT_NEAR(kBlackAtm * kBlackAtm, 63.45, 1e-2);
  // Phi(0.1) * 7.9656
  EXPECT_NEAR(kDeltaAtm, 0.539828 * 7.9656, 1e-4);
}

TEST(McPrice, IndependentAtmMatchesBlackProduct) {
  const auto e = mc_price(fixtures::atm(), ProductCall{100, 100}, fixtures::sim(1'000'000));
  EXPECT_LT(std::abs(combined_z(e, kBlackAtm * kBlackAtm)), 3.0);
  EXPECT_EQ(e.n, 1'000'000u);
  EXPECT_EQ(e.variant, "price");
}

TEST(McPrice, ZeroStrikesGiveTheForwardProduct) {
  const auto e = mc_price(fixtures::atm(), ProductCall{0, 0}, fixtures::sim(1'000'000, 5));
  EXPECT_LT(std::abs(combined_z(e, 100.0 * 100.0)), 4.0);
}

TEST(McPrice, DeepOutOfTheMoneyIsZero) {
  const auto e = mc_price(fixtures::atm(), ProductCall{1e6, 1e6}, fixtures::sim(100'000));
  EXPECT_EQ(e.value, 0.0);
  EXPECT_EQ(e.std_error, 0.0);
}

TEST(McPrice, RejectsInvalidInputs) {
  auto m = fixtures::atm();
  m.energy_vol = VolatilityCurve::constant(0.0, 1.0);
  EXPECT_THROW(mc_price(m, ProductCall{100, 100}, fixtures::sim(10)), std::invalid_argument);
  EXPECT_THROW(mc_price(fixtures::atm(), ProductCall{-1, 100}, fixtures::sim(10)), std::invalid_argument);
  EXPECT_THROW(mc_price(fixtures::atm(), ProductCall{100, 100}, fixtures::sim(0)), std::invalid_argument);
}

TEST(McGreek, IndependentAtmDelta) {
  const auto e = mc_greek(fixtures::atm(), ProductCall{100, 100}, kUniform, WeightVariant::IndepDeltaE,
                          fixtures::sim(1'000'000));
  EXPECT_LT(std::abs(combined_z(e, kDeltaAtm)), 3.0);
  EXPECT_EQ(e.variant, "IndepDeltaE");
}

TEST(McGreek, LinearEnergyLegDeltaIsTheTemperatureCall) {
  const auto e = mc_greek(fixtures::atm(), ProductCall{0, 100}, kUniform, WeightVariant::IndepDeltaE,
                          fixtures::sim(1'000'000, 3));
  EXPECT_LT(std::abs(combined_z(e, kBlackAtm)), 3.0);
}

TEST(McGreek, IndependentDigitalDelta) {
  const double expected = oracle::black_digital_delta(100, 100, 0.2, 1.0) *
                          oracle::black_digital(100, 100, 0.2, 1.0);
  const auto e = mc_greek(fixtures::atm(), DigitalProduct{100, 100}, kUniform,
                          WeightVariant::IndepDeltaE, fixtures::sim(1'000'000, 4));
  EXPECT_LT(std::abs(combined_z(e, expected)), 3.0);
}

TEST(McGreek, IndependentVariantNeedsOverrideAtNonzeroRho) {
  const auto m = fixtures::atm(0.3);
  EXPECT_THROW(mc_greek(m, ProductCall{100, 100}, kUniform, WeightVariant::IndepDeltaE, fixtures::sim(10)),
               std::invalid_argument);
  EXPECT_NO_THROW(mc_greek(m, ProductCall{100, 100}, kUniform, WeightVariant::IndepDeltaE,
                           fixtures::sim(10), true));
}

TEST(McGreek, ThreadCountDoesNotChangeResults) {
  const auto m = fixtures::atm(0.4);
  for (bool antithetic : {false, true}) {
    auto one = fixtures::sim(100'000, 77, antithetic);
    one.threads = 1;
    auto many = one;
    many.threads = 7;
    const auto a = mc_greek(m, FourStrikeCollar{110, 105, 90, 95, 1.0}, kUniform,
                            WeightVariant::CorrCrossGamma_Conditional, one);
    const auto b = mc_greek(m, FourStrikeCollar{110, 105, 90, 95, 1.0}, kUniform,
                            WeightVariant::CorrCrossGamma_Conditional, many);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.std_error, b.std_error);
    EXPECT_EQ(mc_price(m, ProductCall{100, 100}, one).value, mc_price(m, ProductCall{100, 100}, many).value);
  }
}

TEST(McGreek, TuningFunctionInvariance) {
  const TuningFunction front{StepFunction{{{0.0, 2.0}, {0.5, 0.0}}, 1.0}};
  ASSERT_TRUE(validate_tuning(front, 1.0).ok());
  const auto m = fixtures::atm();
  const auto u = mc_greek(m, ProductCall{100, 100}, kUniform, WeightVariant::IndepDeltaE,
                          fixtures::sim(1'000'000, 31));
  const auto f = mc_greek(m, ProductCall{100, 100}, front, WeightVariant::IndepDeltaE,
                          fixtures::sim(1'000'000, 31));
  EXPECT_LT(std::abs(u.value - f.value), 4.0 * std::hypot(u.std_error, f.std_error));
  EXPECT_LT(std::abs(combined_z(f, kDeltaAtm)), 4.0);
}

TEST(McGreek, DiscountingScalesEverything) {
  auto disc = fixtures::atm(0.3);
  disc.rate = 0.05;
  const auto cfg = fixtures::sim(50'000, 13);
  const double df = std::exp(-0.05);
  const ProductCall p{100, 100};
  EXPECT_NEAR(mc_price(disc, p, cfg).value, df * mc_price(fixtures::atm(0.3), p, cfg).value, 1e-10);
  for (auto v : kAllWeightVariants) {
    const auto a = mc_greek(disc, p, kUniform, v, cfg, true);
    const auto b = mc_greek(fixtures::atm(0.3), p, kUniform, v, cfg, true);
    EXPECT_NEAR(a.value, df * b.value, 1e-12 * (1.0 + std::abs(b.value))) << to_string(v);
    EXPECT_NEAR(a.std_error, df * b.std_error, 1e-12 * (1.0 + b.std_error)) << to_string(v);
  }
  EXPECT_NEAR(quad_price(disc, p), df * quad_price(fixtures::atm(0.3), p), 1e-9);
}

TEST(FdGreek, LinearLegIsBumpIndependent) {
  FdConfig small{1e-4}, large{5e-2};
  const auto cfg = fixtures::sim(100'000, 2);
  const auto a = fd_greek(fixtures::atm(), ProductCall{0, 100}, Greek::DeltaE, small, cfg);
  const auto b = fd_greek(fixtures::atm(), ProductCall{0, 100}, Greek::DeltaE, large, cfg);
  EXPECT_NEAR(a.value, b.value, 1e-10 * std::abs(b.value));
  EXPECT_EQ(a.variant, "FD:dE");
  EXPECT_LT(std::abs(combined_z(a, kBlackAtm)), 4.0);
}

TEST(FdGreek, AgreesWithMalliavinInTheIndependentCase) {
  const auto m = fixtures::atm();
  const ProductCall p{100, 100};
  const auto cfg = fixtures::sim(1'000'000, 8);
  const std::pair<Greek, WeightVariant> pairs[] = {{Greek::DeltaE, WeightVariant::IndepDeltaE},
                                                   {Greek::DeltaI, WeightVariant::IndepDeltaI},
                                                   {Greek::CrossGamma, WeightVariant::IndepCrossGamma}};
  for (auto [g, v] : pairs) {
    const auto fd = fd_greek(m, p, g, {}, cfg);
    const auto mc = mc_greek(m, p, kUniform, v, fixtures::sim(1'000'000, 9));
    EXPECT_LT(std::abs(combined_z(mc, fd.value, fd.std_error)), 3.0) << to_string(g);
  }
}

TEST(FdGreek, DigitalFdIsNoisierThanMalliavin) {
  // With bump 1e-4 only a couple of the 1e4 draws straddle the strike, so the
  // FD sample variance is often exactly zero; a 1e-2 bump keeps it measurable.
  const auto cfg = fixtures::sim(10'000, 21);
  const auto fd = fd_greek(fixtures::atm(), DigitalProduct{100, 100}, Greek::DeltaE, {1e-2}, cfg);
  const auto mc = mc_greek(fixtures::atm(), DigitalProduct{100, 100}, kUniform, WeightVariant::IndepDeltaE, cfg);
  EXPECT_GT(fd.std_error, mc.std_error);
  // at the default bump the comparison needs more draws
  const auto big = fixtures::sim(100'000, 21);
  EXPECT_GT(fd_greek(fixtures::atm(), DigitalProduct{100, 100}, Greek::DeltaE, {}, big).std_error,
            mc_greek(fixtures::atm(), DigitalProduct{100, 100}, kUniform, WeightVariant::IndepDeltaE, big).std_error);
}

TEST(FdGreek, BumpBounds) {
  EXPECT_THROW(validate_fd_config({0.0}), std::invalid_argument);
  EXPECT_THROW(validate_fd_config({0.1}), std::invalid_argument);
  EXPECT_NO_THROW(validate_fd_config({0.05}));
}

TEST(Quadrature, ZeroStrikes) {
  EXPECT_NEAR(quad_price(fixtures::atm(), ProductCall{0, 0}), 1e4, 1e-6 * 1e4);
}

TEST(Quadrature, IndependentClosedForms) {
  const auto m = fixtures::atm();
  const ProductCall p{100, 100};
  const double price = kBlackAtm * kBlackAtm;
  EXPECT_NEAR(quad_price(m, p), price, 1e-4 * price);
  EXPECT_NEAR(quad_greek(m, p, Greek::DeltaE), kDeltaAtm, 1e-4 * kDeltaAtm);
  EXPECT_NEAR(quad_greek(m, p, Greek::DeltaI), kDeltaAtm, 1e-4 * kDeltaAtm);
  const double cross = std::pow(oracle::black_delta(100, 100, 0.2, 1.0), 2);
  EXPECT_NEAR(quad_greek(m, p, Greek::CrossGamma), cross, 1e-4 * cross);
}

TEST(Quadrature, IndependentDigital) {
  const auto m = fixtures::lognormal_pair(100, 0.3, 50, 0.25, 0.0);
  const double pe = oracle::black_digital(100, 105, 0.3, 1.0), pi = oracle::black_digital(50, 48, 0.25, 1.0);
  EXPECT_NEAR(quad_price(m, DigitalProduct{105, 48}), pe * pi, 1e-7);
  const double de = oracle::black_digital_delta(100, 105, 0.3, 1.0) * pi;
  EXPECT_NEAR(quad_greek(m, DigitalProduct{105, 48}, Greek::DeltaE), de, 1e-4 * de);
}

TEST(Quadrature, FrozenCorrelatedProductCall) {
  const auto m = fixtures::atm(0.5);
  const double q = quad_price(m, ProductCall{100, 100});
  EXPECT_NEAR(q, 409.791474406, 1e-6);
  EXPECT_NEAR(q, oracle::product_call_payoff_mixing(market_of(m), 100, 100), 1e-6 * q);
  const auto mc = mc_price(m, ProductCall{100, 100}, fixtures::sim(10'000'000, 99));
  EXPECT_LT(std::abs(combined_z(mc, q)), 4.0);
}

TEST(Quadrature, MatchesOneDimensionalOraclesInBothModes) {
  for (auto mode : {CorrelationMode::PayoffMixing, CorrelationMode::SdeMixing}) {
    for (double rho : {-0.5, 0.3, 0.8}) {
      const auto m = fixtures::lognormal_pair(100, 0.25, 80, 0.35, rho, 1.5, mode);
      const auto o = oracle_greeks(m, 95, 85);
      const ProductCall p{95, 85};
      EXPECT_NEAR(quad_price(m, p), o.price, 1e-6 * o.price) << to_string(mode) << " " << rho;
      EXPECT_NEAR(quad_greek(m, p, Greek::DeltaE), o.d_e, 1e-4 * std::abs(o.d_e)) << rho;
      EXPECT_NEAR(quad_greek(m, p, Greek::DeltaI), o.d_i, 1e-4 * std::abs(o.d_i)) << rho;
      EXPECT_NEAR(quad_greek(m, p, Greek::CrossGamma), o.cross, 1e-3 * std::abs(o.cross)) << rho;
    }
  }
}

TEST(Quadrature, ConfigBounds) {
  EXPECT_THROW(validate_quad_config({1, 10.0, 1e-8}), std::invalid_argument);
  EXPECT_NO_THROW(validate_quad_config({2, 10.0, 1e-8}));
}

// Which correlated weights are unbiased is decided against the 1-D oracles.
TEST(CorrelatedGreeks, PayoffMixingSoundVariants) {
  for (double rho : {-0.5, 0.3}) {
    const auto m = fixtures::atm(rho);
    const auto o = oracle_greeks(m, 100, 100);
    const ProductCall p{100, 100};
    const auto cfg = fixtures::sim(1'000'000, 41);
    EXPECT_LT(std::abs(combined_z(mc_greek(m, p, kUniform, WeightVariant::CorrDeltaE_Conditional, cfg), o.d_e)), 3.0);
    EXPECT_LT(std::abs(combined_z(mc_greek(m, p, kUniform, WeightVariant::CorrDeltaI_Prop52, cfg), o.d_i)), 3.0);
    EXPECT_LT(std::abs(combined_z(mc_greek(m, p, kUniform, WeightVariant::CorrCrossGamma_Conditional, cfg), o.cross)),
              3.0);
  }
}

TEST(CorrelatedGreeks, PayoffMixingBiasedVariants) {
  const auto m = fixtures::atm(0.3);
  const auto o = oracle_greeks(m, 100, 100);
  const ProductCall p{100, 100};
  const auto cfg = fixtures::sim(1'000'000, 43);
  EXPECT_GT(std::abs(combined_z(mc_greek(m, p, kUniform, WeightVariant::CorrDeltaE_Prop51, cfg), o.d_e)), 10.0);
  EXPECT_GT(std::abs(combined_z(mc_greek(m, p, kUniform, WeightVariant::CorrCrossGamma_Matrix62, cfg), o.cross)),
            10.0);
}

TEST(CorrelatedGreeks, SdeMixingCorrectionSign) {
  const auto m = fixtures::atm(0.5, CorrelationMode::SdeMixing);
  const auto o = oracle_greeks(m, 100, 100);
  const ProductCall p{100, 100};
  const auto cfg = fixtures::sim(1'000'000, 47);
  const auto cond = mc_greek(m, p, kUniform, WeightVariant::CorrCrossGamma_Conditional, cfg);
  const auto m62 = mc_greek(m, p, kUniform, WeightVariant::CorrCrossGamma_Matrix62, cfg);
  EXPECT_LT(std::abs(combined_z(cond, o.cross)), 3.0);
  EXPECT_GT(std::abs(combined_z(m62, o.cross)), 10.0);
  // the two differ by exactly 2 dt on every draw
  const double dt = make_weight_context(m, kUniform).dt_correction;
  const auto price = mc_price(m, p, cfg);
  EXPECT_NEAR(cond.value - m62.value, 2.0 * dt * price.value, 1e-9 * price.value);

  const auto de = mc_greek(m, p, kUniform, WeightVariant::CorrDeltaE_Matrix62, cfg);
  EXPECT_LT(std::abs(combined_z(de, o.d_e)), 3.0);
}

TEST(ResidualRisk, Table) {
  const auto m = fixtures::atm(0.7);
  const std::vector<double> grid = {-0.5, 0.0, 0.5};
  const auto rows = residual_risk(m, ProductCall{100, 100}, kUniform, WeightVariant::CorrDeltaE_Conditional,
                                  grid, fixtures::sim(20'000));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1].rho, 0.0);
  EXPECT_EQ(rows[1].abs_diff, 0.0);
  EXPECT_EQ(rows[1].delta_corr, rows[1].delta_ind);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.abs_diff, std::abs(r.delta_corr - r.delta_ind), 1e-12 * (1.0 + r.abs_diff));
    EXPECT_GE(r.std_error, 0.0);
  }
  // the benchmark column never depends on rho
  EXPECT_EQ(rows[0].delta_ind, rows[2].delta_ind);
  const std::vector<double> bad = {0.2, 1.0};
  EXPECT_THROW(residual_risk(m, ProductCall{100, 100}, kUniform, WeightVariant::CorrDeltaE_Conditional, bad,
                             fixtures::sim(100)),
               std::invalid_argument);
}

TEST(Convergence, StandardErrorHalvesWhenNQuadruples) {
  const std::vector<std::size_t> grid = {100'000, 400'000, 1'600'000};
  const auto rows = convergence_table(fixtures::atm(), ProductCall{100, 100}, kUniform,
                                      WeightVariant::IndepDeltaE, grid, fixtures::sim(1));
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double ratio = rows[i + 1].std_error / rows[i].std_error;
    EXPECT_GE(ratio, 0.4);
    EXPECT_LE(ratio, 0.6);
  }
}

TEST(Convergence, SharesTheSeedPrefix) {
  const std::vector<std::size_t> grid = {1000, 5000};
  const auto rows = convergence_table(fixtures::atm(), ProductCall{100, 100}, kUniform, std::nullopt, grid,
                                      fixtures::sim(1, 5));
  EXPECT_EQ(rows[0].value, mc_price(fixtures::atm(), ProductCall{100, 100}, fixtures::sim(1000, 5)).value);
  EXPECT_EQ(rows[1].value, mc_price(fixtures::atm(), ProductCall{100, 100}, fixtures::sim(5000, 5)).value);
}

TEST(Convergence, GridValidation) {
  const std::vector<std::size_t> single = {1000};
  EXPECT_EQ(convergence_table(fixtures::atm(), ProductCall{100, 100}, kUniform, std::nullopt, single,
                              fixtures::sim(1))
                .size(),
            1u);
  const std::vector<std::size_t> unsorted = {2000, 1000};
  const std::vector<std::size_t> empty;
  EXPECT_THROW(convergence_table(fixtures::atm(), ProductCall{100, 100}, kUniform, std::nullopt, unsorted,
                                 fixtures::sim(1)),
               std::invalid_argument);
  EXPECT_THROW(convergence_table(fixtures::atm(), ProductCall{100, 100}, kUniform, std::nullopt, empty,
                                 fixtures::sim(1)),
               std::invalid_argument);
}
