#include <benchmark/benchmark.h>

#include "quanto/estimators.hpp"

namespace {

quanto::MarketModel atm_model(double rho) {
  quanto::MarketModel m;
  m.energy = {100.0, 0.5, 1.0};
  m.temperature = {100.0, 0.5, 1.0};
  m.energy_vol = quanto::VolatilityCurve::constant(0.2, 1.0);
  m.temperature_vol = quanto::VolatilityCurve::constant(0.2, 1.0);
  m.rho = rho;
  return m;
}

const quanto::PayoffSpec kCall = quanto::ProductCall{100.0, 100.0};

void BM_McPrice(benchmark::State& state) {
  const auto m = atm_model(0.0);
  quanto::SimConfig cfg;
  cfg.n_samples = static_cast<std::size_t>(state.range(0));
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(quanto::mc_price(m, kCall, cfg).value);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_McPrice)->Arg(1 << 14)->Arg(1 << 17)->Unit(benchmark::kMillisecond);

void BM_McCrossGamma(benchmark::State& state) {
  const auto m = atm_model(0.5);
  const auto a = quanto::TuningFunction::uniform(1.0);
  quanto::SimConfig cfg;
  cfg.n_samples = static_cast<std::size_t>(state.range(0));
  cfg.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        quanto::mc_greek(m, kCall, a, quanto::WeightVariant::CorrCrossGamma_Conditional, cfg)
            .value);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_McCrossGamma)->Arg(1 << 14)->Arg(1 << 17)->Unit(benchmark::kMillisecond);

// euler steps per path
void BM_McPriceEuler(benchmark::State& state) {
  const auto m = atm_model(0.0);
  quanto::SimConfig cfg;
  cfg.n_samples = 1 << 14;
  cfg.scheme = {quanto::SchemeKind::LogEuler, static_cast<std::size_t>(state.range(0))};
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(quanto::mc_price(m, kCall, cfg).value);
}
BENCHMARK(BM_McPriceEuler)->Arg(16)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_QuadPrice(benchmark::State& state) {
  const auto m = atm_model(state.range(0) / 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(quanto::quad_price(m, kCall));
}
BENCHMARK(BM_QuadPrice)->Arg(0)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
