#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "quanto/model.hpp"

namespace quanto {

/// One joint realization at maturity. The Gaussian fields are stochastic
/// integrals over [0, tau2] against the independent drivers W^E and W~^I.
struct SampleDraw {
  double terminal_e = 0.0;     // F^E(tau2)
  double terminal_i = 0.0;     // F^I(tau2)
  double log_e = 0.0;          // \int sigma_E dW^E
  double log_i = 0.0;          // \int sigma_I dW~^I
  double log_i_common = 0.0;   // \int sigma_I dW^E, enters F^I under SdeMixing
  double score_e = 0.0;        // \int a / sigma_E dW^E
  double score_i = 0.0;        // \int a / sigma_I dW~^I
  double score_e_tilde = 0.0;  // \int a / sigma_E dW~^I
  double bm_e = 0.0;           // W^E(tau2)
  double bm_i_tilde = 0.0;     // W~^I(tau2)
};

enum class SchemeKind { ExactTerminal, LogEuler };

struct Scheme {
  SchemeKind kind = SchemeKind::ExactTerminal;
  std::size_t steps = 0;

  static Scheme exact() { return {}; }
  static Scheme log_euler(std::size_t steps) { return {SchemeKind::LogEuler, steps}; }
};

/// Parses "exact" or "euler:STEPS".
Scheme parse_scheme(const std::string& text);
std::string to_string(const Scheme& scheme);

struct SimConfig {
  std::size_t n_samples = 100'000;
  std::uint64_t seed = 42;
  bool antithetic = false;
  Scheme scheme{};
  /// Worker threads; 0 picks std::thread::hardware_concurrency(). Results do
  /// not depend on this value.
  unsigned threads = 0;
};

/// Throws std::invalid_argument on an unusable configuration.
void validate_sim_config(const SimConfig& cfg);

/// SplitMix64; satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Generator state owned by one sample index.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// Draw with every underlying Gaussian negated; terminal prices follow.
SampleDraw antithetic_pair(const SampleDraw& draw, const MarketModel& m);

/// Stateless sampler: draw i is a pure function of (model, tuning, config, i).
class Sampler {
 public:
  Sampler(const MarketModel& m, const TuningFunction& a, const SimConfig& cfg);

  SampleDraw operator()(std::uint64_t index) const;

  const MarketModel& model() const { return model_; }
  const SimConfig& config() const { return cfg_; }

 private:
  struct Step {
    double dt, sqrt_dt, sigma_e, sigma_i, a;
  };

  SampleDraw base_draw(std::uint64_t stream) const;

  MarketModel model_;
  SimConfig cfg_;
  std::vector<Step> steps_;
  double f0_e_, f0_i_;
  double drift_e_, drift_i_;  // -1/2 \sum sigma^2 dt over the grid
};

/// All draws of an ExactTerminal configuration, in index order.
std::vector<SampleDraw> sample_terminal(const MarketModel& m, const TuningFunction& a,
                                        const SimConfig& cfg);

/// All draws of a LogEuler configuration, in index order.
std::vector<SampleDraw> sample_paths_log_euler(const MarketModel& m, const TuningFunction& a,
                                               const SimConfig& cfg);

}  // namespace quanto
