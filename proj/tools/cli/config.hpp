#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

#include "quanto/estimators.hpp"
#include "quanto/model.hpp"
#include "quanto/payoffs.hpp"
#include "quanto/simulate.hpp"

namespace quanto::cli {

/// Malformed or incomplete configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Raw `key = value` pairs, keys sorted. Values keep their source text.
using KeyValues = std::map<std::string, std::string>;

/// Grammar: one `key = value` per line; `#` starts a comment; blank lines
/// ignored. Values are JSON literals (numbers, arrays, strings, booleans) or
/// bare words.
KeyValues parse_key_values(std::istream& in);

struct RunConfig {
  MarketModel model;
  TuningFunction tuning;
  PayoffSpec payoff;
  SimConfig sim;
  FdConfig fd;
  QuadConfig quad;
  double eta = kDefaultEllipticityFloor;
  KeyValues echo;
};

/// Builds the run configuration; throws ConfigError naming the offending key.
RunConfig build_run_config(const KeyValues& kv);
RunConfig load_run_config(const std::string& path);

/// Model, tuning and payoff invariant violations.
ValidationReport validate_run_config(const RunConfig& rc);

}  // namespace quanto::cli
