#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace quanto::cli {

enum class OutputFormat { Csv, Json };

/// A table plus the provenance written alongside it.
struct Report {
  std::string command;
  std::uint64_t seed = 0;
  KeyValues echo;
  std::vector<std::string> columns;
  /// Cells are preformatted; an empty cell means "not applicable".
  std::vector<std::vector<std::string>> rows;
};

/// Columns of the price and greeks tables.
inline const std::vector<std::string> kEstimateColumns = {
    "variant", "value", "stderr", "n", "seconds", "oracle_value", "z_score"};

std::string format_number(double x);

/// 64-bit FNV-1a of the canonical "key=value\n" echo, as 16 hex digits.
std::string model_hash(const KeyValues& echo);

/// CSV: `# key: value` provenance lines, header row, data rows.
std::string render_csv(const Report& r);
/// JSON object with command, seed, model_hash, config echo and rows.
std::string render_json(const Report& r);
std::string render(const Report& r, OutputFormat format);

}  // namespace quanto::cli
