#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quanto::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitValidationError = 3;

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// --out when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Comma-separated floats; throws std::invalid_argument on empty or
/// non-numeric entries.
std::vector<double> parse_float_list(const std::string& text);

/// Comma-separated positive integer counts (scientific notation allowed).
std::vector<std::size_t> parse_count_list(const std::string& text);

}  // namespace quanto::cli
