#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace holder::cli {

/// Exit codes are part of the command-line contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`; `in` feeds `stream` when no --input is given.
int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err);

/// "1,2.5,3e-4" -> {1, 2.5, 3e-4}. Throws DomainError on malformed or
/// non-positive entries.
std::vector<double> parse_tuple(const std::string& text);

/// "3..7" -> {3, 7}; a single integer "4" -> {4, 4}.
std::pair<int, int> parse_int_range(const std::string& text);

/// Paired rows "a,b" (or whitespace separated), optional non-numeric header
/// on the first line, blank lines skipped. Errors name the 1-based row.
std::vector<std::pair<double, double>> read_pairs(std::istream& in);

}  // namespace holder::cli
