#pragma once
// Command-line front end. Kept as a library so tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace kmmix::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // convergence or internal failure, failed check
inline constexpr int kExitUsage = 2;    // bad flags or invalid parameters

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

// Parses "0.25", "1/11", "3", "1e-3". Decimal and fraction forms are read
// exactly and rounded once; throws InvalidParameter on malformed input.
double parse_real(const std::string& text);

}  // namespace kmmix::cli
