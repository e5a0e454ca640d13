#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace convchar::cli {

/// Exit codes: 0 success, 1 a checked residual or extraction failed (report still written),
/// 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `convchar` tool. `args[0]` is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Parses "a:b:n" (n points from a to b inclusive) or a comma list "0.5,1,2".
std::vector<double> parse_y_grid(const std::string& text);

}  // namespace convchar::cli
