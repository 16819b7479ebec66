#pragma once

// Command-line front end. Exit codes: 0 success, 2 malformed input or domain
// error, 3 numerical invariant failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace hillmono::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_input = 2;
inline constexpr int exit_numerical = 3;

// args excludes the program name. Results go to `out` unless --output is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hillmono::cli
