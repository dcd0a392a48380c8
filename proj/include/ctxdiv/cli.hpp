#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctxdiv::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_data_error = 1;
inline constexpr int exit_usage = 2;

/// Runs `ctxdiv <index|features|search> ...`; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Splits on whitespace and lowercases ASCII letters, keeping term order.
std::vector<std::string> split_query(const std::string& text);

} // namespace ctxdiv::cli
