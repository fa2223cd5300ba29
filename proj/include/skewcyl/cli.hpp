// Command-line front end. Exit codes: 0 success, 2 negative certification or
// inconclusive verdict, 3 invalid input.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skewcyl/rational.hpp"

namespace skewcyl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 2;
inline constexpr int kExitInvalid = 3;

/// Environment variable naming the directory for relative --out paths.
inline constexpr const char* kOutputDirEnv = "SKEWCYL_OUTPUT_DIR";

/// Real literal: exact "p/q" or decimal, otherwise any floating literal.
std::optional<double> parse_real(std::string_view text);

/// "x", "p/q", "re,im" or "a+bi"; purely real rational literals keep their exact value.
std::optional<BasePoint> parse_point(std::string_view text);

/// "64x64" or "64".
std::optional<std::pair<int, int>> parse_grid(std::string_view text);

/// args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skewcyl::cli
