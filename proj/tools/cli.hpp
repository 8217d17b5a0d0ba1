#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rlip/cones.hpp"

namespace rlip::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInconsistent = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "sel" or "sel,piece"; throws std::invalid_argument otherwise.
Caps parse_cap_env(const std::string& text, Caps base = {});

}  // namespace rlip::cli
