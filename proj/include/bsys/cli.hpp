#pragma once

#include <iosfwd>

namespace bsys::cli {

// Exit statuses.
inline constexpr int ok = 0;
inline constexpr int other_error = 1;
inline constexpr int parse_error = 2;
inline constexpr int law_failure = 3;
inline constexpr int budget_exceeded = 4;

/// Entry point of the `bsys` tool; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bsys::cli
