#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "bsys/carrier.hpp"
#include "bsys/termsys.hpp"

namespace bsys {

using LoadedSystem = std::variant<FinBSys, TermBSysDescription>;

/// Parses a `finite-bsystem` or `term-bsystem` JSON document. Unknown keys
/// are rejected (ParseError); structural invariants are validated
/// (InvariantViolation naming the first failure).
LoadedSystem load(std::string_view bytes);
LoadedSystem load_file(const std::string& path);

/// Canonical JSON: keys sorted, arrays sorted lexicographically, two-space
/// indentation, trailing newline.
std::string store(const FinBSys& sys);
std::string store(const TermBSysDescription& desc);

/// Re-serializes a JSON document in canonical form without interpreting it.
std::string canonicalize(std::string_view bytes);

}  // namespace bsys
