#pragma once

// Canonical JSON text: object keys sorted, numbers in shortest round-trip
// form using the ECMAScript Number-to-String layout (40 not 40.0, 1e-7 not
// 1e-07), strings escaped only where JSON requires it.

#include <string>

#include <json.hpp>

namespace tabx {

/// Shortest round-trip decimal text for a finite double. Throws
/// std::domain_error on NaN or infinity.
std::string format_number(double value);

/// indent < 0 gives compact single-line output; otherwise each nesting level
/// is indented by that many spaces.
std::string canonical_dump(const nlohmann::json& value, int indent = 2);

}  // namespace tabx
