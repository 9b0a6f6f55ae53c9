#pragma once

#include <string>
#include <string_view>

namespace hyplc {

/// Shortest decimal text that parses back to `v` exactly, without a sign
/// or exponent when avoidable ("1", "0.5", "1e-07").
std::string format_number(double v);

/// Strict decimal parse (optional sign, digits, fraction, exponent).
/// Returns false on trailing junk.
bool parse_number(std::string_view text, double& out);

}  // namespace hyplc
