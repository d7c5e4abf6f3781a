#pragma once

#include <string>

namespace purposedyn {

/// Shortest decimal string that parses back to exactly `x`.
std::string full_precision(double x);

/// Six significant digits, for human-readable tables.
std::string six_digits(double x);

}  // namespace purposedyn
