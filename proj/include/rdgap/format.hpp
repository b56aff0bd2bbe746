// rdgap: format.hpp
// Deterministic number formatting for CSV output.
#pragma once

#include <string>

namespace rdgap {

/// At most 12 significant digits, trailing zeros trimmed, and ".0" appended
/// to integral values (1 -> "1.0", 0.25 -> "0.25").
std::string format_short(double x);

/// Fixed notation with `decimals` digits after the point.
std::string format_fixed(double x, int decimals);

/// %.9g, used for spectrum levels and weights.
std::string format_level(double x);

}  // namespace rdgap
