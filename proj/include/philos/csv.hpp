#pragma once

#include <optional>
#include <string>

namespace philos::csv {

/// Real number with 12 significant digits, '.' separator, no grouping.
std::string real(double v);

/// Empty string for nullopt.
std::string real(const std::optional<double>& v);

}  // namespace philos::csv
