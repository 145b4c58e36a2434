#include "philos/csv.hpp"

#include <cstdio>

namespace philos::csv {

std::string real(double v) {
    char buf[64];
    // "C" locale is the default for snprintf in this program; no setlocale calls.
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string real(const std::optional<double>& v) {
    return v ? real(*v) : std::string{};
}

}  // namespace philos::csv
