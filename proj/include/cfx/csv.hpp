#pragma once

#include <cstdio>
#include <string>

namespace cfx {

/// Decimal rendering with 17 significant digits (round-trips doubles).
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace cfx
