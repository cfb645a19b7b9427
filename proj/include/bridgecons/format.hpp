// Copyright 2026 the bridgecons developers. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace bridgecons {

/// Formats a real with 17 significant digits so the decimal text
/// round-trips to the same double. Integral values keep a trailing
/// ".0" to stay recognizable as reals in CSV and key=value output.
inline std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos && std::isfinite(value)) {
        s += ".0";
    }
    return s;
}

}  // namespace bridgecons
