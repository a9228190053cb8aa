#pragma once

#include <cstdio>
#include <string>

namespace ftl {

// 17 significant digits: doubles round-trip losslessly, so identical runs
// produce byte-identical CSV files.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace ftl
