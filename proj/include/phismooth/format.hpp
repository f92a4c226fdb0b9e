#pragma once

#include <cstdio>
#include <string>

namespace phismooth {

// all CSV floats are printed to 12 significant digits
inline std::string format_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace phismooth
