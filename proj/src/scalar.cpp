#include "fdcalc/scalar.hpp"

#include <cstdio>

namespace fdcalc {

std::string double_str(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace fdcalc
