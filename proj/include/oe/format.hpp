#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace oe {

/// Shortest decimal string that parses back to exactly the same double.
inline std::string fmt_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, x);
        if (std::strtod(buf, nullptr) == x) return buf;
    }
    return buf;
}

/// "re+imi" form used in config echoes.
inline std::string fmt_complex(std::complex<double> z) {
    std::string s = fmt_real(z.real());
    s += (std::signbit(z.imag()) ? "-" : "+");
    s += fmt_real(std::abs(z.imag()));
    s += "i";
    return s;
}

}  // namespace oe
