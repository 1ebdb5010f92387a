#include "oe/spectral.hpp"

#include <cmath>
#include <numbers>

namespace oe {

namespace {

bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey, kernel exp(sign * i 2 pi x y / N),
// no normalization.
void fft_radix2(Vector& a, double sign) {
    const Index n = a.size();
    for (Index i = 1, j = 0; i < n; ++i) {
        Index bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a(i), a(j));
    }
    for (Index len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const Complex wlen(std::cos(ang), std::sin(ang));
        for (Index i = 0; i < n; i += len) {
            Complex w = 1.0;
            for (Index k = 0; k < len / 2; ++k) {
                const Complex u = a(i + k);
                const Complex v = a(i + k + len / 2) * w;
                a(i + k) = u + v;
                a(i + k + len / 2) = u - v;
                w *= wlen;
            }
        }
    }
}

Vector dft_direct(const Vector& f, double sign) {
    const Index n = f.size();
    Vector out(n);
    const double base = sign * 2.0 * std::numbers::pi / static_cast<double>(n);
    for (Index x = 0; x < n; ++x) {
        Complex acc = 0.0;
        for (Index y = 0; y < n; ++y) {
            const double ang = base * static_cast<double>((x * y) % n);
            acc += Complex(std::cos(ang), std::sin(ang)) * f(y);
        }
        out(x) = acc;
    }
    return out;
}

Vector transform(const Vector& f, double sign) {
    if (is_power_of_two(f.size())) {
        Vector a = f;
        fft_radix2(a, sign);
        return a;
    }
    return dft_direct(f, sign);
}

}  // namespace

GridFunction dft_forward(const GridFunction& f) {
    return GridFunction(f.domain, transform(f.values, -1.0));
}

GridFunction dft_inverse(const GridFunction& f) {
    Vector out = transform(f.values, +1.0);
    out /= static_cast<double>(f.domain.n);
    return GridFunction(f.domain, std::move(out));
}

PeriodicSymbol periodic_symbol(const Stencil& stencil, const DomainSpec& domain) {
    const Index n = domain.n;
    Vector nu = Vector::Zero(n);
    for (Index x = 0; x < n; ++x) {
        for (const Stencil::Tap& tap : stencil.taps()) {
            const double ang = 2.0 * std::numbers::pi *
                               static_cast<double>(tap.offset) *
                               static_cast<double>(x) / static_cast<double>(n);
            nu(x) += tap.coeff * Complex(std::cos(ang), std::sin(ang));
        }
    }
    return PeriodicSymbol{domain, std::move(nu)};
}

GridFunction exp_periodic(double t, const PeriodicSymbol& symbol,
                          const GridFunction& f) {
    if (symbol.domain.n != f.domain.n)
        throw std::invalid_argument("exp_periodic: domain mismatch");
    Vector hat = transform(f.values, -1.0);
    for (Index x = 0; x < hat.size(); ++x)
        hat(x) *= std::exp(t * symbol.nu(x));
    Vector out = transform(hat, +1.0);
    out /= static_cast<double>(f.domain.n);
    return GridFunction(f.domain, std::move(out));
}

}  // namespace oe
