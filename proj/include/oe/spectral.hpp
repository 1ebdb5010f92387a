#pragma once

#include "oe/lattice.hpp"

namespace oe {

/// Eigenvalues nu(x) of a constant-coefficient stencil with periodic
/// extension on the discrete Fourier modes; nu(x) = -4 sin^2(pi x / N)
/// for the Laplacian.
struct PeriodicSymbol {
    DomainSpec domain;
    Vector nu;
};

/// Forward transform (Ff)(x) = sum_y exp(-i 2 pi x y / N) f(y),
/// unnormalized. Radix-2 FFT for power-of-two N, direct summation
/// otherwise.
GridFunction dft_forward(const GridFunction& f);

/// Inverse transform; carries the 1/N factor so dft_inverse(dft_forward(f))
/// recovers f.
GridFunction dft_inverse(const GridFunction& f);

/// nu[x] = sum_taps coeff * exp(i 2 pi offset x / N).
PeriodicSymbol periodic_symbol(const Stencil& stencil, const DomainSpec& domain);

/// exp(t A_L) f = F^{-1} diag(exp(t nu)) F f.
GridFunction exp_periodic(double t, const PeriodicSymbol& symbol,
                          const GridFunction& f);

}  // namespace oe
