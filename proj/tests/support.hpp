#pragma once

#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "oe/steppers.hpp"

namespace oe::test {

// Independent exponential oracle (Eigen's Pade scaling-and-squaring), used
// only on the test side of dual-route checks.
inline Matrix expm_reference(const Matrix& a) { return a.exp(); }

inline Vector random_complex(Index n, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(n);
    for (Index k = 0; k < n; ++k) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(k) = Complex(re, im);
    }
    return v;
}

inline Vector random_unit(Index n, std::uint32_t seed) {
    Vector v = random_complex(n, seed);
    v /= v.norm();
    return v;
}

inline EvolutionProblem dirichlet_problem(Index n, Complex scale = 1.0) {
    return EvolutionProblem{Stencil::laplacian(), ExtensionSpec::dirichlet(),
                            DomainSpec(n), scale};
}

inline EvolutionProblem neumann_problem(Index n) {
    return EvolutionProblem{Stencil::laplacian(), ExtensionSpec::neumann(),
                            DomainSpec(n), 1.0};
}

// Least-squares slope of log2(err) against log2(t).
inline double loglog_slope(const std::vector<double>& ts,
                           const std::vector<double>& errs) {
    const std::size_t m = ts.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double x = std::log2(ts[i]);
        const double y = std::log2(errs[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double dm = static_cast<double>(m);
    return (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
}

}  // namespace oe::test
