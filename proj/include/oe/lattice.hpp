#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <variant>
#include <vector>

namespace oe {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// One-dimensional lattice Omega = {0, ..., n-1}.
struct DomainSpec {
    explicit DomainSpec(Index n);
    Index n;
};

/// Complex-valued state on a DomainSpec. Length and finiteness are checked
/// on construction.
struct GridFunction {
    GridFunction(DomainSpec domain, Vector values);
    DomainSpec domain;
    Vector values;

    double norm() const { return values.norm(); }
};

/// Constant-coefficient difference operator, given as taps
/// (signed offset, complex coefficient). Offsets must be distinct.
class Stencil {
public:
    struct Tap {
        std::int64_t offset;
        Complex coeff;
    };

    explicit Stencil(std::vector<Tap> taps);

    /// Second-difference operator: f(x-1) - 2 f(x) + f(x+1).
    static Stencil laplacian();

    /// Stencil with every coefficient multiplied by c (e.g. c = i for the
    /// Schrodinger operator).
    Stencil scaled(Complex c) const;

    const std::vector<Tap>& taps() const { return taps_; }
    std::int64_t min_offset() const { return min_offset_; }
    std::int64_t max_offset() const { return max_offset_; }
    /// Largest absolute offset (how far the stencil reaches off a point).
    std::int64_t reach() const;

private:
    std::vector<Tap> taps_;
    std::int64_t min_offset_;
    std::int64_t max_offset_;
};

/// Ghost values f(N-1+k), f(-k) wrap around: ghost g -> f(g mod n).
struct Periodic {};

/// Third-kind boundary conditions for stencils reaching one point off each
/// end: f(-1) = alpha f(0), f(n) = beta f(n-1). alpha = beta = -1 is
/// Dirichlet, alpha = beta = +1 Neumann.
struct ThirdKind {
    Complex alpha;
    Complex beta;
};

/// Explicit linear map from boundary-point values to ghost values:
/// ghost index -> list of (in-domain index, weight).
struct CustomExtension {
    std::map<std::int64_t, std::vector<std::pair<Index, Complex>>> ghost_map;
};

/// Boundary-condition encoding: how a grid function is extended to the
/// ghost points a stencil reaches outside the domain.
class ExtensionSpec {
public:
    using Variant = std::variant<Periodic, ThirdKind, CustomExtension>;

    static ExtensionSpec periodic() { return ExtensionSpec(Periodic{}); }
    static ExtensionSpec third_kind(Complex alpha, Complex beta) {
        return ExtensionSpec(ThirdKind{alpha, beta});
    }
    static ExtensionSpec dirichlet() { return third_kind(-1.0, -1.0); }
    static ExtensionSpec neumann() { return third_kind(1.0, 1.0); }
    static ExtensionSpec custom(CustomExtension map) {
        return ExtensionSpec(std::move(map));
    }

    const Variant& variant() const { return variant_; }

private:
    explicit ExtensionSpec(Variant v) : variant_(std::move(v)) {}
    Variant variant_;
};

/// Partition of the domain relative to a stencil: inner points (stencil
/// stays inside), boundary points (stencil reaches outside), and the ghost
/// indices reached.
struct BoundarySets {
    std::vector<Index> inner;
    std::vector<Index> boundary;
    std::vector<std::int64_t> ghost;
};

/// Classify every lattice point as inner or boundary relative to the
/// stencil and collect the ghost set. Throws std::invalid_argument
/// ("stencil wider than domain") when the stencil reach is >= n.
BoundarySets classify_boundary(const Stencil& stencil, const DomainSpec& domain);

/// Apply the stencil to f extended by `ext`:
/// (result)(x) = sum_taps coeff * f_ext(x + offset).
/// Throws std::invalid_argument ("extension incomplete") when the extension
/// does not cover a required ghost index, and when a custom extension
/// references a non-boundary point.
GridFunction apply_extended(const Stencil& stencil, const ExtensionSpec& ext,
                            const GridFunction& f);

/// Dense n x n matrix of the extended operator; column j is apply_extended
/// on the j-th standard basis vector.
Matrix dense_matrix(const Stencil& stencil, const ExtensionSpec& ext,
                    const DomainSpec& domain);

}  // namespace oe
