#pragma once

#include "oe/lattice.hpp"

namespace oe {

/// Compact form of G_KL = A_K - A_L: a small dense block on the boundary
/// points (ascending lattice order), zero everywhere else.
struct BoundaryOperator {
    std::vector<Index> indices;
    Matrix matrix;
};

/// exp(theta G) restricted to the boundary block; acts as the identity off
/// `indices`.
struct BoundaryExponential {
    std::vector<Index> indices;
    Matrix matrix;
};

/// Build G_KL from two extensions of the same stencil. Throws
/// std::invalid_argument ("extension pair violates boundary-support
/// condition") when the difference depends on values at inner points.
BoundaryOperator build_gkl(const Stencil& stencil, const ExtensionSpec& ext_k,
                           const ExtensionSpec& ext_l, const DomainSpec& domain);

/// Matrix exponential exp(theta g) of the boundary block. Throws
/// std::invalid_argument ("boundary block too large") when the block
/// dimension exceeds size_cap.
BoundaryExponential exp_boundary(Complex theta, const BoundaryOperator& g,
                                 Index size_cap = 16);

/// Apply the embedded exponential: f unchanged off the boundary indices,
/// small matrix-vector product on them.
GridFunction apply_boundary_exp(const BoundaryExponential& e,
                                const GridFunction& f);

}  // namespace oe
