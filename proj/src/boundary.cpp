#include "oe/boundary.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "oe/expm.hpp"

namespace oe {

namespace {

Index wrap(std::int64_t y, Index n) {
    std::int64_t m = y % n;
    if (m < 0) m += n;
    return static_cast<Index>(m);
}

// In-domain indices an extension's ghost values can depend on.
void referenced_indices(const ExtensionSpec& ext,
                        const std::vector<std::int64_t>& ghost, Index n,
                        std::set<Index>& out) {
    if (std::holds_alternative<Periodic>(ext.variant())) {
        for (std::int64_t g : ghost) out.insert(wrap(g, n));
    } else if (std::holds_alternative<ThirdKind>(ext.variant())) {
        for (std::int64_t g : ghost) {
            if (g == -1) out.insert(0);
            else if (g == n) out.insert(n - 1);
        }
    } else {
        const CustomExtension& cm = std::get<CustomExtension>(ext.variant());
        for (const auto& [g, terms] : cm.ghost_map)
            for (const auto& [idx, w] : terms) out.insert(idx);
    }
}

}  // namespace

BoundaryOperator build_gkl(const Stencil& stencil, const ExtensionSpec& ext_k,
                           const ExtensionSpec& ext_l, const DomainSpec& domain) {
    const Index n = domain.n;
    const BoundarySets sets = classify_boundary(stencil, domain);
    const std::vector<Index>& bnd = sets.boundary;
    const Index m = static_cast<Index>(bnd.size());

    // Columns of A_K - A_L can be nonzero only where some ghost value
    // depends on the basis vector; checking those columns suffices.
    std::set<Index> candidates(bnd.begin(), bnd.end());
    referenced_indices(ext_k, sets.ghost, n, candidates);
    referenced_indices(ext_l, sets.ghost, n, candidates);

    Matrix block = Matrix::Zero(m, m);
    Vector basis = Vector::Zero(n);
    for (Index j : candidates) {
        basis(j) = 1.0;
        const GridFunction e(domain, basis);
        const Vector dcol =
            apply_extended(stencil, ext_k, e).values - apply_extended(stencil, ext_l, e).values;
        basis(j) = 0.0;

        auto cpos = std::lower_bound(bnd.begin(), bnd.end(), j);
        const bool col_on_boundary = (cpos != bnd.end() && *cpos == j);
        for (Index x = 0; x < n; ++x) {
            if (dcol(x) == 0.0) continue;
            auto rpos = std::lower_bound(bnd.begin(), bnd.end(), x);
            if (rpos == bnd.end() || *rpos != x || !col_on_boundary)
                throw std::invalid_argument(
                    "extension pair violates boundary-support condition");
            block(rpos - bnd.begin(), cpos - bnd.begin()) = dcol(x);
        }
    }
    return BoundaryOperator{bnd, std::move(block)};
}

BoundaryExponential exp_boundary(Complex theta, const BoundaryOperator& g,
                                 Index size_cap) {
    const Index m = g.matrix.rows();
    if (m > size_cap) throw std::invalid_argument("boundary block too large");
    return BoundaryExponential{g.indices, expm_dense(theta * g.matrix)};
}

GridFunction apply_boundary_exp(const BoundaryExponential& e,
                                const GridFunction& f) {
    const Index m = static_cast<Index>(e.indices.size());
    if (m == 0) return f;
    for (Index idx : e.indices)
        if (idx < 0 || idx >= f.domain.n)
            throw std::invalid_argument("apply_boundary_exp: index out of domain");
    Vector u(m);
    for (Index i = 0; i < m; ++i) u(i) = f.values(e.indices[i]);
    const Vector v = e.matrix * u;
    Vector out = f.values;
    for (Index i = 0; i < m; ++i) out(e.indices[i]) = v(i);
    return GridFunction(f.domain, std::move(out));
}

}  // namespace oe
