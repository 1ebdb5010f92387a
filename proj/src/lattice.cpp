#include "oe/lattice.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace oe {

DomainSpec::DomainSpec(Index n) : n(n) {
    if (n < 2) throw std::invalid_argument("DomainSpec: n must be >= 2");
}

GridFunction::GridFunction(DomainSpec domain, Vector values)
    : domain(domain), values(std::move(values)) {
    if (this->values.size() != domain.n)
        throw std::invalid_argument("GridFunction: length mismatch");
    if (!this->values.allFinite())
        throw std::invalid_argument("GridFunction: values not finite");
}

Stencil::Stencil(std::vector<Tap> taps) : taps_(std::move(taps)) {
    if (taps_.empty()) throw std::invalid_argument("Stencil: no taps");
    std::set<std::int64_t> seen;
    for (const Tap& tap : taps_)
        if (!seen.insert(tap.offset).second)
            throw std::invalid_argument("Stencil: duplicate offset");
    min_offset_ = *seen.begin();
    max_offset_ = *seen.rbegin();
}

Stencil Stencil::laplacian() {
    return Stencil({{-1, 1.0}, {0, -2.0}, {+1, 1.0}});
}

Stencil Stencil::scaled(Complex c) const {
    std::vector<Tap> taps = taps_;
    for (Tap& tap : taps) tap.coeff *= c;
    return Stencil(std::move(taps));
}

std::int64_t Stencil::reach() const {
    return std::max(std::abs(min_offset_), std::abs(max_offset_));
}

BoundarySets classify_boundary(const Stencil& stencil, const DomainSpec& domain) {
    const Index n = domain.n;
    if (stencil.reach() >= n)
        throw std::invalid_argument("stencil wider than domain");

    BoundarySets sets;
    std::set<std::int64_t> ghost;
    for (Index x = 0; x < n; ++x) {
        bool is_boundary = false;
        for (const Stencil::Tap& tap : stencil.taps()) {
            const std::int64_t y = x + tap.offset;
            if (y < 0 || y >= n) is_boundary = true;
        }
        if (is_boundary) {
            sets.boundary.push_back(x);
            for (const Stencil::Tap& tap : stencil.taps()) {
                const std::int64_t y = x + tap.offset;
                if (y < 0 || y >= n) ghost.insert(y);
            }
        } else {
            sets.inner.push_back(x);
        }
    }
    sets.ghost.assign(ghost.begin(), ghost.end());
    return sets;
}

namespace {

// Euclidean mod into [0, n).
Index wrap(std::int64_t y, Index n) {
    std::int64_t m = y % n;
    if (m < 0) m += n;
    return static_cast<Index>(m);
}

Complex ghost_value(const ExtensionSpec& ext, std::int64_t g, const Vector& f) {
    const Index n = f.size();
    if (std::holds_alternative<Periodic>(ext.variant())) {
        return f(wrap(g, n));
    }
    if (const ThirdKind* tk = std::get_if<ThirdKind>(&ext.variant())) {
        if (g == -1) return tk->alpha * f(0);
        if (g == n) return tk->beta * f(n - 1);
        throw std::invalid_argument("extension incomplete");
    }
    const CustomExtension& cm = std::get<CustomExtension>(ext.variant());
    auto it = cm.ghost_map.find(g);
    if (it == cm.ghost_map.end())
        throw std::invalid_argument("extension incomplete");
    Complex value = 0.0;
    for (const auto& [idx, w] : it->second) value += w * f(idx);
    return value;
}

// Custom extensions may only reference boundary points ("additional
// condition": extensions depend only on boundary-point values).
void validate_custom(const ExtensionSpec& ext, const Stencil& stencil,
                     const DomainSpec& domain) {
    const CustomExtension* cm = std::get_if<CustomExtension>(&ext.variant());
    if (!cm) return;
    const BoundarySets sets = classify_boundary(stencil, domain);
    for (const auto& [g, terms] : cm->ghost_map) {
        for (const auto& [idx, w] : terms) {
            if (idx < 0 || idx >= domain.n)
                throw std::invalid_argument("extension incomplete");
            if (!std::binary_search(sets.boundary.begin(), sets.boundary.end(), idx))
                throw std::invalid_argument(
                    "custom extension references a non-boundary point");
        }
    }
}

}  // namespace

GridFunction apply_extended(const Stencil& stencil, const ExtensionSpec& ext,
                            const GridFunction& f) {
    const Index n = f.domain.n;
    if (stencil.reach() >= n)
        throw std::invalid_argument("stencil wider than domain");
    validate_custom(ext, stencil, f.domain);

    Vector out(n);
    for (Index x = 0; x < n; ++x) {
        Complex acc = 0.0;
        for (const Stencil::Tap& tap : stencil.taps()) {
            const std::int64_t y = x + tap.offset;
            const Complex fy = (y >= 0 && y < n) ? f.values(y)
                                                 : ghost_value(ext, y, f.values);
            acc += tap.coeff * fy;
        }
        out(x) = acc;
    }
    return GridFunction(f.domain, std::move(out));
}

Matrix dense_matrix(const Stencil& stencil, const ExtensionSpec& ext,
                    const DomainSpec& domain) {
    const Index n = domain.n;
    Matrix a(n, n);
    Vector basis = Vector::Zero(n);
    for (Index j = 0; j < n; ++j) {
        basis(j) = 1.0;
        a.col(j) = apply_extended(stencil, ext, GridFunction(domain, basis)).values;
        basis(j) = 0.0;
    }
    return a;
}

}  // namespace oe
