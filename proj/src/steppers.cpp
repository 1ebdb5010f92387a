#include "oe/steppers.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "oe/expm.hpp"

namespace oe {

namespace {

struct SplitPieces {
    BoundaryExponential half;
    BoundaryExponential full;
    PeriodicSymbol symbol;  // scaled by equation_scale
};

SplitPieces make_split_pieces(const EvolutionProblem& p, double t) {
    const BoundaryOperator g =
        build_gkl(p.stencil, p.ext_k, ExtensionSpec::periodic(), p.domain);
    return SplitPieces{
        exp_boundary(0.5 * t * p.equation_scale, g),
        exp_boundary(t * p.equation_scale, g),
        periodic_symbol(p.stencil.scaled(p.equation_scale), p.domain)};
}

GridFunction apply_s1(const SplitPieces& pieces, double t, const GridFunction& f) {
    return exp_periodic(t, pieces.symbol, apply_boundary_exp(pieces.full, f));
}

GridFunction apply_s2(const SplitPieces& pieces, double t, const GridFunction& f) {
    return apply_boundary_exp(
        pieces.half, exp_periodic(t, pieces.symbol, apply_boundary_exp(pieces.half, f)));
}

GridFunction apply_operator(const EvolutionProblem& p, const GridFunction& f) {
    GridFunction af = apply_extended(p.stencil, p.ext_k, f);
    af.values *= p.equation_scale;
    return af;
}

bool tridiagonal_third_kind(const EvolutionProblem& p) {
    if (!std::holds_alternative<ThirdKind>(p.ext_k.variant())) return false;
    return p.stencil.reach() <= 1;
}

// Thomas sweep for (I - theta A) h = rhs with A tridiagonal from a
// third-kind extension. Returns false on a vanishing pivot.
bool thomas_solve(const EvolutionProblem& p, Complex theta, const Vector& rhs,
                  Vector& h) {
    const Index n = p.domain.n;
    const ThirdKind tk = std::get<ThirdKind>(p.ext_k.variant());
    Complex cm = 0.0, c0 = 0.0, cp = 0.0;
    for (const Stencil::Tap& tap : p.stencil.taps()) {
        if (tap.offset == -1) cm = tap.coeff;
        if (tap.offset == 0) c0 = tap.coeff;
        if (tap.offset == +1) cp = tap.coeff;
    }
    Vector diag = Vector::Constant(n, 1.0 - theta * c0);
    diag(0) = 1.0 - theta * (c0 + cm * tk.alpha);
    diag(n - 1) = 1.0 - theta * (c0 + cp * tk.beta);
    const Complex lower = -theta * cm;
    const Complex upper = -theta * cp;

    Vector cprime(n), dprime(n);
    if (diag(0) == 0.0) return false;
    cprime(0) = upper / diag(0);
    dprime(0) = rhs(0) / diag(0);
    for (Index i = 1; i < n; ++i) {
        const Complex denom = diag(i) - lower * cprime(i - 1);
        if (denom == 0.0) return false;
        cprime(i) = upper / denom;
        dprime(i) = (rhs(i) - lower * dprime(i - 1)) / denom;
    }
    h.resize(n);
    h(n - 1) = dprime(n - 1);
    for (Index i = n - 2; i >= 0; --i) h(i) = dprime(i) - cprime(i) * h(i + 1);
    return h.allFinite();
}

}  // namespace

GridFunction step_s1(const EvolutionProblem& p, double t, const GridFunction& f) {
    return apply_s1(make_split_pieces(p, t), t, f);
}

GridFunction step_s2(const EvolutionProblem& p, double t, const GridFunction& f) {
    return apply_s2(make_split_pieces(p, t), t, f);
}

GridFunction step_euler(const EvolutionProblem& p, double t, const GridFunction& f) {
    GridFunction af = apply_operator(p, f);
    return GridFunction(f.domain, f.values + t * af.values);
}

GridFunction step_cn(const EvolutionProblem& p, double t, const GridFunction& f) {
    const Complex theta = 0.5 * t * p.equation_scale;
    const GridFunction af = apply_operator(p, f);
    const Vector rhs = f.values + 0.5 * t * af.values;

    auto residual_of = [&](const Vector& h) {
        const GridFunction ah = apply_operator(p, GridFunction(f.domain, h));
        return (h - 0.5 * t * ah.values - rhs).norm();
    };
    auto dense_solve = [&]() {
        const Matrix a = dense_matrix(p.stencil, p.ext_k, p.domain);
        const Matrix lhs = Matrix::Identity(p.domain.n, p.domain.n) - theta * a;
        return Eigen::PartialPivLU<Matrix>(lhs).solve(rhs).eval();
    };
    const double accept = 1e-10 * std::max(1e-300, f.norm());

    Vector h;
    if (tridiagonal_third_kind(p)) {
        if (thomas_solve(p, theta, rhs, h) && residual_of(h) <= accept)
            return GridFunction(f.domain, std::move(h));
    }
    h = dense_solve();
    if (!h.allFinite() || residual_of(h) > accept)
        throw std::runtime_error("CN resolvent singular at this t");
    return GridFunction(f.domain, std::move(h));
}

ExactPropagator::ExactPropagator(const EvolutionProblem& p, Index dense_cap)
    : scale_(p.equation_scale) {
    const Index n = p.domain.n;
    if (n > dense_cap)
        throw std::invalid_argument("exact_step: dense cap exceeded");
    const Matrix a = dense_matrix(p.stencil, p.ext_k, p.domain);

    symmetric_ = true;
    for (Index i = 0; i < n && symmetric_; ++i)
        for (Index j = 0; j < n; ++j)
            if (a(i, j).imag() != 0.0 || a(i, j).real() != a(j, i).real()) {
                symmetric_ = false;
                break;
            }

    if (symmetric_) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.real());
        eigenvalues_ = solver.eigenvalues();
        eigenvectors_ = solver.eigenvectors();
    } else {
        dense_ = a;
    }
}

GridFunction ExactPropagator::apply(double t, const GridFunction& g) const {
    if (symmetric_) {
        const Eigen::VectorXd cre = eigenvectors_.transpose() * g.values.real();
        const Eigen::VectorXd cim = eigenvectors_.transpose() * g.values.imag();
        Vector c(cre.size());
        for (Index j = 0; j < c.size(); ++j)
            c(j) = std::exp(t * scale_ * eigenvalues_(j)) * Complex(cre(j), cim(j));
        const Eigen::VectorXd outre = eigenvectors_ * c.real();
        const Eigen::VectorXd outim = eigenvectors_ * c.imag();
        Vector out(outre.size());
        out.real() = outre;
        out.imag() = outim;
        return GridFunction(g.domain, std::move(out));
    }
    const Matrix s = expm_dense(t * scale_ * dense_);
    return GridFunction(g.domain, s * g.values);
}

GridFunction exact_step(const EvolutionProblem& p, double t, const GridFunction& f,
                        Index dense_cap) {
    return ExactPropagator(p, dense_cap).apply(t, f);
}

GridFunction evolve(const EvolutionProblem& p, SchemeKind scheme, double dt,
                    Index steps, const GridFunction& g, const Observer& observer) {
    if (steps < 0) throw std::invalid_argument("evolve: steps must be >= 0");

    if (scheme == SchemeKind::S1 || scheme == SchemeKind::S2) {
        const SplitPieces pieces = make_split_pieces(p, dt);
        GridFunction f = g;
        for (Index k = 1; k <= steps; ++k) {
            f = (scheme == SchemeKind::S1) ? apply_s1(pieces, dt, f)
                                           : apply_s2(pieces, dt, f);
            if (observer) observer(k, static_cast<double>(k) * dt, f);
        }
        return f;
    }
    if (scheme == SchemeKind::Exact) {
        const ExactPropagator prop(p);
        GridFunction f = g;
        for (Index k = 1; k <= steps; ++k) {
            f = prop.apply(static_cast<double>(k) * dt, g);
            if (observer) observer(k, static_cast<double>(k) * dt, f);
        }
        return f;
    }
    GridFunction f = g;
    for (Index k = 1; k <= steps; ++k) {
        f = (scheme == SchemeKind::Euler) ? step_euler(p, dt, f) : step_cn(p, dt, f);
        if (observer) observer(k, static_cast<double>(k) * dt, f);
    }
    return f;
}

Matrix dense_step_matrix(const EvolutionProblem& p, SchemeKind scheme, double t) {
    const Index n = p.domain.n;
    Matrix s(n, n);
    Vector basis = Vector::Zero(n);

    if (scheme == SchemeKind::S1 || scheme == SchemeKind::S2) {
        const SplitPieces pieces = make_split_pieces(p, t);
        for (Index j = 0; j < n; ++j) {
            basis(j) = 1.0;
            const GridFunction e(p.domain, basis);
            s.col(j) = (scheme == SchemeKind::S1 ? apply_s1(pieces, t, e)
                                                 : apply_s2(pieces, t, e))
                           .values;
            basis(j) = 0.0;
        }
        return s;
    }
    if (scheme == SchemeKind::Exact) {
        const ExactPropagator prop(p);
        for (Index j = 0; j < n; ++j) {
            basis(j) = 1.0;
            s.col(j) = prop.apply(t, GridFunction(p.domain, basis)).values;
            basis(j) = 0.0;
        }
        return s;
    }
    for (Index j = 0; j < n; ++j) {
        basis(j) = 1.0;
        const GridFunction e(p.domain, basis);
        s.col(j) = (scheme == SchemeKind::Euler ? step_euler(p, t, e)
                                                : step_cn(p, t, e))
                       .values;
        basis(j) = 0.0;
    }
    return s;
}

double step_operator_norm(const EvolutionProblem& p, SchemeKind scheme, double t) {
    const Matrix s = dense_step_matrix(p, scheme, t);
    Eigen::JacobiSVD<Matrix> svd(s);
    return svd.singularValues()(0);
}

}  // namespace oe
