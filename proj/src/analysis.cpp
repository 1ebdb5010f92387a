#include "oe/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>
#include <stdexcept>

namespace oe {

DirichletEigenpairs dirichlet_eigenpairs(Index n) {
    if (n < 2) throw std::invalid_argument("dirichlet_eigenpairs: n must be >= 2");
    DirichletEigenpairs out;
    out.mu.resize(n);
    out.phi.resize(n, n);
    const double nn = static_cast<double>(n);
    for (Index j = 0; j < n; ++j) {
        const double arg = std::numbers::pi * static_cast<double>(j + 1) / (2.0 * nn);
        const double s = std::sin(arg);
        out.mu(j) = -4.0 * s * s;
        const double sigma = (j == n - 1) ? 1.0 : 2.0;
        const double amp = std::sqrt(sigma / nn);
        for (Index k = 0; k < n; ++k)
            out.phi(k, j) = amp * std::sin(std::numbers::pi * static_cast<double>(j + 1) *
                                           (static_cast<double>(k) + 0.5) / nn);
    }
    return out;
}

double one_step_error(const EvolutionProblem& p, SchemeKind scheme, double t,
                      const GridFunction& g) {
    const GridFunction exact = exact_step(p, t, g);
    GridFunction approx = g;
    switch (scheme) {
        case SchemeKind::S1: approx = step_s1(p, t, g); break;
        case SchemeKind::S2: approx = step_s2(p, t, g); break;
        case SchemeKind::Euler: approx = step_euler(p, t, g); break;
        case SchemeKind::CrankNicolson: approx = step_cn(p, t, g); break;
        case SchemeKind::Exact: approx = exact; break;
    }
    return (approx.values - exact.values).norm();
}

double leading_error_oe(int order, Index j, double t, Index n) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("leading_error_oe: order must be 1 or 2");
    if (j < 0 || j >= n) throw std::invalid_argument("leading_error_oe: j out of range");
    if (j % 2 == 1) return 0.0;

    const double nn = static_cast<double>(n);
    const double arg = std::numbers::pi * static_cast<double>(j + 1) / (2.0 * nn);
    const double s = std::sin(arg);
    const double mu = -4.0 * s * s;
    const double sigma = (j == n - 1) ? 1.0 : 2.0;
    const double c = 3.0 + mu;
    if (order == 1)
        return t * t / std::sqrt(2.0 * nn) * std::sqrt(-sigma * mu * (1.0 + c * c));
    const double d = mu * mu + 5.0 * mu + 7.0;
    return t * t * t / 12.0 * std::sqrt(2.0 * sigma * (-mu) / nn) *
           std::sqrt(1.0 + 4.0 * c * c + d * d);
}

double commutator_error_constant(const EvolutionProblem& p, int order,
                                 const GridFunction& g) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("commutator_error_constant: order must be 1 or 2");
    const Index n = p.domain.n;
    const Matrix ak =
        p.equation_scale * dense_matrix(p.stencil, p.ext_k, p.domain);
    const Matrix al =
        p.equation_scale * dense_matrix(p.stencil, ExtensionSpec::periodic(), p.domain);
    const Matrix gkl = ak - al;

    const Matrix c0 = ak * gkl - gkl * ak;
    if (order == 1) return 0.5 * (c0 * g.values).norm();
    const Matrix c1 = ak * c0 - c0 * ak;
    const Matrix c2 = gkl * c0 - c0 * gkl;
    return ((c1 - 0.5 * c2) * g.values).norm() / 12.0;
}

namespace {

Eigen::VectorXd nu_values(Index n) {
    const Index m = n / 2;
    Eigen::VectorXd nu(m + 1);
    for (Index j = 0; j <= m; ++j) {
        const double s = std::sin(std::numbers::pi * static_cast<double>(j) /
                                  static_cast<double>(n));
        nu(j) = -4.0 * s * s;
    }
    return nu;
}

// F(xi) = 1 - RHS(xi) of the secular equation; its zeros are the even
// eigenvalue exponents.
double secular_real(double xi, double t, const Eigen::VectorXd& nu, Index m) {
    double s = 1.0 / (1.0 - std::exp(-t * xi));
    for (Index j = 1; j < m; ++j)
        s += 0.5 * (4.0 + nu(j)) / (1.0 - std::exp(t * (nu(j) - xi)));
    return 1.0 - (1.0 - std::exp(2.0 * t)) / static_cast<double>(m) * s;
}

double secular_tan(double xi, double t, const Eigen::VectorXd& nu, Index m) {
    double s = -1.0 / std::tan(0.5 * t * xi);
    for (Index j = 1; j < m; ++j)
        s += 0.5 * (4.0 + nu(j)) / std::tan(0.5 * t * (nu(j) - xi));
    return 1.0 - std::tan(t) / static_cast<double>(m) * s;
}

template <typename F>
double bisect_root(const F& f, double lo, double hi) {
    double flo = f(lo);
    double fhi = f(hi);
    if (std::isnan(flo) || std::isnan(fhi) || (flo < 0) == (fhi < 0)) {
        std::ostringstream msg;
        msg << "bracket failure in interval [" << lo << ", " << hi << "]";
        throw std::runtime_error(msg.str());
    }
    // fixed-width bisection, then refine until the residual passes or the
    // bracket collapses to adjacent doubles
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (std::abs(fm) <= 1e-10) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
}

template <typename F>
double solve_one_interval(const F& f, const Eigen::VectorXd& nu, Index m, Index j) {
    const double hi_end = nu(j);
    const double lo_end = nu(j + 1);
    const double width = hi_end - lo_end;
    const double delta = std::max(1e-12 * width, 1e-13);
    const double lo = lo_end + delta;
    const double hi = hi_end - delta;
    const bool lo_is_pole = (j + 1 < m);
    if (!lo_is_pole && (f(lo) < 0) == (f(hi) < 0)) {
        // nu_m = -4 is not a pole; the root can sit below it. Expand
        // leftward until the sign changes.
        double lo2 = lo_end - width;
        double w = width;
        int guard = 0;
        while ((f(lo2) < 0) == (f(hi) < 0) && ++guard < 60) {
            w *= 2.0;
            lo2 -= w;
        }
        return bisect_root(f, lo2, hi);
    }
    return bisect_root(f, lo, hi);
}

template <typename F>
std::vector<double> solve_intervals(const F& f, const Eigen::VectorXd& nu, Index m,
                                    int jobs) {
    std::vector<double> roots(m);
    if (jobs <= 1 || m < 2 * jobs) {
        for (Index j = 0; j < m; ++j) roots[j] = solve_one_interval(f, nu, m, j);
        return roots;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(jobs);
    const Index chunk = (m + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
        const Index begin = w * chunk;
        const Index end = std::min(m, begin + chunk);
        workers.emplace_back([&, begin, end, w]() {
            try {
                for (Index j = begin; j < end; ++j)
                    roots[j] = solve_one_interval(f, nu, m, j);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (std::thread& th : workers) th.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
    return roots;
}

}  // namespace

std::vector<double> dispersion_solve(double t, Index n, int jobs) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("dispersion_solve: n must be even and >= 2");
    if (!(t > 0)) throw std::invalid_argument("dispersion_solve: t must be > 0");
    const Index m = n / 2;
    const Eigen::VectorXd nu = nu_values(n);
    auto f = [&](double xi) { return secular_real(xi, t, nu, m); };
    return solve_intervals(f, nu, m, jobs);
}

std::vector<double> dispersion_solve_schrodinger(double t, Index n) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("dispersion_solve_schrodinger: n must be even");
    if (!(t > 0)) throw std::invalid_argument("dispersion_solve_schrodinger: t must be > 0");
    // the bracketing below assumes only the k = 0 tan poles fall in [-4, 0]
    if (std::abs(std::cos(t)) < 1e-8 || 2.0 * std::numbers::pi / t <= 4.5)
        throw std::runtime_error("degenerate t");

    const Index m = n / 2;
    const Eigen::VectorXd nu = nu_values(n);
    auto f = [&](double xi) { return secular_tan(xi, t, nu, m); };
    std::vector<double> roots = solve_intervals(f, nu, m, 1);

    // validate each root phase against the dense unitary spectrum
    const EvolutionProblem p{Stencil::laplacian(), ExtensionSpec::dirichlet(),
                             DomainSpec(n), Complex(0.0, 1.0)};
    const Matrix s2 = dense_step_matrix(p, SchemeKind::S2, t);
    Eigen::ComplexEigenSolver<Matrix> solver(s2);
    std::vector<Complex> dense(solver.eigenvalues().data(),
                               solver.eigenvalues().data() + n);
    std::vector<Complex> mine;
    mine.reserve(n);
    for (double xi : roots) mine.push_back(std::exp(Complex(0.0, t * xi)));
    for (Index j = 1; j <= m; ++j) mine.push_back(std::exp(Complex(0.0, t * nu(j))));
    for (const Complex& z : mine) {
        auto best = std::min_element(dense.begin(), dense.end(),
                                     [&](const Complex& a, const Complex& b) {
                                         return std::abs(a - z) < std::abs(b - z);
                                     });
        if (std::abs(*best - z) > 1e-6)
            throw std::runtime_error(
                "dispersion_solve_schrodinger: dense-spectrum validation failed");
        dense.erase(best);
    }
    return roots;
}

std::vector<double> cn_dispersion_error(double t, Index n) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("cn_dispersion_error: n must be even and >= 2");
    const Index m = n / 2;
    std::vector<double> out(m);
    for (Index j = 0; j < m; ++j) {
        const double arg = std::numbers::pi * static_cast<double>(2 * j + 1) /
                           (2.0 * static_cast<double>(n));
        const double s = std::sin(arg);
        const double mu = -4.0 * s * s;
        const double num = 1.0 + 0.5 * t * mu;
        const double den = 1.0 - 0.5 * t * mu;
        if (!(num > 0.0) || !(den > 0.0))
            throw std::runtime_error("cn_dispersion_error: log argument nonpositive");
        out[j] = std::abs(std::log(num / den) / t - mu);
    }
    return out;
}

SpectrumReport spectrum_report(double t, Index n, double gate_tol, int jobs) {
    const std::vector<double> xi = dispersion_solve(t, n, jobs);
    const std::vector<double> cn = cn_dispersion_error(t, n);
    const Index m = n / 2;
    const Eigen::VectorXd nu = nu_values(n);

    const EvolutionProblem p{Stencil::laplacian(), ExtensionSpec::dirichlet(),
                             DomainSpec(n), 1.0};
    Matrix s2 = dense_step_matrix(p, SchemeKind::S2, t);
    s2 = 0.5 * (s2 + s2.transpose()).eval();  // symmetric up to roundoff
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s2.real());
    Eigen::VectorXd dense = solver.eigenvalues();  // ascending

    std::vector<double> mine;
    mine.reserve(n);
    for (double x : xi) mine.push_back(std::exp(t * x));
    for (Index j = 1; j <= m; ++j) mine.push_back(std::exp(t * nu(j)));
    std::sort(mine.begin(), mine.end());
    double mismatch = 0.0;
    for (Index i = 0; i < n; ++i)
        mismatch = std::max(mismatch, std::abs(mine[i] - dense(i)));
    if (mismatch > gate_tol) {
        std::ostringstream msg;
        msg << "spectrum oracle gate failed: multiset mismatch " << mismatch;
        throw std::runtime_error(msg.str());
    }

    SpectrumReport report;
    report.rows.reserve(m);
    for (Index j = 0; j < m; ++j) {
        const double arg = std::numbers::pi * static_cast<double>(2 * j + 1) /
                           (2.0 * static_cast<double>(n));
        const double s = std::sin(arg);
        const double mu2j = -4.0 * s * s;
        const double lam_odd = std::exp(t * nu(j + 1));
        auto pos = std::lower_bound(dense.data(), dense.data() + n, lam_odd - 1e-10);
        bool odd_exact = false;
        for (const double* q = pos; q < dense.data() + n && *q <= lam_odd + 1e-10; ++q)
            if (std::abs(*q - lam_odd) <= 1e-10) odd_exact = true;
        report.rows.push_back(SpectrumRow{j, xi[j], mu2j, std::abs(xi[j] - mu2j),
                                          cn[j], odd_exact});
    }
    return report;
}

}  // namespace oe
