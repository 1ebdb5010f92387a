#pragma once

#include "oe/steppers.hpp"

namespace oe {

/// Closed-form eigenpairs of the Dirichlet difference Laplacian:
/// mu_j = -4 sin^2(pi (j+1) / (2N)),
/// phi_j(k) = sqrt(sigma_j / N) sin(pi (j+1) (k + 1/2) / N),
/// sigma_j = 2 except sigma_{N-1} = 1. Columns of phi are orthonormal.
struct DirichletEigenpairs {
    Eigen::VectorXd mu;
    Eigen::MatrixXd phi;
};

DirichletEigenpairs dirichlet_eigenpairs(Index n);

/// ||scheme_step(t, g) - exact_step(t, g)||.
double one_step_error(const EvolutionProblem& p, SchemeKind scheme, double t,
                      const GridFunction& g);

/// Closed-form leading one-step error of the OE schemes on the Dirichlet
/// eigenfunction phi_j (zero for odd j):
///   order 1:  t^2 / sqrt(2N) * sqrt(-sigma_j mu_j (1 + (3+mu_j)^2))
///   order 2:  t^3 / 12 * sqrt(2 sigma_j (-mu_j) / N)
///             * sqrt(1 + 4 (3+mu_j)^2 + (mu_j^2 + 5 mu_j + 7)^2)
double leading_error_oe(int order, Index j, double t, Index n);

/// Commutator form of the leading error constant for arbitrary g:
///   order 1:  1/2  ||[A_K, G] g||
///   order 2:  1/12 ||([A_K, [A_K, G]] - 1/2 [G, [A_K, G]]) g||
double commutator_error_constant(const EvolutionProblem& p, int order,
                                 const GridFunction& g);

/// Solve the dispersion equation for the M = n/2 even-index eigenvalue
/// exponents of S2(t) for the Dirichlet Laplacian:
///   1 = (1 - e^{2t})/M [ 1/(1 - e^{-t xi})
///       + 1/2 sum_{j=1}^{M-1} (4 + nu_j)/(1 - e^{t(nu_j - xi)}) ],
/// one root per interval between consecutive nu values (the root of the
/// last interval may lie slightly below -4 and is then bracketed by
/// leftward expansion). Throws std::runtime_error ("bracket failure ...")
/// when a pole-bounded interval shows no sign change. Intervals are
/// independent; jobs > 1 splits them across threads with output ordering
/// fixed by interval index.
std::vector<double> dispersion_solve(double t, Index n, int jobs = 1);

/// Tan-form dispersion roots for the Schrodinger step operator; each root
/// is validated against the phase of the matching dense eigenvalue of the
/// unitary S2 matrix to 1e-6. Throws std::runtime_error ("degenerate t")
/// when tan t blows up or pole copies would intrude into the brackets.
std::vector<double> dispersion_solve_schrodinger(double t, Index n);

/// Per even-index Dirichlet eigenvalue mu_{2j}, j = 0..n/2-1, the
/// Crank-Nicolson dispersion error |ln((1 + t mu/2)/(1 - t mu/2))/t - mu|.
std::vector<double> cn_dispersion_error(double t, Index n);

/// Row j pairs the even eigenvalue exponent xi_j (approximating mu_{2j})
/// with the CN baseline, and flags whether the odd eigenvalue
/// exp(t nu_{j+1}) matches the dense spectrum to 1e-10.
struct SpectrumRow {
    Index j;
    double xi;
    double mu_even;
    double oe_error;
    double cn_error;
    bool odd_exact;
};

struct SpectrumReport {
    std::vector<SpectrumRow> rows;
};

/// Dispersion roots plus the dense-oracle gate: the multiset
/// {exp(t xi_j)} u {exp(t nu_j)} must match the dense S2 spectrum to
/// gate_tol or the call throws.
SpectrumReport spectrum_report(double t, Index n, double gate_tol = 1e-8,
                               int jobs = 1);

}  // namespace oe
