#pragma once

#include <functional>

#include "oe/boundary.hpp"
#include "oe/lattice.hpp"
#include "oe/spectral.hpp"

namespace oe {

/// Evolution problem df/dt = A_K f with A_K = equation_scale * (stencil
/// expanded with ext_k). equation_scale is 1 for diffusion-type problems
/// and i for Schrodinger-type ones. The splitting reference extension is
/// always periodic.
struct EvolutionProblem {
    Stencil stencil;
    ExtensionSpec ext_k;
    DomainSpec domain;
    Complex equation_scale = 1.0;
};

enum class SchemeKind { S1, S2, Euler, CrankNicolson, Exact };

/// S1(t) f = exp(t A_L) exp(t G_KL) f.
GridFunction step_s1(const EvolutionProblem& p, double t, const GridFunction& f);

/// S2(t) f = exp(t/2 G_KL) exp(t A_L) exp(t/2 G_KL) f.
GridFunction step_s2(const EvolutionProblem& p, double t, const GridFunction& f);

/// Euler step f + t A_K f.
GridFunction step_euler(const EvolutionProblem& p, double t, const GridFunction& f);

/// Crank-Nicolson step: solve (E - t/2 A_K) h = (E + t/2 A_K) f. Uses the
/// Thomas sweep when A_K is tridiagonal (third-kind extension, offsets
/// within one), dense LU otherwise. Throws std::runtime_error
/// ("CN resolvent singular at this t") when the solve fails the residual
/// acceptance ||(E - t/2 A_K) h - rhs|| <= 1e-10 ||f||.
GridFunction step_cn(const EvolutionProblem& p, double t, const GridFunction& f);

/// exp(t A_K) f via dense eigendecomposition when the unscaled operator is
/// real symmetric, scaling-and-squaring otherwise. The oracle for all error
/// functionals. Throws std::invalid_argument when n exceeds dense_cap.
GridFunction exact_step(const EvolutionProblem& p, double t, const GridFunction& f,
                        Index dense_cap = 4096);

using Observer = std::function<void(Index step, double time, const GridFunction&)>;

/// Apply the chosen one-step operator `steps` times, invoking the observer
/// after each step with (step index, elapsed time, state).
GridFunction evolve(const EvolutionProblem& p, SchemeKind scheme, double dt,
                    Index steps, const GridFunction& g,
                    const Observer& observer = {});

/// Dense matrix of the one-step operator (columns are the step applied to
/// basis vectors). Intended for stability and spectrum analysis at small n.
Matrix dense_step_matrix(const EvolutionProblem& p, SchemeKind scheme, double t);

/// Largest singular value of the dense step matrix.
double step_operator_norm(const EvolutionProblem& p, SchemeKind scheme, double t);

/// Exact propagator with cached eigendecomposition (real-symmetric unscaled
/// operator) or cached dense matrix; evaluates exp(t A_K) g for arbitrary t.
class ExactPropagator {
public:
    ExactPropagator(const EvolutionProblem& p, Index dense_cap = 4096);
    GridFunction apply(double t, const GridFunction& g) const;

private:
    Complex scale_;
    bool symmetric_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
    Matrix dense_;  // unscaled operator, general path
};

}  // namespace oe
