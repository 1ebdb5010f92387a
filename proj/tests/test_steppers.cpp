#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "oe/analysis.hpp"
#include "oe/steppers.hpp"
#include "support.hpp"

using namespace oe;

TEST_CASE("all steps are the identity at t = 0") {
    const EvolutionProblem p = test::dirichlet_problem(8);
    const GridFunction f(p.domain, test::random_complex(8, 2));
    for (SchemeKind scheme : {SchemeKind::S1, SchemeKind::S2, SchemeKind::Euler,
                              SchemeKind::CrankNicolson, SchemeKind::Exact}) {
        GridFunction out = f;
        switch (scheme) {
            case SchemeKind::S1: out = step_s1(p, 0.0, f); break;
            case SchemeKind::S2: out = step_s2(p, 0.0, f); break;
            case SchemeKind::Euler: out = step_euler(p, 0.0, f); break;
            case SchemeKind::CrankNicolson: out = step_cn(p, 0.0, f); break;
            case SchemeKind::Exact: out = exact_step(p, 0.0, f); break;
        }
        CHECK((out.values - f.values).norm() <= 1e-14);
    }
}

TEST_CASE("s1 one-step error tracks the commutator constant") {
    const EvolutionProblem p = test::dirichlet_problem(16);
    const GridFunction f(p.domain, test::random_unit(16, 8));
    const double t = 1e-3;
    const double err = (step_s1(p, t, f).values - exact_step(p, t, f).values).norm();
    const double constant = commutator_error_constant(p, 1, f);
    CHECK(err / (constant * t * t) == doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("s1 and s2 are exact on odd Dirichlet eigenfunctions") {
    const Index n = 8;
    const EvolutionProblem p = test::dirichlet_problem(n);
    const DirichletEigenpairs pairs = dirichlet_eigenpairs(n);
    const double t = 0.5;
    for (Index j = 1; j < n; j += 2) {
        const GridFunction phi(p.domain, pairs.phi.col(j).cast<Complex>());
        const Vector expected = std::exp(t * pairs.mu(j)) * phi.values;
        CHECK((step_s1(p, t, phi).values - expected).norm() <= 1e-12);
        CHECK((step_s2(p, t, phi).values - expected).norm() <= 1e-12);
    }
}

TEST_CASE("s2 local order is three") {
    const EvolutionProblem p = test::dirichlet_problem(16);
    const GridFunction g(p.domain, test::random_unit(16, 12));
    std::vector<double> ts, errs;
    for (int k = 4; k <= 10; ++k) {
        const double t = std::ldexp(1.0, -k);
        ts.push_back(t);
        errs.push_back((step_s2(p, t, g).values - exact_step(p, t, g).values).norm());
    }
    CHECK(test::loglog_slope(ts, errs) == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("s2 preserves the norm for the Schrodinger problem") {
    const EvolutionProblem p = test::dirichlet_problem(8, Complex(0, 1));
    const GridFunction g(p.domain, test::random_unit(8, 13));
    CHECK(std::abs(step_s2(p, 0.5, g).norm() - 1.0) <= 1e-12);
}

TEST_CASE("euler examples") {
    const Index n = 16;
    const EvolutionProblem p = test::dirichlet_problem(n);
    const DirichletEigenpairs pairs = dirichlet_eigenpairs(n);

    // eigenvector scaling (1 + t mu)
    const double t = 0.3;
    const GridFunction phi(p.domain, pairs.phi.col(2).cast<Complex>());
    const Vector expected = (1.0 + t * pairs.mu(2)) * phi.values;
    CHECK((step_euler(p, t, phi).values - expected).norm() <= 1e-13);

    // local order two with constant ||A^2 g|| / 2
    const GridFunction g(p.domain, test::random_unit(n, 14));
    std::vector<double> ts, errs;
    for (int k = 4; k <= 10; ++k) {
        const double tk = std::ldexp(1.0, -k);
        ts.push_back(tk);
        errs.push_back((step_euler(p, tk, g).values - exact_step(p, tk, g).values).norm());
    }
    CHECK(test::loglog_slope(ts, errs) == doctest::Approx(2.0).epsilon(0.075));
    const Matrix a = dense_matrix(p.stencil, p.ext_k, p.domain);
    const double constant = 0.5 * (a * (a * g.values)).norm();
    CHECK(errs.back() / (ts.back() * ts.back() * constant) ==
          doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("crank-nicolson examples") {
    // n = 2 Dirichlet eigenvector (1,1)/sqrt(2), eigenvalue -2, t = 0.5:
    // scaling (1 - t)/(1 + t) = 1/3
    const EvolutionProblem p2 = test::dirichlet_problem(2);
    Vector v(2);
    v << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
    const GridFunction out = step_cn(p2, 0.5, GridFunction(p2.domain, v));
    CHECK((out.values - v / 3.0).norm() <= 1e-14);

    // unitary for the Schrodinger problem
    const EvolutionProblem ps = test::dirichlet_problem(16, Complex(0, 1));
    const GridFunction g(ps.domain, test::random_unit(16, 15));
    CHECK(std::abs(step_cn(ps, 0.7, g).norm() - 1.0) <= 1e-12);

    // dense path (periodic extension is not tridiagonal)
    const EvolutionProblem pp{Stencil::laplacian(), ExtensionSpec::periodic(),
                              DomainSpec(16), 1.0};
    const double t = 1e-2;
    const double err =
        (step_cn(pp, t, g).values - exact_step(pp, t, g).values).norm();
    CHECK(err <= 1e-4);  // O(t^3) locally
}

TEST_CASE("exact_step examples") {
    const EvolutionProblem p2 = test::dirichlet_problem(2);
    Vector v(2);
    v << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
    const GridFunction decayed = exact_step(p2, 1.0, GridFunction(p2.domain, v));
    CHECK((decayed.values - 0.1353352832366127 * v).norm() <= 1e-14);

    // semigroup property
    const EvolutionProblem p = test::dirichlet_problem(12);
    const GridFunction f(p.domain, test::random_complex(12, 16));
    const GridFunction ab = exact_step(p, 0.4, exact_step(p, 0.35, f));
    const GridFunction once = exact_step(p, 0.75, f);
    CHECK((ab.values - once.values).norm() <= 1e-11);

    // non-symmetric path (complex third-kind parameters) vs the oracle
    const EvolutionProblem pc{Stencil::laplacian(),
                              ExtensionSpec::third_kind({0.0, 0.3}, {-0.7, 0.0}),
                              DomainSpec(10), 1.0};
    const Matrix a = dense_matrix(pc.stencil, pc.ext_k, pc.domain);
    const GridFunction h(pc.domain, test::random_complex(10, 17));
    const Vector ref = test::expm_reference(0.6 * a) * h.values;
    CHECK((exact_step(pc, 0.6, h).values - ref).norm() <= 1e-11 * ref.norm());

    CHECK_THROWS_AS(exact_step(p, 1.0, f, 8), std::invalid_argument);
}

TEST_CASE("evolve examples") {
    const EvolutionProblem p = test::dirichlet_problem(16);
    const GridFunction g(p.domain, test::random_unit(16, 18));

    CHECK((evolve(p, SchemeKind::S2, 0.1, 0, g).values - g.values).norm() == 0.0);

    const GridFunction stepped = evolve(p, SchemeKind::Exact, 0.25, 6, g);
    const GridFunction direct = exact_step(p, 1.5, g);
    CHECK((stepped.values - direct.values).norm() <= 1e-10);

    Index calls = 0;
    double last_time = -1;
    evolve(p, SchemeKind::S1, 0.2, 5, g,
           [&](Index k, double time, const GridFunction& state) {
               ++calls;
               CHECK(time == doctest::Approx(0.2 * static_cast<double>(k)));
               CHECK(state.values.size() == 16);
               last_time = time;
           });
    CHECK(calls == 5);
    CHECK(last_time == doctest::Approx(1.0));
}

TEST_CASE("schrodinger trajectory: s2 error stays below cn error") {
    const Index n = 32;
    const EvolutionProblem p = test::dirichlet_problem(n, Complex(0, 1));
    const GridFunction g(p.domain, test::random_unit(n, 19));
    const ExactPropagator prop(p);
    GridFunction fs2 = g;
    GridFunction fcn = g;
    const double dt = 0.5;
    for (Index k = 1; k <= 50; ++k) {
        fs2 = step_s2(p, dt, fs2);
        fcn = step_cn(p, dt, fcn);
        const GridFunction exact = prop.apply(static_cast<double>(k) * dt, g);
        const double e2 = (fs2.values - exact.values).norm();
        const double ecn = (fcn.values - exact.values).norm();
        CHECK(e2 <= ecn);
    }
}

TEST_CASE("contractivity for the Dirichlet diffusion problem") {
    const EvolutionProblem p = test::dirichlet_problem(32);
    for (double t : {0.1, 1.0, 5.0}) {
        CHECK(step_operator_norm(p, SchemeKind::S1, t) <= 1.0 + 1e-12);
        CHECK(step_operator_norm(p, SchemeKind::S2, t) <= 1.0 + 1e-12);
    }
    // small-t monotonicity on a fixed random vector
    const GridFunction g(p.domain, test::random_unit(32, 20));
    for (double t : {0.01, 0.05, 0.1, 0.5, 1.0}) {
        CHECK(step_s1(p, t, g).norm() <= g.norm() + 1e-12);
        CHECK(step_s2(p, t, g).norm() <= g.norm() + 1e-12);
    }
}

TEST_CASE("unitarity for the Schrodinger problem") {
    const EvolutionProblem p = test::dirichlet_problem(16, Complex(0, 1));
    for (SchemeKind scheme :
         {SchemeKind::S1, SchemeKind::S2, SchemeKind::CrankNicolson}) {
        const Matrix u = dense_step_matrix(p, scheme, 0.5);
        CHECK((u.adjoint() * u - Matrix::Identity(16, 16)).norm() <= 1e-11);
    }
}

TEST_CASE("neumann boundary operator breaks absolute stability") {
    const EvolutionProblem p = test::neumann_problem(64);
    CHECK(step_operator_norm(p, SchemeKind::S1, 0.1) >= 1.0 - 1e-12);
    CHECK(step_operator_norm(p, SchemeKind::S1, 0.5) > 1.0);
    CHECK(step_operator_norm(p, SchemeKind::S1, 1.0) > 1.0);
}

TEST_CASE("global convergence orders over a fixed horizon") {
    const Index n = 16;
    const EvolutionProblem p = test::dirichlet_problem(n);
    const GridFunction g(p.domain, test::random_unit(n, 21));
    const double horizon = 1.0;
    const GridFunction reference = exact_step(p, horizon, g);

    auto global_errors = [&](SchemeKind scheme) {
        std::vector<double> ts, errs;
        for (int k = 2; k <= 6; ++k) {
            const double dt = std::ldexp(1.0, -k);
            const Index steps = static_cast<Index>(std::llround(horizon / dt));
            const GridFunction f = evolve(p, scheme, dt, steps, g);
            ts.push_back(dt);
            errs.push_back((f.values - reference.values).norm());
        }
        return test::loglog_slope(ts, errs);
    };
    CHECK(global_errors(SchemeKind::S1) == doctest::Approx(1.0).epsilon(0.15));
    CHECK(global_errors(SchemeKind::Euler) == doctest::Approx(1.0).epsilon(0.15));
    CHECK(global_errors(SchemeKind::S2) == doctest::Approx(2.0).epsilon(0.075));
    CHECK(global_errors(SchemeKind::CrankNicolson) == doctest::Approx(2.0).epsilon(0.075));
}
