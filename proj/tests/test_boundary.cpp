#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "oe/boundary.hpp"
#include "oe/expm.hpp"
#include "support.hpp"

using namespace oe;

namespace {

Matrix embed(const BoundaryOperator& g, Index n) {
    Matrix full = Matrix::Zero(n, n);
    const Index m = static_cast<Index>(g.indices.size());
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j)
            full(g.indices[i], g.indices[j]) = g.matrix(i, j);
    return full;
}

}  // namespace

TEST_CASE("expm_dense against the independent oracle") {
    for (std::uint32_t trial = 0; trial < 5; ++trial) {
        Matrix a(8, 8);
        for (Index j = 0; j < 8; ++j)
            a.col(j) = test::random_complex(8, 100 * trial + j);
        const Matrix mine = expm_dense(a);
        const Matrix ref = test::expm_reference(a);
        CHECK((mine - ref).norm() <= 1e-12 * ref.norm());
    }
}

TEST_CASE("build_gkl examples") {
    const Stencil lap = Stencil::laplacian();
    const DomainSpec domain(4);

    const BoundaryOperator gd =
        build_gkl(lap, ExtensionSpec::dirichlet(), ExtensionSpec::periodic(), domain);
    REQUIRE(gd.indices == std::vector<Index>{0, 3});
    CHECK(gd.matrix(0, 0) == Complex(-1));
    CHECK(gd.matrix(0, 1) == Complex(-1));
    CHECK(gd.matrix(1, 0) == Complex(-1));
    CHECK(gd.matrix(1, 1) == Complex(-1));

    const BoundaryOperator gn =
        build_gkl(lap, ExtensionSpec::neumann(), ExtensionSpec::periodic(), domain);
    CHECK(gn.matrix(0, 0) == Complex(1));
    CHECK(gn.matrix(0, 1) == Complex(-1));
    CHECK(gn.matrix(1, 0) == Complex(-1));
    CHECK(gn.matrix(1, 1) == Complex(1));

    const BoundaryOperator zero =
        build_gkl(lap, ExtensionSpec::dirichlet(), ExtensionSpec::dirichlet(), domain);
    CHECK(zero.matrix.isZero(0.0));

    // Dirichlet block eigenvalues {0, -2}; Neumann {0, +2}
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ed(gd.matrix.real());
    CHECK(std::abs(ed.eigenvalues()(0) + 2.0) <= 1e-14);
    CHECK(std::abs(ed.eigenvalues()(1)) <= 1e-14);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> en(gn.matrix.real());
    CHECK(std::abs(en.eigenvalues()(0)) <= 1e-14);
    CHECK(std::abs(en.eigenvalues()(1) - 2.0) <= 1e-14);
}

TEST_CASE("embedded block reproduces the dense difference exactly") {
    const Stencil lap = Stencil::laplacian();
    for (Index n : {4, 7, 16}) {
        const DomainSpec domain(n);
        for (const ExtensionSpec& k :
             {ExtensionSpec::dirichlet(), ExtensionSpec::neumann(),
              ExtensionSpec::third_kind({0.3, -0.2}, {-0.7, 0.05})}) {
            const BoundaryOperator g = build_gkl(lap, k, ExtensionSpec::periodic(), domain);
            const Matrix dense = dense_matrix(lap, k, domain) -
                                 dense_matrix(lap, ExtensionSpec::periodic(), domain);
            CHECK(embed(g, n) == dense);  // same arithmetic, no tolerance
        }
    }
}

TEST_CASE("build_gkl rejects pairs that depend on inner points") {
    // periodic ghosts of a depth-2 stencil pull from non-boundary points
    const Stencil deep({{-2, 1.0}, {0, 1.0}});
    CustomExtension k;
    k.ghost_map[-2] = {{0, Complex(1.0)}};
    k.ghost_map[-1] = {{1, Complex(1.0)}};
    CHECK_THROWS_WITH_AS(
        build_gkl(deep, ExtensionSpec::custom(k), ExtensionSpec::periodic(),
                  DomainSpec(6)),
        "extension pair violates boundary-support condition", std::invalid_argument);
}

TEST_CASE("exp_boundary examples") {
    const DomainSpec domain(4);
    const BoundaryOperator g = build_gkl(Stencil::laplacian(), ExtensionSpec::dirichlet(),
                                         ExtensionSpec::periodic(), domain);

    const BoundaryExponential ident = exp_boundary(0.0, g);
    CHECK((ident.matrix - Matrix::Identity(2, 2)).norm() <= 1e-15);

    // closed form exp(t/2 G) = E + (e^{-t} - 1) Q0 at t = 0.5
    const double emt = std::exp(-0.5);
    const BoundaryExponential half = exp_boundary(0.25, g);
    CHECK(std::abs(half.matrix(0, 0) - 0.5 * (1 + emt)) <= 1e-13);
    CHECK(std::abs(half.matrix(0, 1) - 0.5 * (emt - 1)) <= 1e-13);
    CHECK(std::abs(half.matrix(1, 0) - 0.5 * (emt - 1)) <= 1e-13);
    CHECK(std::abs(half.matrix(1, 1) - 0.5 * (1 + emt)) <= 1e-13);

    // skew case: exp(i theta G) of the Hermitian block is unitary
    const BoundaryExponential u = exp_boundary(Complex(0.0, 0.1), g);
    CHECK((u.matrix.adjoint() * u.matrix - Matrix::Identity(2, 2)).norm() <= 1e-13);

    CHECK_THROWS_WITH_AS(exp_boundary(1.0, g, 1), "boundary block too large",
                         std::invalid_argument);
}

TEST_CASE("apply_boundary_exp examples") {
    const DomainSpec domain(4);
    const BoundaryOperator g = build_gkl(Stencil::laplacian(), ExtensionSpec::dirichlet(),
                                         ExtensionSpec::periodic(), domain);
    const GridFunction f(domain, test::random_complex(4, 4));

    const GridFunction same = apply_boundary_exp(exp_boundary(0.0, g), f);
    CHECK((same.values - f.values).norm() <= 1e-15);

    Vector delta = Vector::Zero(4);
    delta(0) = 1.0;
    const GridFunction hit =
        apply_boundary_exp(exp_boundary(0.25, g), GridFunction(domain, delta));
    const double emt = std::exp(-0.5);
    CHECK(std::abs(hit.values(0) - 0.5 * (1 + emt)) <= 1e-13);
    CHECK(std::abs(hit.values(1)) == 0.0);
    CHECK(std::abs(hit.values(2)) == 0.0);
    CHECK(std::abs(hit.values(3) - 0.5 * (emt - 1)) <= 1e-13);

    Vector inner = Vector::Zero(4);
    inner(1) = Complex(2.0, -1.0);
    inner(2) = Complex(0.0, 3.0);
    const GridFunction untouched =
        apply_boundary_exp(exp_boundary(0.7, g), GridFunction(domain, inner));
    CHECK((untouched.values - inner).norm() == 0.0);
}

TEST_CASE("direct-sum structure: embedded exponential equals the dense one") {
    const Stencil lap = Stencil::laplacian();
    std::mt19937 rng(314);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (Index n : {4, 9, 16}) {
        const DomainSpec domain(n);
        for (int trial = 0; trial < 4; ++trial) {
            const ExtensionSpec k = ExtensionSpec::third_kind(
                {coeff(rng), coeff(rng)}, {coeff(rng), coeff(rng)});
            const BoundaryOperator g = build_gkl(lap, k, ExtensionSpec::periodic(), domain);
            const Complex theta(coeff(rng), coeff(rng));
            const Matrix small = exp_boundary(theta, g).matrix;

            Matrix embedded = embed(g, n);
            const Matrix full = test::expm_reference(theta * embedded);
            Matrix expected = Matrix::Identity(n, n);
            const Index m = static_cast<Index>(g.indices.size());
            for (Index i = 0; i < m; ++i)
                for (Index j = 0; j < m; ++j)
                    expected(g.indices[i], g.indices[j]) = small(i, j);
            CHECK((expected - full).norm() <= 1e-11 * full.norm());
        }
    }
}

TEST_CASE("boundary exponential norms") {
    const DomainSpec domain(8);
    const BoundaryOperator gd = build_gkl(Stencil::laplacian(), ExtensionSpec::dirichlet(),
                                          ExtensionSpec::periodic(), domain);
    const BoundaryOperator gn = build_gkl(Stencil::laplacian(), ExtensionSpec::neumann(),
                                          ExtensionSpec::periodic(), domain);
    for (double t : {0.1, 0.5, 2.0, 5.0}) {
        // Dirichlet block is Hermitian with nonpositive eigenvalues
        const Matrix ed = exp_boundary(0.5 * t, gd).matrix;
        Eigen::JacobiSVD<Matrix> svd(ed);
        CHECK(svd.singularValues()(0) <= 1.0 + 1e-12);

        // Neumann block has eigenvalue +2, so the spectral radius is e^t
        const Matrix en = exp_boundary(0.5 * t, gn).matrix;
        Eigen::ComplexEigenSolver<Matrix> eig(en);
        const double radius = eig.eigenvalues().cwiseAbs().maxCoeff();
        CHECK(std::abs(radius - std::exp(t)) <= 1e-11 * std::exp(t));
    }
}
