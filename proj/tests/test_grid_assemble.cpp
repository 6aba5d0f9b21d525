#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncsphere/assemble.hpp"
#include "ncsphere/dirac_ops.hpp"

using namespace ncs;

namespace {
constexpr double pi = 3.14159265358979323846;

double derivative_error(const Grid1D& g) {
    Eigen::VectorXd f(g.nodes.size()), df(g.nodes.size());
    for (int i = 0; i < g.nodes.size(); ++i) {
        f(i) = std::sin(2.0 * g.nodes(i));
        df(i) = 2.0 * std::cos(2.0 * g.nodes(i));
    }
    return (g.d1 * f - df).cwiseAbs().maxCoeff();
}
}  // namespace

TEST_CASE("uniform differentiation is second-order accurate") {
    double e1 = derivative_error(make_uniform_grid(16, 0.0, pi / 2));
    double e2 = derivative_error(make_uniform_grid(32, 0.0, pi / 2));
    // halving h through n: 16 -> 32 shrinks h by 17/33
    double expected_ratio = std::pow(33.0 / 17.0, 2);
    CHECK(e1 / e2 > 0.8 * expected_ratio);
}

TEST_CASE("chebyshev differentiation is spectrally accurate") {
    CHECK(derivative_error(make_chebyshev_grid(24, 0.0, pi / 2)) < 1e-12);
}

TEST_CASE("second derivative matrices") {
    for (Grid1D g : {make_uniform_grid(64, 0.0, pi / 2), make_chebyshev_grid(24, 0.0, pi / 2)}) {
        Eigen::VectorXd f(g.nodes.size()), d2f(g.nodes.size());
        for (int i = 0; i < g.nodes.size(); ++i) {
            f(i) = std::sin(2.0 * g.nodes(i));
            d2f(i) = -4.0 * std::sin(2.0 * g.nodes(i));
        }
        CHECK((g.d2 * f - d2f).cwiseAbs().maxCoeff() < 0.02);
    }
}

TEST_CASE("quadrature weights integrate smooth functions") {
    // int_0^{pi/2} sin^2(2x) dx = pi/4
    for (Grid1D g : {make_uniform_grid(200, 0.0, pi / 2), make_chebyshev_grid(24, 0.0, pi / 2)}) {
        double s = 0.0;
        for (int i = 0; i < g.nodes.size(); ++i)
            s += g.qweights(i) * std::pow(std::sin(2.0 * g.nodes(i)), 2);
        CHECK(s == doctest::Approx(pi / 4).epsilon(1e-4));
    }
}

TEST_CASE("mode set enumerates the full box") {
    ModeSet m(2);
    CHECK(m.size() == 25);
    CHECK(m.modes.front() == std::pair{-2, -2});
    CHECK(m.modes.back() == std::pair{2, 2});
}

TEST_CASE("assembly rejects coefficients singular at a node") {
    GridSpec grid{5, 5};  // odd npsi puts a node at psi = 0
    MatrixDiffOp p = MatrixDiffOp::scalar_term({0, 0, 0, 0}, sin_psi().monomial_inverse());
    CHECK_THROWS_AS((void)assemble_numeric(p, grid, 0, 0), SingularCoefficient);
}

TEST_CASE("assembled multiplication operator is exact") {
    GridSpec grid{8, 8};
    MatrixDiffOp p = MatrixDiffOp::scalar_term({0, 0, 0, 0}, cos_phi() * sin_psi());
    SparseC m = assemble_numeric(p, grid, 0, 0);
    TrigVec v(1);
    v(0) = sin_phi() * cos_psi();
    Eigen::VectorXcd lhs = m * grid_section(v, grid);
    Eigen::VectorXcd rhs = grid_section(p.apply(v), grid);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("assembled Dirac operator converges to the symbolic action") {
    MatrixDiffOp D = build_D_S4();
    TrigVec v(4);
    TLF bump = sin_phi() * cos_phi() * cos_psi(2);
    v(0) = bump;
    v(1) = bump * sin_psi();
    v(2) = bump * cos_phi();
    v(3) = bump * tlf_phase(0, 0) * sin_phi();
    auto error_at = [&](int n) {
        GridSpec grid{n, n};
        MatrixDiffOp sym = D.mode_symbol(1, 2);
        Eigen::VectorXcd num = assemble_numeric(D, grid, 1, 2) * grid_section(v, grid);
        Eigen::VectorXcd exact = grid_section(sym.apply(v), grid);
        return (num - exact).cwiseAbs().maxCoeff();
    };
    double e16 = error_at(16), e32 = error_at(32);
    CHECK(e32 < e16);
    CHECK(e16 / e32 > 1.7);
}

TEST_CASE("weight diagonal reproduces quadrant integrals") {
    GridSpec grid{64, 64};
    Eigen::VectorXd w = weight_diagonal(grid, weight_S4(), 1);
    TrigVec v(1);
    v(0) = cos_psi();
    Eigen::VectorXcd f = grid_section(v, grid);
    double s = 0.0;
    for (int i = 0; i < f.size(); ++i) s += w(i) * std::norm(f(i));
    // (2 pi)^2 * integral of cos^2(psi) * w_S4 over the quadrant
    TLF integrand = cos_psi(2) * weight_S4().fun();
    double expected = integrand.integrate_quadrant().real() / ((2 * pi) * (2 * pi));
    CHECK(s == doctest::Approx(expected).epsilon(2e-3));
}

TEST_CASE("numeric factorization: assembled tensor sum equals the assembled Dirac") {
    for (auto [n1, n2] : {std::pair{1, 0}, {2, -1}, {3, 3}}) {
        for (int n : {16, 32}) {
            GridSpec grid{n, n};
            SparseC a = assemble_numeric(tensor_sum(), grid, n1, n2);
            SparseC b = assemble_numeric(build_D_S4(), grid, n1, n2);
            SparseC d = a - b;
            double err = 0.0;
            for (int k = 0; k < d.outerSize(); ++k)
                for (SparseC::InnerIterator it(d, k); it; ++it)
                    err = std::max(err, std::abs(it.value()));
            CHECK(err <= 1e-12);
        }
    }
}
