#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncsphere/matrix_diff_op.hpp"
#include "test_helpers.hpp"

using namespace ncs;
using ncs::testing::random_tlf;

TEST_CASE("compose: Leibniz commutation of d_phi past cos(phi)") {
    MatrixDiffOp dphi = MatrixDiffOp::scalar_term({0, 0, 1, 0}, tlf_one());
    MatrixDiffOp mcos = MatrixDiffOp::scalar_term({0, 0, 0, 0}, cos_phi());
    MatrixDiffOp lhs = compose(dphi, mcos);
    MatrixDiffOp rhs = MatrixDiffOp::scalar_term({0, 0, 1, 0}, cos_phi());
    rhs += MatrixDiffOp::scalar_term({0, 0, 0, 0}, -sin_phi());
    CHECK((lhs - rhs).is_zero());
}

TEST_CASE("compose: identity is neutral") {
    std::mt19937 rng(3);
    MatrixDiffOp p(2);
    p.add_term({0, 0, 1, 0}, lift_const(Eigen::Matrix2cd::Random(), random_tlf(rng)));
    p.add_term({0, 0, 0, 0}, lift_const(Eigen::Matrix2cd::Random(), random_tlf(rng)));
    MatrixDiffOp id = MatrixDiffOp::identity(2);
    CHECK((compose(id, p) - p).is_zero());
    CHECK((compose(p, id) - p).is_zero());
}

TEST_CASE("compose: square of a torus-direction operator") {
    // (i f(phi,psi) s1 d_th1)^2 = -f^2 d_th1^2 with no lower-order residue
    Eigen::Matrix2cd s1;
    s1 << 0, 1, 1, 0;
    TLF f = cos_phi().monomial_inverse() * cos_psi().monomial_inverse();
    MatrixDiffOp p = MatrixDiffOp::term(2, {1, 0, 0, 0}, Complex(0, 1) * s1, f);
    MatrixDiffOp sq = compose(p, p);
    MatrixDiffOp expected =
        MatrixDiffOp::term(2, {2, 0, 0, 0}, -Eigen::Matrix2cd::Identity(), f * f);
    CHECK((sq - expected).is_zero());
}

TEST_CASE("compose: order overflow raises") {
    MatrixDiffOp dphi = MatrixDiffOp::scalar_term({0, 0, 1, 0}, tlf_one());
    MatrixDiffOp d2 = compose(dphi, dphi);
    CHECK(d2.order() == 2);
    CHECK_THROWS_AS((void)compose(d2, dphi), OrderOverflow);
    MatrixDiffOp p(1);
    CHECK_THROWS_AS(p.add_term({1, 1, 1, 0}, lift_const(Eigen::MatrixXcd::Identity(1, 1))),
                    OrderOverflow);
}

TEST_CASE("compose is associative on random order-1 operators") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        MatrixDiffOp a(2), b(2), c(2);
        a.add_term({0, 0, 1, 0}, lift_const(Eigen::Matrix2cd::Random(), random_tlf(rng, 3)));
        a.add_term({0, 0, 0, 0}, lift_const(Eigen::Matrix2cd::Random(), random_tlf(rng, 3)));
        b.add_term({0, 0, 0, 1}, lift_const(Eigen::Matrix2cd::Random(), random_tlf(rng, 3)));
        b.add_term({0, 0, 0, 0}, lift_const(Eigen::Matrix2cd::Random(), random_tlf(rng, 3)));
        c.add_term({0, 0, 0, 0}, lift_const(Eigen::Matrix2cd::Random(), random_tlf(rng, 3)));
        CHECK((compose(compose(a, b), c) - compose(a, compose(b, c))).residual() <= 1e-10);
    }
}

TEST_CASE("apply matches compose on ring vectors") {
    std::mt19937 rng(9);
    MatrixDiffOp a(2), b(2);
    a.add_term({0, 0, 1, 0}, lift_const(Eigen::Matrix2cd::Random(), random_tlf(rng, 3)));
    b.add_term({0, 0, 0, 1}, lift_const(Eigen::Matrix2cd::Random(), random_tlf(rng, 3)));
    b.add_term({0, 0, 0, 0}, lift_const(Eigen::Matrix2cd::Random(), random_tlf(rng, 3)));
    TrigVec v(2);
    v(0) = random_tlf(rng, 3);
    v(1) = random_tlf(rng, 3);
    TrigVec lhs = compose(a, b).apply(v);
    TrigVec rhs = a.apply(b.apply(v));
    for (int i = 0; i < 2; ++i) CHECK((lhs(i) - rhs(i)).residual() <= 1e-11);
}

TEST_CASE("formal_adjoint: i d_psi against the base weight") {
    MatrixDiffOp p = MatrixDiffOp::scalar_term({0, 0, 0, 1}, Complex(0, 1) * tlf_one());
    MatrixDiffOp adj = formal_adjoint(p, weight_B());
    MatrixDiffOp expected = p;
    expected += MatrixDiffOp::scalar_term({0, 0, 0, 0}, Complex(0, -1) * tan_psi());
    CHECK((adj - expected).is_zero());
}

TEST_CASE("formal_adjoint is an involution") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        MatrixDiffOp p(2);
        p.add_term({0, 0, 1, 0},
                   lift_const(Eigen::Matrix2cd::Random(), random_tlf(rng, 3, 2, true)));
        p.add_term({0, 0, 0, 1},
                   lift_const(Eigen::Matrix2cd::Random(), random_tlf(rng, 3, 2, true)));
        p.add_term({1, 0, 0, 0},
                   lift_const(Eigen::Matrix2cd::Random(), random_tlf(rng, 3, 2)));
        p.add_term({0, 0, 0, 0},
                   lift_const(Eigen::Matrix2cd::Random(), random_tlf(rng, 3, 2)));
        for (const WeightFun& w : {weight_X(), weight_B(), weight_S4()})
            CHECK((formal_adjoint(formal_adjoint(p, w), w) - p).residual() <= 1e-11);
    }
}

TEST_CASE("formal_adjoint rejects order-2 input") {
    MatrixDiffOp dphi = MatrixDiffOp::scalar_term({0, 0, 1, 0}, tlf_one());
    CHECK_THROWS_AS((void)formal_adjoint(compose(dphi, dphi), weight_B()), OrderOverflow);
}

TEST_CASE("adjoint pairing against quadrant integration") {
    // <P xi, eta>_w = <xi, P* eta>_w on concrete ring vectors
    std::mt19937 rng(33);
    WeightFun w = weight_S4();
    for (int trial = 0; trial < 5; ++trial) {
        MatrixDiffOp p(2);
        p.add_term({0, 0, 0, 1},
                   lift_const(Eigen::Matrix2cd::Random(), random_tlf(rng, 2, 1, true, true)));
        p.add_term({0, 0, 0, 0},
                   lift_const(Eigen::Matrix2cd::Random(), random_tlf(rng, 2, 1, true, true)));
        TrigVec xi(2), eta(2);
        for (int i = 0; i < 2; ++i) {
            xi(i) = random_tlf(rng, 2, 2, false, true);
            eta(i) = random_tlf(rng, 2, 2, false, true);
        }
        auto pairing = [&](const TrigVec& a, const TrigVec& b) {
            TLF s;
            for (int i = 0; i < 2; ++i) s += a(i).conjugate() * b(i) * w.fun();
            return s.integrate_quadrant();
        };
        Complex lhs = pairing(p.apply(xi), eta);
        Complex rhs = pairing(xi, formal_adjoint(p, w).apply(eta));
        CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("mode_symbol substitutes torus derivatives") {
    Eigen::Matrix2cd s1;
    s1 << 0, 1, 1, 0;
    MatrixDiffOp p = MatrixDiffOp::term(2, {1, 0, 0, 0}, Complex(0, 1) * s1,
                                        cos_phi().monomial_inverse());
    MatrixDiffOp sym = p.mode_symbol(3, 0);
    MatrixDiffOp expected =
        MatrixDiffOp::term(2, {0, 0, 0, 0}, -3.0 * s1, cos_phi().monomial_inverse());
    CHECK((sym - expected).is_zero());
    CHECK(!sym.has_grid_derivatives());
}
