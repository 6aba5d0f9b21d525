#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncsphere/dirac_ops.hpp"
#include "ncsphere/theta_deform.hpp"
#include "test_helpers.hpp"

using namespace ncs;
using ncs::testing::random_tlf;

TEST_CASE("deformed product at theta = 0 is the function product") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        TLF f = random_tlf(rng, 4, 2, false, true);
        TLF g = random_tlf(rng, 4, 2, false, true);
        DeformedElement lhs =
            DeformedElement::from_function(f, 0.0) * DeformedElement::from_function(g, 0.0);
        DeformedElement rhs = DeformedElement::from_function(f * g, 0.0);
        CHECK((lhs - rhs).residual_functional() <= 1e-12);
    }
}

TEST_CASE("star is an involution and anti-multiplicative") {
    std::mt19937 rng(5);
    for (double theta : {0.0, 0.5, 0.237}) {
        for (int trial = 0; trial < 10; ++trial) {
            DeformedElement x =
                DeformedElement::from_function(random_tlf(rng, 4, 2, false, true), theta);
            DeformedElement y =
                DeformedElement::from_function(random_tlf(rng, 4, 2, false, true), theta);
            CHECK((x.star().star() - x).residual_functional() <= 1e-12);
            CHECK(((x * y).star() - y.star() * x.star()).residual_functional() <= 1e-12);
        }
    }
}

TEST_CASE("sphere relations hold at all tested deformation parameters") {
    for (double theta : {0.0, 1.0 / 3.0, 0.5, 0.237}) {
        SphereRelationResiduals r = sphere_relations_check(theta);
        CHECK(r.a_normal <= 1e-12);
        CHECK(r.b_normal <= 1e-12);
        CHECK(r.ab_commutation <= 1e-12);
        CHECK(r.ax_central <= 1e-12);
        CHECK(r.bx_central <= 1e-12);
        CHECK(r.radius <= 1e-12);
    }
}

TEST_CASE("mutated commutation phase is detected") {
    // the commutation relation fails visibly if lambda is replaced by its
    // conjugate at an incommensurate deformation
    double theta = 0.237;
    auto [a, b, x] = deformed_sphere_generators(theta);
    const Complex i(0.0, 1.0);
    DeformedElement ab = a * b, ba = b * a;
    ba *= std::exp(-i * 2.0 * std::numbers::pi * theta);
    CHECK((ab - ba).residual_functional() > 1e-3);
}

TEST_CASE("pi is multiplicative on interior sections") {
    GridSpec grid{6, 6};
    double theta = 1.0 / 3.0;
    auto [a, b, x] = deformed_sphere_generators(theta);
    int block = grid.nodes();
    ModeSection xi(4, block);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k1 = -2; k1 <= 2; ++k1)
        for (int k2 = -2; k2 <= 2; ++k2)
            for (int t = 0; t < block; ++t)
                xi.mode(k1, k2)(t) = Complex(u(rng), u(rng));
    DeformedElement ab = a * b;
    ModeSection lhs = apply_pi(ab, xi, grid, 1);
    ModeSection rhs = apply_pi(a, apply_pi(b, xi, grid, 1), grid, 1);
    CHECK((lhs.data - rhs.data).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("pi reports mode overflow instead of dropping modes") {
    GridSpec grid{4, 4};
    auto [a, b, x] = deformed_sphere_generators(0.237);
    ModeSection xi(1, grid.nodes());
    xi.mode(1, 0).setOnes();  // boundary mode: multiplying by a overflows
    CHECK_THROWS_AS((void)apply_pi(a, xi, grid, 1), ModeOverflow);
    ModeSection ok(1, grid.nodes());
    ok.mode(0, 0).setOnes();
    CHECK_NOTHROW((void)apply_pi(a, ok, grid, 1));
}

TEST_CASE("commutator with the central generator is Clifford multiplication") {
    // [D, m_x] with x = sin(psi) acts as i gamma^4 cos(psi); norm close to 1
    GridSpec grid{24, 24};
    DeformedElement x =
        DeformedElement::from_function(sin_psi(), 0.237);
    double n = commutator_norm(build_D_S4(), x, grid, 1, weight_S4());
    CHECK(n == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("commutator norm requires single-mode elements") {
    GridSpec grid{4, 4};
    auto [a, b, x] = deformed_sphere_generators(0.1);
    CHECK_THROWS_AS((void)commutator_norm(build_D_S4(), a + b, grid, 1, weight_S4()),
                    UnsupportedSpec);
}
