#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncsphere/verify.hpp"

using namespace ncs;

TEST_CASE("kappa bound matches the closed form at a point support") {
    constexpr double pi = std::numbers::pi;
    double eps = 1e-9;
    LocalizingElement point{pi / 4 - eps, pi / 4 + eps, -eps, eps};
    // at (pi/4, 0) the bound is (1/4)(1 + 0 + 1) = 1/2, inflated by 1%
    CHECK(kappa_bound(point) == doctest::Approx(0.5 * 1.01).epsilon(1e-6));
}

TEST_CASE("kappa bound is monotone under support enlargement") {
    LocalizingElement small = standard_support();
    LocalizingElement big{small.phi_lo * 0.8, small.phi_hi * 1.1,
                          small.psi_lo * 1.2, small.psi_hi * 1.2};
    CHECK(kappa_bound(big) >= kappa_bound(small));
    LocalizingElement bad{0.3, 0.2, -0.1, 0.1};
    CHECK_THROWS_AS((void)kappa_bound(bad), EmptySupport);
    LocalizingElement outside{-0.1, 0.3, -0.1, 0.1};
    CHECK_THROWS_AS((void)kappa_bound(outside), EmptySupport);
}

TEST_CASE("factorization suite passes symbolically and numerically") {
    VerificationReport sym = verify_factorization(Backend::Symbolic);
    CHECK(sym.all_pass());
    VerificationReport num = verify_factorization(Backend::Numeric);
    CHECK(num.all_pass());
    for (const auto& c : num.checks) CHECK(c.residual <= 1e-12);
}

TEST_CASE("connection condition holds exactly in the ring") {
    VerificationReport rep = verify_connection_condition(20, 2024);
    for (const auto& c : rep.checks) {
        INFO(c.name);
        CHECK(c.pass);
    }
}

TEST_CASE("anticommutator identity holds with exact order-2 cancellation") {
    VerificationReport rep = verify_anticommutator();
    for (const auto& c : rep.checks) {
        INFO(c.name);
        CHECK(c.pass);
    }
}

TEST_CASE("sum of squares decomposition is exact") {
    CHECK(sum_of_squares_residual() <= 1e-13);
    CHECK(t_square_scalar_residual() <= 1e-13);
}

TEST_CASE("local positivity on the standard support") {
    VerificationReport rep =
        verify_local_positivity(standard_support(), 25, {16, 16}, 2, 7);
    for (const auto& c : rep.checks) {
        INFO(c.name << " residual " << c.residual << " tol " << c.tolerance);
        CHECK(c.pass);
    }
}

TEST_CASE("garding ratio is bounded and stable under refinement") {
    VerificationReport rep = verify_garding(standard_support(), 8, 1, 11);
    for (const auto& c : rep.checks) {
        INFO(c.name << " residual " << c.residual);
        CHECK(c.pass);
    }
    CHECK(rep.params.at("C_64") > 0.0);
}

TEST_CASE("curvature obstruction vanishes for the sphere and closed forms") {
    VerificationReport sphere = verify_curvature_obstruction(sphere_fibration());
    for (const auto& c : sphere.checks) {
        INFO(c.name);
        CHECK(c.pass);
    }
    CHECK(sphere.params.at("curvature_vanishes") == 1.0);

    VerificationReport closed =
        verify_curvature_obstruction(closed_connection_fibration());
    CHECK(closed.params.at("curvature_vanishes") == 1.0);
    for (const auto& c : closed.checks) {
        INFO(c.name);
        CHECK(c.pass);
    }
}

TEST_CASE("curvature obstruction of the synthetic spec is a gamma-cube multiple") {
    VerificationReport rep = verify_curvature_obstruction(synthetic_curved_fibration());
    bool zeroth = false, cube = false, flagged = false;
    for (const auto& c : rep.checks) {
        if (c.name == "obstruction_is_multiplication") zeroth = c.pass;
        if (c.name == "gamma_cube_proportionality") cube = c.pass;
        if (c.name == "constant_matches_one_eighth") flagged = !c.pass;
    }
    CHECK(zeroth);
    CHECK(cube);
    MESSAGE("measured constant modulus: " << rep.params.at("constant_abs"));
    // with the single-sum cube convention the measured constant is i/4: twice
    // 1/8 in modulus, and the comparison entry flags the mismatch
    CHECK(rep.params.at("constant_abs") == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(rep.params.at("constant_im") == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(flagged);
}
