#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncsphere/geometry.hpp"

using namespace ncs;

TEST_CASE("sphere scale factors satisfy the Pythagorean radius relation") {
    SphereGenerators g = sphere_generators();
    TLF r = g.a.conjugate() * g.a + g.b.conjugate() * g.b + g.x * g.x;
    // a*a + b*b + x^2 = 1 as a function on the quadrant
    constexpr double pi = 3.14159265358979323846;
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) {
            double phi = (i + 0.5) * (pi / 2) / 9;
            double psi = -pi / 2 + (j + 0.5) * pi / 9;
            CHECK(std::abs(r.eval_base(phi, psi) - 1.0) <= 1e-13);
        }
}

TEST_CASE("mean curvature of the spec agrees with the second fundamental form") {
    FibrationSpec fs = sphere_fibration();
    MeanCurvature direct = mean_curvature(fs);
    MeanCurvature traced = mean_curvature_from_sff(sphere_sff(), fs.h1, fs.h2);
    CHECK((direct.k_phi - traced.k_phi).residual() <= 1e-13);
    CHECK((direct.k_psi - traced.k_psi).residual() <= 1e-13);
}

TEST_CASE("sphere mean curvature closed forms") {
    MeanCurvature k = mean_curvature(sphere_fibration());
    // d_phi log(h1 h2) = cot(phi) - tan(phi), d_psi log(h1 h2) = -2 tan(psi)
    TLF expect_phi = cot_phi() - tan_phi();
    TLF expect_psi = tan_psi();
    expect_psi *= Complex(-2.0, 0.0);
    CHECK((k.k_phi - expect_phi).residual() <= 1e-13);
    CHECK((k.k_psi - expect_psi).residual() <= 1e-13);
}

TEST_CASE("principal connection of the sphere fibration is flat") {
    std::array<TLF, 2> omega = curvature_form(sphere_fibration());
    CHECK(omega[0].is_zero());
    CHECK(omega[1].is_zero());
}

TEST_CASE("curvature of a synthetic connection matches the hand derivative") {
    FibrationSpec fs;
    fs.h1 = tlf_one();
    fs.h2 = tlf_one();
    fs.b_u = tlf_one();
    fs.b_v = tlf_one();
    fs.A_u[0] = sin_psi();  // A^1 = sin(psi) du, so Omega^1 = cos(psi)
    std::array<TLF, 2> omega = curvature_form(fs);
    CHECK((omega[0] - cos_psi()).residual() <= 1e-13);
    CHECK(omega[1].is_zero());
}

TEST_CASE("psi-independent connection forms are closed") {
    FibrationSpec fs;
    fs.h1 = tlf_one();
    fs.h2 = tlf_one();
    fs.b_u = tlf_one();
    fs.b_v = tlf_one();
    fs.A_u[0] = sin_phi();
    fs.A_u[1] = cos_phi(2);
    std::array<TLF, 2> omega = curvature_form(fs);
    CHECK(omega[0].is_zero());
    CHECK(omega[1].is_zero());
}

TEST_CASE("spec validation rejects non-monomial scale factors") {
    FibrationSpec fs = sphere_fibration();
    fs.h1 = cos_phi() + sin_phi();
    CHECK_THROWS_AS(fs.validate(), UnsupportedSpec);
    FibrationSpec ft = sphere_fibration();
    ft.A_u[0] = tlf_phase(1, 0);  // theta-dependent connection coefficient
    CHECK_THROWS_AS(ft.validate(), UnsupportedSpec);
}
