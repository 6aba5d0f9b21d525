#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncsphere/trig_laurent.hpp"
#include "test_helpers.hpp"

using namespace ncs;
using ncs::testing::adaptive_simpson;
using ncs::testing::random_tlf;

namespace {
constexpr double pi = 3.14159265358979323846;
}

TEST_CASE("multiply: inverse monomial collapses to 1") {
    TLF f = cos_phi() * cos_phi().monomial_inverse();
    CHECK((f - tlf_one()).is_zero());
}

TEST_CASE("multiply: |a|^2 from the sphere generator") {
    TLF a = tlf_phase(1, 0) * cos_phi() * cos_psi();
    TLF prod = a.conjugate() * a;
    CHECK((prod - cos_phi(2) * cos_psi(2)).is_zero());
}

TEST_CASE("multiply: no Pythagorean collapse") {
    TLF s = sin_phi() + cos_phi();
    TLF sq = s * s;
    CHECK(sq.size() == 3);
    CHECK((sq - (sin_phi(2) + 2.0 * sin_phi() * cos_phi() + cos_phi(2))).is_zero());
}

TEST_CASE("differentiate: product rule on sin*cos") {
    TLF f = sin_phi() * cos_phi();
    CHECK((f.derivative(Var::Phi) - (cos_phi(2) - sin_phi(2))).is_zero());
}

TEST_CASE("differentiate: cos^3 psi") {
    TLF f = cos_psi(3);
    CHECK((f.derivative(Var::Psi) - (-3.0 * cos_psi(2) * sin_psi())).is_zero());
}

TEST_CASE("differentiate: torus phase") {
    TLF f = tlf_phase(1, 0);
    CHECK((f.derivative(Var::Theta1) - Complex(0, 1) * tlf_phase(1, 0)).is_zero());
}

TEST_CASE("integrate_quadrant: sin*cos") {
    TLF f = sin_phi() * cos_phi();
    Complex v = f.integrate_quadrant();
    double expected = (2 * pi) * (2 * pi) * 0.5 * pi;
    CHECK(std::abs(v - Complex(expected)) < 1e-10 * expected);
}

TEST_CASE("integrate_quadrant: theta modes vanish") {
    TLF f = tlf_phase(1, 0) * cos_phi(5) * sin_psi(2);
    CHECK(std::abs(f.integrate_quadrant()) == 0.0);
}

TEST_CASE("integrate_quadrant: cos^2 sin^4 in phi equals pi/32 per quadrature oracle") {
    auto g = [](double phi) {
        return std::pow(std::cos(phi), 2) * std::pow(std::sin(phi), 4);
    };
    double oracle = adaptive_simpson(g, 0.0, pi / 2);
    CHECK(oracle == doctest::Approx(pi / 32).epsilon(1e-12));
    TLF f = cos_phi(2) * sin_phi(4);
    double expected = (2 * pi) * (2 * pi) * oracle * pi;  // psi integral of 1
    CHECK(std::abs(f.integrate_quadrant() - Complex(expected)) < 1e-10 * expected);
}

TEST_CASE("integrate_quadrant: non-integrable exponent raises") {
    TLF f = cos_phi(-1);
    CHECK_THROWS_AS((void)f.integrate_quadrant(), NonIntegrable);
}

TEST_CASE("ring laws on random elements") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        TLF f = random_tlf(rng, 16), g = random_tlf(rng, 16), h = random_tlf(rng, 16);
        CHECK(((f * g) * h - f * (g * h)).residual() <= 1e-13);
        CHECK((f * g - g * f).residual() <= 1e-13);
        CHECK((f * (g + h) - (f * g + f * h)).residual() <= 1e-13);
    }
}

TEST_CASE("derivation law in normal form") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        TLF f = random_tlf(rng), g = random_tlf(rng);
        for (Var v : {Var::Theta1, Var::Theta2, Var::Phi, Var::Psi}) {
            TLF lhs = (f * g).derivative(v);
            TLF rhs = f.derivative(v) * g + f * g.derivative(v);
            CHECK((lhs - rhs).residual() <= 1e-13);
        }
    }
}

TEST_CASE("conjugation is multiplicative and commutes with integration") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 25; ++trial) {
        TLF f = random_tlf(rng, 6, 2, false, true);
        TLF g = random_tlf(rng, 6, 2, false, true);
        CHECK(((f * g).conjugate() - f.conjugate() * g.conjugate()).residual() <= 1e-13);
        Complex a = f.conjugate().integrate_quadrant();
        Complex b = std::conj(f.integrate_quadrant());
        CHECK(std::abs(a - b) <= 1e-10 * (1.0 + std::abs(b)));
    }
}

TEST_CASE("integrate_quadrant agrees with the adaptive quadrature oracle") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> expd(0, 6);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        int a = expd(rng), b = expd(rng), c = expd(rng), d = expd(rng);
        double w = coeff(rng);
        TLF f = TLF::monomial(w, 0, 0, a, b, c, d);
        double oracle = w * ncs::testing::quadrant_integral_oracle(a, b, c, d);
        Complex exact = f.integrate_quadrant();
        CHECK(std::abs(exact.real() - oracle) <= 1e-10 * (1.0 + std::abs(oracle)));
    }
}

TEST_CASE("weights: positivity and the submersion identity w_X * w_B = w_S4") {
    TLF prod = weight_X().fun() * weight_B().fun();
    CHECK((prod - weight_S4().fun()).is_zero());
    for (double phi : {0.1, 0.7, 1.4})
        for (double psi : {-1.4, -0.3, 0.0, 0.9}) {
            CHECK(weight_X().eval(phi, psi) > 0.0);
            CHECK(weight_B().eval(phi, psi) > 0.0);
            CHECK(weight_S4().eval(phi, psi) > 0.0);
        }
}

TEST_CASE("dlog of the volume weight gives cot - tan") {
    TLF d = weight_S4().dlog(Var::Phi);
    CHECK((d - (cot_phi() - tan_phi())).is_zero());
    TLF dpsi = weight_B().dlog(Var::Psi);
    CHECK((dpsi - (-tan_psi())).is_zero());
}
