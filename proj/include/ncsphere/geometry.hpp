#pragma once

// Geometric data of torus fibrations over a 2-dimensional base: second
// fundamental form of the fibres, mean curvature, fibration specifications
// with a principal connection, and its curvature 2-form.  The round 4-sphere
// in bipolar coordinates (th1, th2, phi, psi) is the built-in example.

#include <array>

#include "ncsphere/trig_laurent.hpp"

namespace ncs {

// Components S(d_th_a, d_th_a, Z) of the second fundamental form of the
// torus fibres, indexed by fibre direction a in {0,1} and normal direction
// Z in {Phi = 0, Psi = 1}.
struct SecondFundamentalForm {
    std::array<std::array<TLF, 2>, 2> comp;  // comp[a][z]

    const TLF& operator()(int a, int z) const { return comp[a][z]; }
};

inline SecondFundamentalForm sphere_sff() {
    SecondFundamentalForm s;
    s.comp[0][0] = -(sin_phi() * cos_phi() * cos_psi(2));
    s.comp[1][0] = sin_phi() * cos_phi() * cos_psi(2);
    s.comp[0][1] = -(cos_phi(2) * sin_psi() * cos_psi());
    s.comp[1][1] = -(sin_phi(2) * sin_psi() * cos_psi());
    return s;
}

struct MeanCurvature {
    TLF k_phi, k_psi;
};

// trace of the second fundamental form against the fibre metric
// g(d_th_a, d_th_a) = h_a^2
inline MeanCurvature mean_curvature_from_sff(const SecondFundamentalForm& s,
                                             const TLF& h1, const TLF& h2) {
    TLF g1_inv = (h1 * h1).monomial_inverse();
    TLF g2_inv = (h2 * h2).monomial_inverse();
    MeanCurvature k;
    k.k_phi = s(0, 0) * g1_inv + s(1, 0) * g2_inv;
    k.k_psi = s(0, 1) * g1_inv + s(1, 1) * g2_inv;
    return k;
}

// A torus fibration over a 2-dimensional base chart (u, v), carried on the
// (phi, psi) slots of the coefficient ring.  The total metric is
//
//   h1^2 (dth1 + A^1)^2 + h2^2 (dth2 + A^2)^2 + b_u^2 du^2 + b_v^2 dv^2
//
// with A^a = A_u[a] du + A_v[a] dv.  The scale factors must be single-term
// monomials so their inverses and dlog stay in the ring; the connection
// coefficients may be arbitrary ring elements.
struct FibrationSpec {
    TLF h1, h2;
    TLF b_u, b_v;
    std::array<TLF, 2> A_u{TLF(), TLF()};
    std::array<TLF, 2> A_v{TLF(), TLF()};

    void validate() const {
        for (const TLF* f : {&h1, &h2, &b_u, &b_v})
            if (!f->is_monomial() || !f->theta_independent())
                throw UnsupportedSpec("scale factors must be theta-free monomials");
        for (const TLF* f : {&A_u[0], &A_u[1], &A_v[0], &A_v[1]})
            if (!f->theta_independent())
                throw UnsupportedSpec("connection coefficients must be theta-free");
    }
};

inline FibrationSpec sphere_fibration() {
    FibrationSpec fs;
    fs.h1 = cos_phi() * cos_psi();
    fs.h2 = sin_phi() * cos_psi();
    fs.b_u = cos_psi();
    fs.b_v = tlf_one();
    return fs;
}

// Curvature of the principal connection, expressed against the orthonormal
// fibre frame: Omega^a = -(d_u A^a_v - d_v A^a_u) h_a.
inline std::array<TLF, 2> curvature_form(const FibrationSpec& fs) {
    fs.validate();
    std::array<TLF, 2> omega;
    const TLF h[2] = {fs.h1, fs.h2};
    for (int a = 0; a < 2; ++a) {
        TLF f = fs.A_v[a].derivative(Var::Phi) - fs.A_u[a].derivative(Var::Psi);
        omega[a] = -(f * h[a]);
    }
    return omega;
}

// mean curvature of the fibres of a spec: k(Z) = d_Z log(h1 h2)
inline MeanCurvature mean_curvature(const FibrationSpec& fs) {
    fs.validate();
    TLF w = fs.h1 * fs.h2;
    return {w.dlog(Var::Phi), w.dlog(Var::Psi)};
}

// Classical coordinate functions generating the 4-sphere: two fibred complex
// coordinates and one central real coordinate, satisfying
// a*a + b*b + x^2 = 1 as functions.
struct SphereGenerators {
    TLF a, b, x;
};

inline SphereGenerators sphere_generators() {
    SphereGenerators g;
    g.a = tlf_phase(1, 0) * cos_phi() * cos_psi();
    g.b = tlf_phase(0, 1) * sin_phi() * cos_psi();
    g.x = sin_psi();
    return g;
}

}  // namespace ncs
