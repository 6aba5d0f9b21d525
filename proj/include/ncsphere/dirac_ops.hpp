#pragma once

// Dirac operators attached to a torus fibration: the vertical family, the
// base operator, their twisted tensor sum on C^2 (x) C^2 = C^4, and the
// full frame (Lichnerowicz) Dirac operator of the total metric.  The round
// 4-sphere versions are given in closed form for cross-checking.

#include <complex>

#include "ncsphere/gamma.hpp"
#include "ncsphere/geometry.hpp"
#include "ncsphere/matrix_diff_op.hpp"

namespace ncs {

inline constexpr Complex kI{0.0, 1.0};

// Kronecker product of coefficient matrices, slow factor first
inline TrigMat trig_kron(const TrigMat& slow, const TrigMat& fast) {
    TrigMat r = trig_zero(int(slow.rows() * fast.rows()), int(slow.cols() * fast.cols()));
    for (int i = 0; i < slow.rows(); ++i)
        for (int j = 0; j < slow.cols(); ++j)
            for (int k = 0; k < fast.rows(); ++k)
                for (int l = 0; l < fast.cols(); ++l)
                    r(i * fast.rows() + k, j * fast.cols() + l) = slow(i, j) * fast(k, l);
    return r;
}

inline TrigMat trig_identity(int n) {
    return lift_const(Eigen::MatrixXcd::Identity(n, n));
}

inline TrigMat trig_scale(const TrigMat& m, const TLF& f) {
    TrigMat r = m;
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) r(i, j) = f * r(i, j);
    return r;
}

// zeroth-order connection terms added to the base derivatives when the base
// operator acts on the total space
struct Connection {
    TLF z_u, z_v;
};

// --- generic builders from a fibration spec -------------------------------

// vertical family: i sigma^1 (1/h1) d_th1 + i sigma^2 (1/h2) d_th2
inline MatrixDiffOp build_D_V(const FibrationSpec& fs) {
    fs.validate();
    const auto& G = gammas();
    MatrixDiffOp p(2);
    p.add_term({1, 0, 0, 0}, lift_const(kI * G.sigma1, fs.h1.monomial_inverse()));
    p.add_term({0, 1, 0, 0}, lift_const(kI * G.sigma2, fs.h2.monomial_inverse()));
    return p;
}

// base operator: i sigma^1 (1/b_u)(d_u + (1/2) d_u log b_v)
//              + i sigma^2 (1/b_v)(d_v + (1/2) d_v log b_u)
inline MatrixDiffOp build_D_B(const FibrationSpec& fs) {
    fs.validate();
    const auto& G = gammas();
    TLF bu_inv = fs.b_u.monomial_inverse();
    TLF bv_inv = fs.b_v.monomial_inverse();
    MatrixDiffOp p(2);
    p.add_term({0, 0, 1, 0}, lift_const(kI * G.sigma1, bu_inv));
    p.add_term({0, 0, 0, 0},
               lift_const(kI * G.sigma1, bu_inv * (0.5 * fs.b_v.dlog(Var::Phi))));
    p.add_term({0, 0, 0, 1}, lift_const(kI * G.sigma2, bv_inv));
    p.add_term({0, 0, 0, 0},
               lift_const(kI * G.sigma2, bv_inv * (0.5 * fs.b_u.dlog(Var::Psi))));
    return p;
}

// connection terms: half the mean curvature of the fibres
inline Connection build_connection(const FibrationSpec& fs) {
    MeanCurvature k = mean_curvature(fs);
    return {0.5 * k.k_phi, 0.5 * k.k_psi};
}

// --- closed-form round-sphere operators -----------------------------------

inline MatrixDiffOp build_D_V() { return build_D_V(sphere_fibration()); }
inline MatrixDiffOp build_D_Q() { return build_D_B(sphere_fibration()); }
inline Connection build_connection() { return build_connection(sphere_fibration()); }

// the round-sphere Dirac operator written out termwise
inline MatrixDiffOp build_D_S4() {
    const auto& G = gammas();
    TLF icpsi = cos_psi().monomial_inverse();
    MatrixDiffOp p(4);
    p.add_term({1, 0, 0, 0}, lift_const(kI * G.gamma1, cos_phi().monomial_inverse() * icpsi));
    p.add_term({0, 1, 0, 0}, lift_const(kI * G.gamma2, sin_phi().monomial_inverse() * icpsi));
    p.add_term({0, 0, 1, 0}, lift_const(kI * G.gamma3, icpsi));
    p.add_term({0, 0, 0, 0},
               lift_const(kI * G.gamma3, icpsi * (0.5 * cot_phi() - 0.5 * tan_phi())));
    p.add_term({0, 0, 0, 1}, lift_const(kI * G.gamma4));
    p.add_term({0, 0, 0, 0}, lift_const(kI * G.gamma4, -1.5 * tan_psi()));
    return p;
}

// --- lifts to the 4-spinor bundle -----------------------------------------

// lift a vertical (fast-factor) operator: 1 (x) P
inline MatrixDiffOp kron_vertical(const MatrixDiffOp& p) {
    MatrixDiffOp r(2 * p.size());
    TrigMat id2 = trig_identity(2);
    for (const auto& [d, m] : p.terms()) r.add_term(d, trig_kron(id2, m));
    return r;
}

// Lift a base (slow-factor) operator acting through horizontal derivatives
// d_u -> d_u - A^a_u d_th_a + z_u (and likewise for v): B (x) 1 with the
// connection terms folded in.
inline MatrixDiffOp kron_horizontal_with_connection(const MatrixDiffOp& b,
                                                    const Connection& conn,
                                                    const FibrationSpec& fs) {
    MatrixDiffOp r(2 * b.size());
    TrigMat id2 = trig_identity(2);
    for (const auto& [d, m] : b.terms()) {
        if (deriv_order(d) == 0) {
            r.add_term(d, trig_kron(m, id2));
            continue;
        }
        if (d[0] != 0 || d[1] != 0 || deriv_order(d) != 1)
            throw UnsupportedSpec("base operator must be order <= 1 in (u, v)");
        int axis = (d[2] == 1) ? 0 : 1;
        const TLF& z = (axis == 0) ? conn.z_u : conn.z_v;
        const auto& A = (axis == 0) ? fs.A_u : fs.A_v;
        r.add_term(d, trig_kron(m, id2));
        r.add_term({0, 0, 0, 0}, trig_kron(trig_scale(m, z), id2));
        r.add_term({1, 0, 0, 0}, trig_kron(trig_scale(m, -A[0]), id2));
        r.add_term({0, 1, 0, 0}, trig_kron(trig_scale(m, -A[1]), id2));
    }
    return r;
}

inline MatrixDiffOp tensor_sum_raw(const FibrationSpec& fs) {
    const auto& G = gammas();
    MatrixDiffOp vert = kron_vertical(build_D_V(fs));
    MatrixDiffOp horiz =
        kron_horizontal_with_connection(build_D_B(fs), build_connection(fs), fs)
            .left_mul(G.gamma_X_lift);
    return vert + horiz;
}

// the same pieces after conjugating by the parity twist Gamma
inline MatrixDiffOp lift_vertical(const FibrationSpec& fs) {
    return kron_vertical(build_D_V(fs)).conjugate_by(gammas().Gamma.real());
}
inline MatrixDiffOp lift_horizontal(const FibrationSpec& fs) {
    const auto& G = gammas();
    return kron_horizontal_with_connection(build_D_B(fs), build_connection(fs), fs)
        .left_mul(G.gamma_X_lift)
        .conjugate_by(G.Gamma.real());
}
inline MatrixDiffOp tensor_sum(const FibrationSpec& fs) {
    return lift_vertical(fs) + lift_horizontal(fs);
}

inline MatrixDiffOp lift_vertical() { return lift_vertical(sphere_fibration()); }
inline MatrixDiffOp lift_horizontal() { return lift_horizontal(sphere_fibration()); }
inline MatrixDiffOp tensor_sum() { return tensor_sum(sphere_fibration()); }

// --- frame Dirac operator of the total metric -----------------------------

// Orthonormal frame E1 = (1/h1) d_th1, E2 = (1/h2) d_th2,
// E3 = (1/b_u)(d_u - A^a_u d_th_a), E4 = (1/b_v)(d_v - A^a_v d_th_a);
// D = i sum_a gamma^a (E_a + (1/4) sum_{bc} sc_abc gamma^b gamma^c) with the
// spin coefficients sc_abc = -(c_abc - c_bca + c_cab)/2 built from the frame
// structure constants c_abc = <[E_a, E_b], E_c>.
inline MatrixDiffOp build_D_frame(const FibrationSpec& fs) {
    fs.validate();
    const auto& G = gammas();
    const Eigen::Matrix4cd g[4] = {G.gamma1, G.gamma2, G.gamma3, G.gamma4};

    const TLF h[2] = {fs.h1, fs.h2};
    TLF bu_inv = fs.b_u.monomial_inverse();
    TLF bv_inv = fs.b_v.monomial_inverse();

    TLF cc[4][4][4];
    auto set = [&](int a, int b, int c, const TLF& v) {
        cc[a][b][c] += v;
        cc[b][a][c] -= v;
    };
    for (int a = 0; a < 2; ++a) {
        set(a, 2, a, h[a].dlog(Var::Phi) * bu_inv);
        set(a, 3, a, h[a].dlog(Var::Psi) * bv_inv);
    }
    set(2, 3, 2, fs.b_u.dlog(Var::Psi) * bv_inv);
    set(2, 3, 3, -(fs.b_v.dlog(Var::Phi) * bu_inv));
    std::array<TLF, 2> omega = curvature_form(fs);
    for (int a = 0; a < 2; ++a) set(2, 3, a, omega[a] * bu_inv * bv_inv);

    MatrixDiffOp D(4);
    // frame derivative parts
    D.add_term({1, 0, 0, 0}, lift_const(kI * g[0], fs.h1.monomial_inverse()));
    D.add_term({0, 1, 0, 0}, lift_const(kI * g[1], fs.h2.monomial_inverse()));
    D.add_term({0, 0, 1, 0}, lift_const(kI * g[2], bu_inv));
    D.add_term({0, 0, 0, 1}, lift_const(kI * g[3], bv_inv));
    for (int a = 0; a < 2; ++a) {
        D.add_term({a == 0, a == 1, 0, 0}, lift_const(kI * g[2], -(fs.A_u[a] * bu_inv)));
        D.add_term({a == 0, a == 1, 0, 0}, lift_const(kI * g[3], -(fs.A_v[a] * bv_inv)));
    }
    // spin connection
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
                TLF sc = -0.5 * (cc[a][b][c] - cc[b][c][a] + cc[c][a][b]);
                if (sc.is_zero()) continue;
                D.add_term({0, 0, 0, 0}, lift_const(0.25 * kI * g[a] * g[b] * g[c], sc));
            }
    return D;
}

}  // namespace ncs
