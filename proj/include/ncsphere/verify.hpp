#pragma once

// Verification suites for the factorization of the sphere Dirac operator:
// the symbolic and numeric factorization checks, the connection condition,
// the anticommutator identity with its sum-of-squares consequence, the
// localized positivity bound with its kappa constant, the Garding-type
// ratio study, and the curvature obstruction of general fibration specs.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ncsphere/assemble.hpp"
#include "ncsphere/dirac_ops.hpp"
#include "ncsphere/nc_torus.hpp"
#include "ncsphere/theta_deform.hpp"

namespace ncs {

struct CheckResult {
    std::string name;
    bool pass;
    double residual;
    double tolerance;
};

struct VerificationReport {
    std::string suite;
    std::map<std::string, double> params;
    std::vector<CheckResult> checks;
    double timing_ms = 0.0;

    void add(const std::string& name, double residual, double tolerance) {
        checks.push_back({name, residual <= tolerance, residual, tolerance});
    }
    // a control that must fail loudly: passes when the residual is large
    void add_control(const std::string& name, double residual, double floor) {
        checks.push_back({name, residual > floor, residual, floor});
    }
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// stopwatch helper stamping timing_ms on scope exit
class ReportTimer {
   public:
    explicit ReportTimer(VerificationReport& r)
        : r_(r), t0_(std::chrono::steady_clock::now()) {}
    ~ReportTimer() {
        r_.timing_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0_)
                           .count();
    }

   private:
    VerificationReport& r_;
    std::chrono::steady_clock::time_point t0_;
};

// --- localizing element -----------------------------------------------------

// A compactly supported invariant bump on the base quadrant: a C^1
// piecewise-polynomial product bump on a sub-box, 0 <= f <= 1, vanishing
// outside the box.  The support must be strictly interior to the quadrant.
struct LocalizingElement {
    double phi_lo, phi_hi, psi_lo, psi_hi;

    void validate() const {
        constexpr double pi = std::numbers::pi;
        if (!(phi_lo < phi_hi) || !(psi_lo < psi_hi))
            throw EmptySupport("support box is empty");
        if (!(phi_lo > 0.0) || !(phi_hi < pi / 2) || !(psi_lo > -pi / 2) ||
            !(psi_hi < pi / 2))
            throw EmptySupport("support box must be strictly interior");
    }

    static double smoothstep(double t) {
        if (t <= 0.0) return 0.0;
        if (t >= 1.0) return 1.0;
        return t * t * (3.0 - 2.0 * t);
    }
    // 1 at the box center, 0 on and outside the box edge
    double value(double phi, double psi) const {
        double tp = (phi - phi_lo) / (phi_hi - phi_lo);
        double tq = (psi - psi_lo) / (psi_hi - psi_lo);
        return smoothstep(2.0 * std::min(tp, 1.0 - tp)) *
               smoothstep(2.0 * std::min(tq, 1.0 - tq));
    }
    bool contains(double phi, double psi) const {
        return phi > phi_lo && phi < phi_hi && psi > psi_lo && psi < psi_hi;
    }
};

inline LocalizingElement standard_support() {
    constexpr double pi = std::numbers::pi;
    return {pi / 6, pi / 3, -pi / 6, pi / 6};
}

// max over the support of (1/4)(tan^2(phi)/cos^2(psi) + 2 tan^2(psi)
// + cot^2(phi)/cos^2(psi)), sampled finely and inflated by 1%
inline double kappa_bound(const LocalizingElement& x, int samples = 201) {
    x.validate();
    double best = 0.0;
    for (int i = 0; i < samples; ++i)
        for (int j = 0; j < samples; ++j) {
            double phi = x.phi_lo + (x.phi_hi - x.phi_lo) * i / (samples - 1);
            double psi = x.psi_lo + (x.psi_hi - x.psi_lo) * j / (samples - 1);
            double t = std::tan(phi), c = 1.0 / t, s = std::tan(psi);
            double cp2 = std::cos(psi) * std::cos(psi);
            best = std::max(best, 0.25 * ((t * t + c * c) / cp2 + 2.0 * s * s));
        }
    return best * 1.01;
}

// --- building blocks shared by the suites -----------------------------------

// the two halves of the vertical operator, lifted to the 4-spinor bundle
inline MatrixDiffOp vertical_half_lift(int which) {
    const auto& G = gammas();
    const Eigen::Matrix2cd& sigma = (which == 0) ? G.sigma1 : G.sigma2;
    TLF coeff = (which == 0) ? (cos_phi() * cos_psi()).monomial_inverse()
                             : (sin_phi() * cos_psi()).monomial_inverse();
    DerivIndex d = (which == 0) ? DerivIndex{1, 0, 0, 0} : DerivIndex{0, 1, 0, 0};
    MatrixDiffOp p(4);
    p.add_term(d, trig_kron(trig_identity(2), lift_const(kI * sigma, coeff)));
    return p;
}

// the multiplication operators T' and T'' acting on the base factor
inline TrigMat base_T_matrix(int which) {
    const auto& G = gammas();
    TLF icpsi = cos_psi().monomial_inverse();
    TrigMat t = trig_zero(2, 2);
    if (which == 0) {
        t += lift_const(G.sigma1, tan_phi() * icpsi);
        t += lift_const(G.sigma2, tan_psi());
    } else {
        t += lift_const(G.sigma1, cot_phi() * icpsi);
        t -= lift_const(G.sigma2, tan_psi());
    }
    return t;
}

// i gamma_X D_V' (x) T' - i gamma_X D_V'' (x) T'' on the 4-spinor bundle
inline MatrixDiffOp anticommutator_rhs() {
    const auto& G = gammas();
    TrigMat gx = lift_const(G.gamma_X);
    MatrixDiffOp r(4);
    TLF c1 = (cos_phi() * cos_psi()).monomial_inverse();
    TLF c2 = (sin_phi() * cos_psi()).monomial_inverse();
    // fast factor gamma_X . i sigma^j . (1/h_j), slow factor T
    TrigMat f1 = TrigMat(gx * lift_const(kI * G.sigma1, c1));
    TrigMat f2 = TrigMat(gx * lift_const(kI * G.sigma2, c2));
    MatrixDiffOp t1(4), t2(4);
    t1.add_term({1, 0, 0, 0}, trig_kron(base_T_matrix(0), f1));
    t2.add_term({0, 1, 0, 0}, trig_kron(base_T_matrix(1), f2));
    t1 *= kI;
    t2 *= kI;
    return t1 - t2;
}

// section eta (x) xi with eta on the base (slow) factor and xi vertical (fast)
inline TrigVec product_section(const TrigVec& eta, const TrigVec& xi) {
    TrigVec out = TrigVec::Constant(eta.size() * xi.size(), TLF());
    for (int i = 0; i < eta.size(); ++i)
        for (int j = 0; j < xi.size(); ++j) out(i * xi.size() + j) = eta(i) * xi(j);
    return out;
}

inline double section_residual(const TrigVec& v) {
    double r = 0.0;
    for (int i = 0; i < v.size(); ++i) r = std::max(r, v(i).residual());
    return r;
}

// --- factorization ----------------------------------------------------------

enum class Backend { Symbolic, Numeric };

inline VerificationReport verify_factorization(Backend backend) {
    VerificationReport rep;
    ReportTimer timer(rep);
    rep.suite = "factorization";
    rep.params["backend"] = backend == Backend::Symbolic ? 0.0 : 1.0;

    if (backend == Backend::Symbolic) {
        MatrixDiffOp diff = tensor_sum() - build_D_S4();
        rep.add("symbolic_identity", diff.residual(), 1e-13);
        // control: perturbing the connection zeroth term by +tan(psi) must
        // break the identity by about max |tan(psi)|
        FibrationSpec fs = sphere_fibration();
        Connection conn = build_connection(fs);
        conn.z_v += tan_psi();
        MatrixDiffOp mutated =
            kron_vertical(build_D_V(fs)) +
            kron_horizontal_with_connection(build_D_B(fs), conn, fs)
                .left_mul(gammas().gamma_X_lift);
        mutated = mutated.conjugate_by(gammas().Gamma.real());
        rep.add_control("mutated_connection_detected",
                        (mutated - build_D_S4()).residual(), 1e-3);
        return rep;
    }

    MatrixDiffOp lhs = tensor_sum();
    MatrixDiffOp rhs = build_D_S4();
    for (int n : {16, 32}) {
        GridSpec grid{n, n};
        for (int radius : {1, 2, 3}) {
            double worst = 0.0;
            for (auto [n1, n2] : ModeSet(radius)) {
                SparseC a = assemble_numeric(lhs, grid, n1, n2);
                SparseC b = assemble_numeric(rhs, grid, n1, n2);
                SparseC d = a - b;
                for (int k = 0; k < d.outerSize(); ++k)
                    for (SparseC::InnerIterator it(d, k); it; ++it)
                        worst = std::max(worst, std::abs(it.value()));
            }
            rep.add("numeric_grid" + std::to_string(n) + "_modes" +
                        std::to_string(radius),
                    worst, 1e-12);
        }
    }
    return rep;
}

// --- connection condition ----------------------------------------------------

// (D_V x_nabla D)(xi (x) eta) - gamma_X(xi) (x) D(eta)
//   = D_V(xi) (x) eta
//   + gamma_X nabla_phi(xi) (1/cos psi) (x) i sigma^1 eta
//   + gamma_X nabla_psi(xi) (x) i sigma^2 eta,
// exactly in the ring, for vertical sections xi and base sections eta.
inline VerificationReport verify_connection_condition(int trials = 20,
                                                      unsigned seed = 2024) {
    VerificationReport rep;
    ReportTimer timer(rep);
    rep.suite = "connection";
    rep.params["trials"] = trials;
    rep.params["seed"] = seed;

    const auto& G = gammas();
    FibrationSpec fs = sphere_fibration();
    MatrixDiffOp total = tensor_sum_raw(fs);
    MatrixDiffOp dv = build_D_V(fs);
    MatrixDiffOp dq = build_D_B(fs);
    Connection conn = build_connection(fs);
    TLF icpsi = cos_psi().monomial_inverse();

    auto gx_apply = [&](const TrigVec& xi) {
        TrigVec out = xi;
        for (int j = 0; j < 2; ++j) out(j) = G.gamma_X(j, j).real() * out(j);
        return out;
    };
    auto sigma_apply = [&](const Eigen::Matrix2cd& s, const TrigVec& eta) {
        TrigVec out = TrigVec::Constant(2, TLF());
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                TLF t = eta(j);
                t *= kI * s(i, j);
                out(i) += t;
            }
        return out;
    };
    auto nabla = [&](const TrigVec& xi, Var v, const TLF& z) {
        TrigVec out = TrigVec::Constant(2, TLF());
        for (int j = 0; j < 2; ++j) out(j) = xi(j).derivative(v) + z * xi(j);
        return out;
    };
    auto residual_for = [&](const TrigVec& xi, const TrigVec& eta) {
        TrigVec lhs = total.apply(product_section(eta, xi)) -
                      product_section(dq.apply(eta), gx_apply(xi));
        TrigVec nphi = gx_apply(nabla(xi, Var::Phi, conn.z_u));
        for (int j = 0; j < 2; ++j) nphi(j) = icpsi * nphi(j);
        TrigVec npsi = gx_apply(nabla(xi, Var::Psi, conn.z_v));
        TrigVec rhs = product_section(eta, dv.apply(xi)) +
                      product_section(sigma_apply(G.sigma1, eta), nphi) +
                      product_section(sigma_apply(G.sigma2, eta), npsi);
        return section_residual(TrigVec(lhs - rhs));
    };

    // eigenfamily-style numerator monomials against a polynomial bump monomial
    {
        TrigVec xi = TrigVec::Constant(2, TLF());
        xi(0) = tlf_phase(1, 0) * cos_phi();
        xi(1) = tlf_phase(0, 1) * sin_phi();
        TrigVec eta = TrigVec::Constant(2, TLF());
        eta(0) = sin_phi() * cos_phi() * cos_psi(2);
        eta(1) = sin_phi(2) * cos_psi() * sin_psi();
        rep.add("eigenfamily_numerator_section", residual_for(xi, eta), 1e-13);
    }
    // a theta-free vertical section is killed by D_V: both sides reduce to
    // the nabla terms only
    {
        TrigVec xi = TrigVec::Constant(2, TLF());
        xi(0) = cos_phi() * sin_psi();
        xi(1) = sin_phi(2);
        TrigVec eta = TrigVec::Constant(2, TLF());
        eta(0) = cos_psi(2);
        eta(1) = sin_phi() * cos_phi();
        rep.add("mode_zero_killed_by_D_V", section_residual(dv.apply(xi)), 1e-13);
        rep.add("mode_zero_section", residual_for(xi, eta), 1e-13);
    }
    // randomized monomial property run
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> mode(-2, 2), pow(0, 3), comp(0, 1);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        TrigVec xi = TrigVec::Constant(2, TLF());
        TrigVec eta = TrigVec::Constant(2, TLF());
        for (int j = 0; j < 2; ++j) {
            xi(j) = TLF::monomial(Complex(amp(rng), amp(rng)), mode(rng), mode(rng),
                                  pow(rng), pow(rng), pow(rng), pow(rng));
            eta(j) = TLF::monomial(Complex(amp(rng), amp(rng)), 0, 0, pow(rng),
                                   pow(rng), pow(rng), pow(rng));
        }
        worst = std::max(worst, residual_for(xi, eta));
    }
    rep.add("randomized_monomials", worst, 1e-12);
    return rep;
}

// --- anticommutator identity --------------------------------------------------

inline VerificationReport verify_anticommutator() {
    VerificationReport rep;
    ReportTimer timer(rep);
    rep.suite = "anticommutator";

    FibrationSpec fs = sphere_fibration();
    MatrixDiffOp vert = kron_vertical(build_D_V(fs));
    MatrixDiffOp horiz =
        kron_horizontal_with_connection(build_D_B(fs), build_connection(fs), fs)
            .left_mul(gammas().gamma_X_lift);

    MatrixDiffOp lhs = anticommutator(vert, horiz);
    MatrixDiffOp diff = lhs - anticommutator_rhs();
    rep.add("full_identity", diff.residual(), 1e-13);

    // second-order terms of the anticommutator cancel identically
    double second = 0.0;
    for (const auto& [d, m] : lhs.terms())
        if (deriv_order(d) == 2) second = std::max(second, trig_residual(m));
    rep.add("second_order_cancellation", second, 1e-13);

    // control: dropping the theta_2 half of the vertical operator breaks it
    MatrixDiffOp broken = anticommutator(vertical_half_lift(0), horiz);
    rep.add_control("mutated_vertical_detected",
                    (broken - anticommutator_rhs()).residual(), 1e-3);
    return rep;
}

// --- local positivity ----------------------------------------------------------

// symbolic sum-of-squares decomposition behind the positivity bound:
//   (D_V' + (i/2) gX T')(D_V' - (i/2) gX T')
// + (D_V'' - (i/2) gX T'')(D_V'' + (i/2) gX T'')
//   = D_V^2 + (1/4)(T'^2 + T''^2) + {D_V, gX D}
inline double sum_of_squares_residual() {
    const auto& G = gammas();
    FibrationSpec fs = sphere_fibration();
    MatrixDiffOp vert = kron_vertical(build_D_V(fs));
    MatrixDiffOp horiz =
        kron_horizontal_with_connection(build_D_B(fs), build_connection(fs), fs)
            .left_mul(G.gamma_X_lift);

    TrigMat gx = lift_const(G.gamma_X);
    auto half = [&](int which, double sign) {
        MatrixDiffOp p = vertical_half_lift(which);
        MatrixDiffOp q(4);
        q.add_term({0, 0, 0, 0}, trig_kron(base_T_matrix(which), gx));
        q *= sign * 0.5 * kI;
        return p + q;
    };
    MatrixDiffOp lhs = compose(half(0, +1.0), half(0, -1.0)) +
                       compose(half(1, -1.0), half(1, +1.0));

    MatrixDiffOp rhs = compose(vert, vert) + anticommutator(vert, horiz);
    TrigMat tsq = TrigMat(base_T_matrix(0) * base_T_matrix(0) +
                          base_T_matrix(1) * base_T_matrix(1));
    MatrixDiffOp mult(4);
    TrigMat id2 = trig_identity(2);
    mult.add_term({0, 0, 0, 0}, trig_kron(tsq, id2));
    mult *= 0.25;
    rhs += mult;
    return (lhs - rhs).residual();
}

// scalar identity (1/4)(T'^2 + T''^2)
//   = (1/4)(tan^2 phi / cos^2 psi + 2 tan^2 psi + cot^2 phi / cos^2 psi) . 1
inline double t_square_scalar_residual() {
    TrigMat tsq = TrigMat(base_T_matrix(0) * base_T_matrix(0) +
                          base_T_matrix(1) * base_T_matrix(1));
    TLF scalar = tan_phi() * tan_phi() * cos_psi(-2) +
                 2.0 * (tan_psi() * tan_psi()) +
                 cot_phi() * cot_phi() * cos_psi(-2);
    TrigMat expect = lift_const(Eigen::Matrix2cd::Identity(), scalar);
    return trig_residual(TrigMat(tsq - expect));
}

inline VerificationReport verify_local_positivity(const LocalizingElement& x,
                                                  int trials = 100,
                                                  GridSpec grid = {32, 32},
                                                  int modeN = 3,
                                                  unsigned seed = 2024) {
    VerificationReport rep;
    ReportTimer timer(rep);
    rep.suite = "positivity";
    x.validate();
    rep.params["trials"] = trials;
    rep.params["grid"] = grid.nphi;
    rep.params["modes"] = modeN;
    rep.params["seed"] = seed;

    rep.add("sum_of_squares_identity", sum_of_squares_residual(), 1e-13);
    rep.add("t_square_scalar_identity", t_square_scalar_residual(), 1e-13);

    double kappa = kappa_bound(x);
    rep.params["kappa"] = kappa;

    FibrationSpec fs = sphere_fibration();
    MatrixDiffOp vert = kron_vertical(build_D_V(fs));
    MatrixDiffOp total = tensor_sum_raw(fs);
    Eigen::VectorXd W = weight_diagonal(grid, weight_S4(), 4);

    Grid1D gp = grid.phi(), gq = grid.psi();
    const int s = 4;
    // bump values per unknown, and the strict support index set
    Eigen::VectorXd bump(grid.nodes() * s);
    std::vector<int> supp;
    for (int i = 0; i < grid.nphi; ++i)
        for (int j = 0; j < grid.npsi; ++j) {
            double b = x.value(gp.nodes(i), gq.nodes(j));
            for (int c = 0; c < s; ++c) {
                int idx = (i * grid.npsi + j) * s + c;
                bump(idx) = b;
                if (b > 0.0) supp.push_back(idx);
            }
        }
    if (supp.empty()) throw EmptySupport("support contains no grid node");

    double hphi = gp.nodes(1) - gp.nodes(0);
    double hpsi = gq.nodes(1) - gq.nodes(0);
    double h2 = std::max(hphi, hpsi) * std::max(hphi, hpsi);

    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    double worst_margin = std::numeric_limits<double>::infinity();
    double worst_eig = std::numeric_limits<double>::infinity();
    int failures = 0;

    for (auto [n1, n2] : ModeSet(modeN)) {
        SparseC A = assemble_numeric(vert, grid, n1, n2);
        SparseC C = assemble_numeric(total, grid, n1, n2);
        // random localized trial sections
        int per_mode = std::max(1, trials / int(ModeSet(modeN).size()));
        for (int t = 0; t < per_mode; ++t) {
            Eigen::VectorXcd xi(grid.nodes() * s);
            for (int k = 0; k < xi.size(); ++k) xi(k) = Complex(g(rng), g(rng));
            Eigen::VectorXcd zeta = bump.cwiseProduct(xi.real()).cast<Complex>() +
                                    kI * bump.cwiseProduct(xi.imag()).cast<Complex>();
            double nz2 = (W.cwiseProduct(zeta.cwiseAbs2())).sum();
            if (nz2 == 0.0) continue;
            Eigen::VectorXcd az = A * zeta, cz = C * zeta;
            double lhs = 2.0 * (az.conjugate().cwiseProduct(W.cast<Complex>())
                                    .cwiseProduct(cz))
                                   .sum()
                                   .real();
            // discrete H^1 seminorm for the stencil-error allowance
            double h1 = 0.0;
            for (int c = 0; c < s; ++c) {
                Eigen::MatrixXcd comp(grid.nphi, grid.npsi);
                for (int i = 0; i < grid.nphi; ++i)
                    for (int j = 0; j < grid.npsi; ++j)
                        comp(i, j) = zeta((i * grid.npsi + j) * s + c);
                Eigen::MatrixXcd dphi = gp.d1 * comp;
                Eigen::MatrixXcd dpsi = comp * gq.d1.transpose();
                h1 += dphi.squaredNorm() * hphi * hpsi +
                      dpsi.squaredNorm() * hphi * hpsi;
            }
            double allowance = 10.0 * h2 * std::sqrt(h1);
            double margin = lhs + kappa * nz2 + allowance;
            worst_margin = std::min(worst_margin, margin / nz2);
            if (margin < 0.0) ++failures;
        }

        // eigenvalue check of the localized symmetrized form on the support:
        // only the support columns of the sparse operators are needed
        const int m = int(supp.size());
        SparseC As(A.rows(), m), Cs(C.rows(), m);
        {
            std::vector<Eigen::Triplet<Complex>> ta, tc;
            for (int b = 0; b < m; ++b) {
                for (SparseC::InnerIterator it(A, supp[b]); it; ++it)
                    ta.emplace_back(int(it.row()), b, it.value());
                for (SparseC::InnerIterator it(C, supp[b]); it; ++it)
                    tc.emplace_back(int(it.row()), b, it.value());
            }
            As.setFromTriplets(ta.begin(), ta.end());
            Cs.setFromTriplets(tc.begin(), tc.end());
        }
        SparseC WCs = W.asDiagonal() * Cs;
        SparseC WAs = W.asDiagonal() * As;
        Eigen::MatrixXcd Fs = Eigen::MatrixXcd(SparseC(As.adjoint() * WCs)) +
                              Eigen::MatrixXcd(SparseC(Cs.adjoint() * WAs));
        Eigen::MatrixXd Ws = Eigen::MatrixXd::Zero(m, m);
        for (int a = 0; a < m; ++a) Ws(a, a) = W(supp[a]);
        Fs = 0.5 * (Fs + Fs.adjoint()).eval();
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            Fs, Ws.cast<Complex>());
        worst_eig = std::min(worst_eig, es.eigenvalues().minCoeff());
    }

    rep.params["failures"] = failures;
    rep.add("random_sections_all_pass", double(failures), 0.5);
    rep.add("worst_margin_nonnegative", -worst_margin, 0.0);
    // localized symmetrized form bounded below by -kappa within 5%
    rep.add("localized_min_eigenvalue", -worst_eig, kappa * 1.05);
    rep.params["min_eigenvalue"] = worst_eig;

    // trivial control: a mode (0,0) section gives zero left side
    {
        SparseC A = assemble_numeric(vert, grid, 0, 0);
        Eigen::VectorXcd zeta = bump.cast<Complex>();
        rep.add("mode_zero_left_side_vanishes", (A * zeta).norm(), 1e-13);
    }
    return rep;
}

// --- Garding-type ratio ---------------------------------------------------------

// sup over localized trial sections of |D_V zeta| / (|zeta| + |(D_V x D) zeta|);
// the constant is measured, not asserted -- the pass criterion is stability
// (drift below 10%) across a grid refinement sequence.
inline VerificationReport verify_garding(const LocalizingElement& x, int trials = 24,
                                         int modeN = 2, unsigned seed = 2024) {
    VerificationReport rep;
    ReportTimer timer(rep);
    rep.suite = "garding";
    x.validate();
    rep.params["trials"] = trials;
    rep.params["modes"] = modeN;
    rep.params["seed"] = seed;

    FibrationSpec fs = sphere_fibration();
    MatrixDiffOp vert = kron_vertical(build_D_V(fs));
    MatrixDiffOp total = tensor_sum_raw(fs);
    const int s = 4;

    // smooth trial profiles fixed across the refinement sequence
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_int_distribution<int> freq(1, 3);
    struct Profile {
        double a[4], b[4];
        int p[4], q[4];
    };
    std::vector<Profile> profiles(trials);
    for (auto& pr : profiles)
        for (int c = 0; c < 4; ++c) {
            pr.a[c] = amp(rng);
            pr.b[c] = amp(rng);
            pr.p[c] = freq(rng);
            pr.q[c] = freq(rng);
        }

    auto measure = [&](const GridSpec& grid) {
        Grid1D gp = grid.phi(), gq = grid.psi();
        Eigen::VectorXd W = weight_diagonal(grid, weight_S4(), s);
        Eigen::VectorXd sq = W.cwiseSqrt();
        double best = 0.0;
        for (auto [n1, n2] : ModeSet(modeN)) {
            SparseC A = assemble_numeric(vert, grid, n1, n2);
            SparseC C = assemble_numeric(total, grid, n1, n2);
            for (const auto& pr : profiles) {
                Eigen::VectorXcd zeta(grid.nodes() * s);
                for (int i = 0; i < grid.nphi; ++i)
                    for (int j = 0; j < grid.npsi; ++j) {
                        double phi = gp.nodes(i), psi = gq.nodes(j);
                        double b = x.value(phi, psi);
                        for (int c = 0; c < s; ++c)
                            zeta((i * grid.npsi + j) * s + c) =
                                b * Complex(pr.a[c] * std::sin(pr.p[c] * phi),
                                            pr.b[c] * std::sin(pr.q[c] * psi));
                    }
                double nz = sq.cwiseProduct(zeta.cwiseAbs()).norm();
                if (nz == 0.0) continue;
                double na = sq.cwiseProduct((A * zeta).cwiseAbs()).norm();
                double nc = sq.cwiseProduct((C * zeta).cwiseAbs()).norm();
                best = std::max(best, na / (nz + nc));
            }
        }
        return best;
    };

    double c16 = measure({16, 16});
    double c32 = measure({32, 32});
    double c64 = measure({64, 64});
    rep.params["C_16"] = c16;
    rep.params["C_32"] = c32;
    rep.params["C_64"] = c64;
    rep.add("ratio_bounded", c64, 1e3);
    rep.add("refinement_drift", std::abs(c64 - c32) / std::max(c32, 1e-12), 0.10);

    // mode (0,0) sections give ratio zero
    {
        GridSpec grid{16, 16};
        SparseC A = assemble_numeric(vert, grid, 0, 0);
        Eigen::VectorXcd zeta = Eigen::VectorXcd::Ones(grid.nodes() * s);
        rep.add("mode_zero_ratio_vanishes", (A * zeta).norm(), 1e-13);
    }
    return rep;
}

// --- curvature obstruction --------------------------------------------------------

// Delta = tensor_sum(spec) - frame_Dirac(spec): verified to be a zeroth-order
// multiplication operator, zero when the connection curvature vanishes, and
// proportional to the Clifford cube sum_{i<j,a} Omega(e_i,e_j,f_a) g^i g^j g^a
// otherwise; the measured proportionality constant is reported against 1/8.
inline VerificationReport verify_curvature_obstruction(const FibrationSpec& fs) {
    VerificationReport rep;
    ReportTimer timer(rep);
    rep.suite = "curvature";
    fs.validate();

    const auto& G = gammas();
    MatrixDiffOp delta = tensor_sum(fs) - build_D_frame(fs);
    std::array<TLF, 2> omega = curvature_form(fs);
    bool flat = omega[0].is_zero() && omega[1].is_zero();
    rep.params["curvature_vanishes"] = flat ? 1.0 : 0.0;

    double deriv = 0.0;
    for (const auto& [d, m] : delta.terms())
        if (deriv_order(d) > 0) deriv = std::max(deriv, trig_residual(m));
    rep.add("obstruction_is_multiplication", deriv, 1e-13);

    if (flat) {
        rep.add("flat_connection_vanishing", delta.residual(), 1e-13);
        return rep;
    }

    // gamma-cube: only the horizontal pair (e_3, e_4) contributes on a 2D base
    MatrixDiffOp cube(4);
    const Eigen::Matrix4cd gg[2] = {G.gamma3 * G.gamma4 * G.gamma1,
                                    G.gamma3 * G.gamma4 * G.gamma2};
    for (int a = 0; a < 2; ++a)
        if (!omega[a].is_zero()) cube.add_term({0, 0, 0, 0}, lift_const(gg[a], omega[a]));

    // measure the proportionality constant at a reference base point
    Eigen::Matrix4cd dval = delta.eval_multiplicative(0.7, 0.3);
    Eigen::Matrix4cd cval = cube.eval_multiplicative(0.7, 0.3);
    Complex c = (cval.adjoint() * dval).trace() / (cval.adjoint() * cval).trace();
    rep.params["constant_re"] = c.real();
    rep.params["constant_im"] = c.imag();
    rep.params["constant_abs"] = std::abs(c);

    MatrixDiffOp scaled = cube;
    scaled *= c;
    rep.add("gamma_cube_proportionality", (delta - scaled).residual(), 1e-13);
    // The modulus is compared against 1/8 and any mismatch is flagged rather
    // than absorbed: the cube convention here sums each frame pair once, so a
    // conventions-only offset shows up as a factor of two in this entry.
    rep.add("constant_matches_one_eighth", std::abs(std::abs(c) - 0.125), 1e-12);
    return rep;
}

// the synthetic flat-metric spec with a non-closed connection form
inline FibrationSpec synthetic_curved_fibration() {
    FibrationSpec fs;
    fs.h1 = tlf_one();
    fs.h2 = tlf_one();
    fs.b_u = tlf_one();
    fs.b_v = tlf_one();
    fs.A_u[0] = sin_psi();  // a first coordinate connection with dA != 0
    return fs;
}

// a flat-metric spec with a closed, non-constant connection form
inline FibrationSpec closed_connection_fibration() {
    FibrationSpec fs;
    fs.h1 = tlf_one();
    fs.h2 = tlf_one();
    fs.b_u = tlf_one();
    fs.b_v = tlf_one();
    fs.A_u[0] = sin_phi();
    fs.A_u[1] = cos_phi(2);
    return fs;
}

// --- torus property suite ----------------------------------------------------

// Randomized algebraic properties of the torus polynomial algebra:
// associativity, the generator exchange relation, the involution laws, and
// the trace (positivity, faithfulness on truncations, orthonormality of the
// basis unitaries).
inline VerificationReport verify_torus(int trials = 1000, unsigned seed = 2024) {
    VerificationReport rep;
    ReportTimer timer(rep);
    rep.suite = "torus";
    rep.params["trials"] = trials;
    rep.params["seed"] = seed;

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_int_distribution<int> mode(-3, 3);
    std::uniform_int_distribution<int> nterms(1, 4);

    double r_assoc = 0.0, r_gen = 0.0, r_star = 0.0, r_trace = 0.0, r_ortho = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int dim = (t % 4 == 3) ? 3 : 2;
        Eigen::MatrixXd th = Eigen::MatrixXd::Zero(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < i; ++j) {
                th(i, j) = unif(rng);
                th(j, i) = -th(i, j);
            }
        DeformationMatrix dm(th);
        auto random_poly = [&] {
            TorusPoly x(dm);
            const int m = nterms(rng);
            for (int i = 0; i < m; ++i) {
                TorusPoly::Mode k(dim);
                for (int j = 0; j < dim; ++j) k[j] = mode(rng);
                x += TorusPoly::unitary(dm, k, Complex(unif(rng), unif(rng)));
            }
            return x;
        };
        TorusPoly x = random_poly(), y = random_poly(), z = random_poly();
        r_assoc = std::max(r_assoc, ((x * y) * z - x * (y * z)).residual());

        // U_m U_l = e^{2 pi i th_ml} U_l U_m on basis unitaries
        TorusPoly::Mode km(dim), kl(dim);
        for (int j = 0; j < dim; ++j) {
            km[j] = mode(rng);
            kl[j] = mode(rng);
        }
        TorusPoly um = TorusPoly::unitary(dm, km), ul = TorusPoly::unitary(dm, kl);
        double angle = dm.phase(km, kl) - dm.phase(kl, km);
        TorusPoly lhs = um * ul;
        TorusPoly rhs = ul * um;
        rhs *= std::exp(Complex(0.0, 1.0) * angle);
        r_gen = std::max(r_gen, (lhs - rhs).residual());

        // involution: (xy)* = y* x*, x** = x, and unitarity of U^k
        r_star = std::max(r_star, ((x * y).star() - y.star() * x.star()).residual());
        r_star = std::max(r_star, (x.star().star() - x).residual());
        r_star = std::max(r_star,
                          (um.star() * um - TorusPoly::one(dm)).residual());

        // trace: tau(x* x) = sum of |coefficient|^2, strictly positive
        double sum2 = 0.0;
        for (const auto& [k, c] : x.terms()) sum2 += std::norm(c);
        Complex tr = (x.star() * x).trace();
        r_trace = std::max(r_trace, std::abs(tr - sum2));
        if (sum2 > 1e-6 && !(tr.real() > 0.0)) r_trace = std::max(r_trace, 1.0);

        // orthonormality: tau((U^k)* U^l) = delta_kl
        Complex onb = (um.star() * ul).trace();
        r_ortho = std::max(r_ortho, std::abs(onb - (km == kl ? 1.0 : 0.0)));
    }
    rep.add("associativity", r_assoc, 1e-13);
    rep.add("generator_relation", r_gen, 1e-13);
    rep.add("involution", r_star, 1e-13);
    rep.add("trace_positivity_faithfulness", r_trace, 1e-13);
    rep.add("basis_orthonormality", r_ortho, 1e-13);

    // trace positivity seen through GNS truncations: the operator norm
    // dominates |tau| and vector states of pi(x* x) are nonnegative
    double r_gns = 0.0;
    std::mt19937 rng2(seed + 1);
    for (int t = 0; t < 8; ++t) {
        DeformationMatrix dm = DeformationMatrix::dim2(unif(rng2));
        TorusPoly x(dm);
        for (int i = 0; i < 3; ++i) {
            TorusPoly::Mode k{mode(rng2), mode(rng2)};
            x += TorusPoly::unitary(dm, k, Complex(unif(rng2), unif(rng2)));
        }
        TruncatedGNSRep rep6(dm, 6);
        Eigen::MatrixXcd m = rep6.matrix(x.star() * x);
        Eigen::VectorXd diag = m.diagonal().real();
        r_gns = std::max(r_gns, std::max(0.0, -diag.minCoeff()));
        double nx = rep6.norm(x);
        r_gns = std::max(r_gns, std::max(0.0, std::abs(x.trace()) - nx));
    }
    rep.add("gns_truncation_positivity", r_gns, 1e-13);
    return rep;
}

// --- deformed sphere relations -----------------------------------------------

// The deformed generator relations as functions on the quadrant, plus the
// represented radius identity pi(a)* pi(a) + pi(b)* pi(b) + pi(x)^2 = Id on
// sections whose populated modes stay interior to the mode box.
inline VerificationReport verify_sphere_relations(
    const std::vector<double>& thetas = {0.0, 1.0 / 3.0, 0.5, 0.237},
    unsigned seed = 2024) {
    VerificationReport rep;
    ReportTimer timer(rep);
    rep.suite = "sphere-relations";
    rep.params["seed"] = seed;

    GridSpec grid{12, 12};
    const int N = 4;  // mode box; populated modes stay within |k| <= N - 2
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);

    for (double theta : thetas) {
        SphereRelationResiduals r = sphere_relations_check(theta);
        double ring = std::max({r.a_normal, r.b_normal, r.ab_commutation,
                                r.ax_central, r.bx_central, r.radius});
        auto [a, b, x] = deformed_sphere_generators(theta);
        DeformedElement radius =
            a.star() * a + b.star() * b + x * x - DeformedElement::one(theta);

        double op = 0.0;
        for (int trial = 0; trial < 4; ++trial) {
            ModeSection xi(N, grid.nodes());
            for (int k1 = -(N - 2); k1 <= N - 2; ++k1)
                for (int k2 = -(N - 2); k2 <= N - 2; ++k2) {
                    auto seg = xi.mode(k1, k2);
                    for (int i = 0; i < seg.size(); ++i)
                        seg(i) = Complex(g(rng), g(rng));
                }
            double nrm = xi.data.norm();
            ModeSection out =
                apply_pi(a.star(), apply_pi(a, xi, grid, 1), grid, 1);
            out.data += apply_pi(b.star(), apply_pi(b, xi, grid, 1), grid, 1).data;
            out.data += apply_pi(x, apply_pi(x, xi, grid, 1), grid, 1).data;
            op = std::max(op, (out.data - xi.data).norm() / nrm);
        }
        std::string tag = "theta_" + std::to_string(theta);
        rep.add("relations_" + tag, ring, 1e-12);
        rep.add("radius_identity_" + tag, op, 1e-12);

        if (theta == 0.0) {
            // at theta = 0 the deformed product is plain multiplication:
            // pi(ab) and pi(a)pi(b) agree to rounding
            ModeSection xi(N, grid.nodes());
            for (int k1 = -(N - 2); k1 <= N - 2; ++k1)
                for (int k2 = -(N - 2); k2 <= N - 2; ++k2) {
                    auto seg = xi.mode(k1, k2);
                    for (int i = 0; i < seg.size(); ++i)
                        seg(i) = Complex(g(rng), g(rng));
                }
            ModeSection prod = apply_pi(a * b, xi, grid, 1);
            ModeSection comp = apply_pi(a, apply_pi(b, xi, grid, 1), grid, 1);
            rep.add("classical_degeneration",
                    (prod.data - comp.data).norm() / xi.data.norm(), 1e-14);
        }
    }
    return rep;
}

}  // namespace ncs
