#pragma once

// Isospectral deformation along the torus action.  A deformed element is a
// finite sum  x = sum_l f_l U^l  with torus mode l in Z^2, reduced (theta
// free) coefficient functions f_l on the base quadrant, and the deformed
// product
//
//   (f U^l)(g U^k) = e^{i phase(l, k)} f g U^{l+k},
//   phase(l, k) = -2 pi theta l_2 k_1,
//
// matching the 2-torus convention with deformation parameter theta = th_12.
// The representation pi acts on sections carried by a finite mode box and a
// base grid; modes pushed outside the box raise ModeOverflow.

#include <Eigen/SparseCore>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>

#include "ncsphere/assemble.hpp"
#include "ncsphere/geometry.hpp"

namespace ncs {

class DeformedElement {
   public:
    using Mode = std::array<int, 2>;
    using TermMap = std::map<Mode, TLF>;

    explicit DeformedElement(double theta) : theta_(theta) {}

    // decompose a ring function into torus modes with reduced coefficients
    static DeformedElement from_function(const TLF& f, double theta) {
        DeformedElement x(theta);
        for (const auto& [e, c] : f.terms()) {
            TLF red = TLF::monomial(c, 0, 0, e[2], e[3], e[4], e[5]);
            x.insert({e[0], e[1]}, red);
        }
        return x;
    }
    static DeformedElement one(double theta) {
        return from_function(tlf_one(), theta);
    }

    double theta() const { return theta_; }
    const TermMap& terms() const { return terms_; }

    int degree() const {
        int d = 0;
        for (const auto& [l, f] : terms_)
            d = std::max({d, std::abs(l[0]), std::abs(l[1])});
        return d;
    }

    static double phase(double theta, const Mode& l, const Mode& k) {
        return -2.0 * std::numbers::pi * theta * double(l[1]) * double(k[0]);
    }

    DeformedElement& operator*=(const Complex& s) {
        TermMap out;
        for (auto& [l, f] : terms_) {
            TLF g = f;
            g *= s;
            if (!g.is_zero()) out.emplace(l, g);
        }
        terms_ = std::move(out);
        return *this;
    }

    DeformedElement& operator+=(const DeformedElement& o) {
        require_same(o);
        for (const auto& [l, f] : o.terms_) insert(l, f);
        return *this;
    }
    DeformedElement& operator-=(const DeformedElement& o) {
        require_same(o);
        for (const auto& [l, f] : o.terms_) insert(l, -f);
        return *this;
    }
    friend DeformedElement operator+(DeformedElement a, const DeformedElement& b) {
        return a += b;
    }
    friend DeformedElement operator-(DeformedElement a, const DeformedElement& b) {
        return a -= b;
    }

    friend DeformedElement operator*(const DeformedElement& a, const DeformedElement& b) {
        a.require_same(b);
        const Complex i(0.0, 1.0);
        DeformedElement r(a.theta_);
        for (const auto& [l, f] : a.terms_)
            for (const auto& [k, g] : b.terms_) {
                TLF fg = f * g;
                fg *= std::exp(i * phase(a.theta_, l, k));
                r.insert({l[0] + k[0], l[1] + k[1]}, fg);
            }
        return r;
    }

    DeformedElement star() const {
        const Complex i(0.0, 1.0);
        DeformedElement r(theta_);
        for (const auto& [l, f] : terms_) {
            TLF g = f.conjugate();
            g *= std::exp(i * phase(theta_, l, l));
            r.insert({-l[0], -l[1]}, g);
        }
        return r;
    }

    // largest coefficient magnitude over sample points of the quadrant; the
    // functional zero test (relations such as a*a + b*b + x^2 = 1 hold as
    // functions, not termwise in the ring)
    double residual_functional(int samples = 7) const {
        constexpr double pi = std::numbers::pi;
        double r = 0.0;
        for (const auto& [l, f] : terms_)
            for (int i = 0; i < samples; ++i)
                for (int j = 0; j < samples; ++j) {
                    double phi = (i + 0.5) * (pi / 2) / samples;
                    double psi = -pi / 2 + (j + 0.5) * pi / samples;
                    r = std::max(r, std::abs(f.eval_base(phi, psi)));
                }
        return r;
    }

   private:
    void require_same(const DeformedElement& o) const {
        if (theta_ != o.theta_)
            throw MismatchedDeformation("operands carry different deformations");
    }
    void insert(const Mode& l, const TLF& f) {
        auto it = terms_.find(l);
        if (it == terms_.end()) {
            if (!f.is_zero()) terms_.emplace(l, f);
        } else {
            it->second += f;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    double theta_;
    TermMap terms_;
};

// the deformed sphere generators
struct DeformedGenerators {
    DeformedElement a, b, x;
};

inline DeformedGenerators deformed_sphere_generators(double theta) {
    SphereGenerators g = sphere_generators();
    return {DeformedElement::from_function(g.a, theta),
            DeformedElement::from_function(g.b, theta),
            DeformedElement::from_function(g.x, theta)};
}

// residuals of the defining sphere relations at deformation theta
struct SphereRelationResiduals {
    double a_normal, b_normal, ab_commutation, ax_central, bx_central, radius;
};

inline SphereRelationResiduals sphere_relations_check(double theta) {
    auto [a, b, x] = deformed_sphere_generators(theta);
    const Complex i(0.0, 1.0);
    Complex lambda = std::exp(i * 2.0 * std::numbers::pi * theta);
    SphereRelationResiduals r;
    r.a_normal = (a * a.star() - a.star() * a).residual_functional();
    r.b_normal = (b * b.star() - b.star() * b).residual_functional();
    DeformedElement ab = a * b, ba = b * a;
    ba *= lambda;
    r.ab_commutation = (ab - ba).residual_functional();
    r.ax_central = (a * x - x * a).residual_functional();
    r.bx_central = (b * x - x * b).residual_functional();
    r.radius =
        (a.star() * a + b.star() * b + x * x - DeformedElement::one(theta))
            .residual_functional();
    return r;
}

// --- representation on mode sections --------------------------------------

// sections over the mode box |k|_inf <= N with a block of `block` unknowns
// (grid nodes x spinor components) per mode
struct ModeSection {
    int N, block;
    Eigen::VectorXcd data;

    ModeSection(int N_, int block_)
        : N(N_), block(block_), data(Eigen::VectorXcd::Zero(dim())) {}

    int side() const { return 2 * N + 1; }
    int dim() const { return side() * side() * block; }
    int offset(int k1, int k2) const {
        if (std::abs(k1) > N || std::abs(k2) > N)
            throw ModeOverflow("mode outside the section box");
        return ((k1 + N) * side() + (k2 + N)) * block;
    }
    Eigen::VectorBlock<Eigen::VectorXcd> mode(int k1, int k2) {
        return data.segment(offset(k1, k2), block);
    }
};

// pointwise multiplication matrix of a reduced coefficient on the grid
inline Eigen::VectorXcd coefficient_values(const TLF& f, const GridSpec& grid, int s) {
    Grid1D gphi = grid.phi();
    Grid1D gpsi = grid.psi();
    Eigen::VectorXcd v(grid.nodes() * s);
    for (int i = 0; i < grid.nphi; ++i)
        for (int j = 0; j < grid.npsi; ++j) {
            Complex c = f.eval_base(gphi.nodes(i), gpsi.nodes(j));
            for (int a = 0; a < s; ++a) v((i * grid.npsi + j) * s + a) = c;
        }
    return v;
}

// (pi(x) xi)_{l+k} += e^{i phase(l,k)} f_l . xi_k; raises ModeOverflow when a
// populated mode is pushed outside the box
inline ModeSection apply_pi(const DeformedElement& x, const ModeSection& xi,
                            const GridSpec& grid, int spinor) {
    const Complex i(0.0, 1.0);
    ModeSection out(xi.N, xi.block);
    std::map<DeformedElement::Mode, Eigen::VectorXcd> coeff;
    for (const auto& [l, f] : x.terms())
        coeff.emplace(l, coefficient_values(f, grid, spinor));
    for (int k1 = -xi.N; k1 <= xi.N; ++k1)
        for (int k2 = -xi.N; k2 <= xi.N; ++k2) {
            auto seg = xi.data.segment(xi.offset(k1, k2), xi.block);
            if (seg.cwiseAbs().maxCoeff() == 0.0) continue;
            for (const auto& [l, f] : x.terms()) {
                int t1 = k1 + l[0], t2 = k2 + l[1];
                if (std::abs(t1) > xi.N || std::abs(t2) > xi.N)
                    throw ModeOverflow("pi(x) pushes a populated mode outside the box");
                Complex ph = std::exp(i * DeformedElement::phase(x.theta(), l, {k1, k2}));
                out.mode(t1, t2) += ph * coeff.at(l).cwiseProduct(seg);
            }
        }
    return out;
}

// largest singular value of a sparse matrix in the inner product with
// diagonal weight w: power iteration on W^{1/2} A W^{-1/2}
inline double spectral_norm(const SparseC& a, const Eigen::VectorXd& w,
                            int iters = 300) {
    Eigen::VectorXd sq = w.cwiseSqrt();
    Eigen::VectorXcd x = Eigen::VectorXcd::Random(a.cols());
    x /= x.norm();
    double s = 0.0;
    for (int it = 0; it < iters; ++it) {
        Eigen::VectorXcd y = sq.cwiseProduct(a * sq.cwiseInverse().cwiseProduct(x));
        Eigen::VectorXcd z = sq.cwiseInverse().cwiseProduct(
            Eigen::VectorXcd(a.adjoint() * sq.cwiseProduct(y)));
        double n = z.norm();
        if (n == 0.0) return 0.0;
        z /= n;
        if (it > 20 && std::abs(std::sqrt(n) - s) <= 1e-11 * std::max(1.0, s)) {
            s = std::sqrt(n);
            break;
        }
        s = std::sqrt(n);
        x = z;
    }
    return s;
}

// Operator norm of [D, pi(x)] over the mode box |k|_inf <= N for an element
// supported on a single torus mode: the blocks H_k -> H_{k+l} have disjoint
// domains and ranges, so the norm is the largest block singular value.
inline double commutator_norm(const MatrixDiffOp& D, const DeformedElement& x,
                              const GridSpec& grid, int N, const WeightFun& w) {
    if (x.terms().size() != 1)
        throw UnsupportedSpec("commutator_norm requires a single-mode element");
    const auto& [l, f] = *x.terms().begin();
    const int s = D.size();
    Eigen::VectorXcd fv = coefficient_values(f, grid, s);
    Eigen::VectorXd wd = weight_diagonal(grid, w, s);
    SparseC M(fv.size(), fv.size());
    std::vector<Eigen::Triplet<Complex>> trip;
    for (int i = 0; i < fv.size(); ++i) trip.emplace_back(i, i, fv(i));
    M.setFromTriplets(trip.begin(), trip.end());

    double best = 0.0;
    std::map<std::pair<int, int>, SparseC> cache;
    auto op_at = [&](int k1, int k2) -> const SparseC& {
        auto key = std::pair{k1, k2};
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, assemble_numeric(D, grid, k1, k2)).first;
        return it->second;
    };
    for (int k1 = -N; k1 <= N; ++k1)
        for (int k2 = -N; k2 <= N; ++k2) {
            int t1 = k1 + l[0], t2 = k2 + l[1];
            if (std::abs(t1) > N || std::abs(t2) > N) continue;
            SparseC block = op_at(t1, t2) * M - M * op_at(k1, k2);
            best = std::max(best, spectral_norm(block, wd));
        }
    return best;
}

}  // namespace ncs
