#pragma once

// Exact coefficient ring of trigonometric Laurent functions on the open
// quadrant (0,pi/2) x (-pi/2,pi/2) times the 2-torus.  A term is
//
//   coeff * e^{i n1 th1} e^{i n2 th2} cos^a(phi) sin^b(phi) cos^c(psi) sin^d(psi)
//
// with integer (possibly negative) exponents.  No Pythagorean relation is
// imposed; normal form is coefficient-sorted by exponent tuple with terms
// below the ring zero-threshold dropped.

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <ostream>

#include "ncsphere/errors.hpp"

namespace ncs {

using Complex = std::complex<double>;

// zero-threshold of the ring: coefficients at or below this magnitude are
// dropped during normalization, and is_zero() compares residuals against it.
inline constexpr double kRingZeroTol = 1e-13;

// exponent tuple (n1, n2, a, b, c, d)
using TrigExp = std::array<int, 6>;

enum class Var { Theta1 = 0, Theta2 = 1, Phi = 2, Psi = 3 };

class TrigLaurentFun {
   public:
    using TermMap = std::map<TrigExp, Complex>;

    TrigLaurentFun() = default;
    // scalar embeddings (also required by Eigen's Scalar concept)
    TrigLaurentFun(double v) { insert({0, 0, 0, 0, 0, 0}, Complex(v, 0.0)); }
    TrigLaurentFun(int v) { insert({0, 0, 0, 0, 0, 0}, Complex(double(v), 0.0)); }
    TrigLaurentFun(const Complex& v) { insert({0, 0, 0, 0, 0, 0}, v); }

    static TrigLaurentFun monomial(const Complex& coeff, int n1, int n2, int a, int b,
                                   int c, int d) {
        TrigLaurentFun f;
        f.insert({n1, n2, a, b, c, d}, coeff);
        return f;
    }

    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    // largest coefficient magnitude; 0 for the zero element
    double residual() const {
        double r = 0.0;
        for (const auto& [e, c] : terms_) r = std::max(r, std::abs(c));
        return r;
    }
    bool is_zero() const { return residual() <= kRingZeroTol; }

    bool is_monomial() const { return terms_.size() == 1; }

    // true when every term has theta-mode (0,0)
    bool theta_independent() const {
        for (const auto& [e, c] : terms_)
            if (e[0] != 0 || e[1] != 0) return false;
        return true;
    }

    TrigLaurentFun& operator+=(const TrigLaurentFun& o) {
        for (const auto& [e, c] : o.terms_) insert(e, c);
        return *this;
    }
    TrigLaurentFun& operator-=(const TrigLaurentFun& o) {
        for (const auto& [e, c] : o.terms_) insert(e, -c);
        return *this;
    }
    TrigLaurentFun& operator*=(const Complex& s) {
        if (std::abs(s) <= kRingZeroTol) {
            terms_.clear();
            return *this;
        }
        TermMap out;
        for (const auto& [e, c] : terms_) {
            Complex v = c * s;
            if (std::abs(v) > kRingZeroTol) out.emplace(e, v);
        }
        terms_ = std::move(out);
        return *this;
    }

    friend TrigLaurentFun operator+(TrigLaurentFun a, const TrigLaurentFun& b) {
        a += b;
        return a;
    }
    friend TrigLaurentFun operator-(TrigLaurentFun a, const TrigLaurentFun& b) {
        a -= b;
        return a;
    }
    friend TrigLaurentFun operator-(const TrigLaurentFun& a) {
        TrigLaurentFun r;
        for (const auto& [e, c] : a.terms_) r.insert(e, -c);
        return r;
    }

    friend TrigLaurentFun operator*(const TrigLaurentFun& a, const TrigLaurentFun& b) {
        TrigLaurentFun r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                TrigExp e;
                for (int i = 0; i < 6; ++i) e[i] = ea[i] + eb[i];
                r.insert(e, ca * cb);
            }
        return r;
    }
    TrigLaurentFun& operator*=(const TrigLaurentFun& o) { return *this = *this * o; }

    friend bool operator==(const TrigLaurentFun& a, const TrigLaurentFun& b) {
        return (a - b).is_zero();
    }
    friend bool operator!=(const TrigLaurentFun& a, const TrigLaurentFun& b) {
        return !(a == b);
    }

    // complex conjugate: flips the torus mode, conjugates coefficients
    TrigLaurentFun conjugate() const {
        TrigLaurentFun r;
        for (const auto& [e, c] : terms_)
            r.insert({-e[0], -e[1], e[2], e[3], e[4], e[5]}, std::conj(c));
        return r;
    }

    TrigLaurentFun derivative(Var v) const {
        TrigLaurentFun r;
        const Complex I(0.0, 1.0);
        for (const auto& [e, c] : terms_) {
            switch (v) {
                case Var::Theta1:
                    r.insert(e, I * double(e[0]) * c);
                    break;
                case Var::Theta2:
                    r.insert(e, I * double(e[1]) * c);
                    break;
                case Var::Phi:
                    // d/dphi cos^a sin^b = -a cos^{a-1} sin^{b+1} + b cos^{a+1} sin^{b-1}
                    if (e[2] != 0)
                        r.insert({e[0], e[1], e[2] - 1, e[3] + 1, e[4], e[5]},
                                 -double(e[2]) * c);
                    if (e[3] != 0)
                        r.insert({e[0], e[1], e[2] + 1, e[3] - 1, e[4], e[5]},
                                 double(e[3]) * c);
                    break;
                case Var::Psi:
                    if (e[4] != 0)
                        r.insert({e[0], e[1], e[2], e[3], e[4] - 1, e[5] + 1},
                                 -double(e[4]) * c);
                    if (e[5] != 0)
                        r.insert({e[0], e[1], e[2], e[3], e[4] + 1, e[5] - 1},
                                 double(e[5]) * c);
                    break;
            }
        }
        return r;
    }

    Complex eval(double th1, double th2, double phi, double psi) const {
        Complex s(0.0, 0.0);
        for (const auto& [e, c] : terms_) {
            double ph = e[0] * th1 + e[1] * th2;
            double mag = ipow(std::cos(phi), e[2]) * ipow(std::sin(phi), e[3]) *
                         ipow(std::cos(psi), e[4]) * ipow(std::sin(psi), e[5]);
            s += c * mag * Complex(std::cos(ph), std::sin(ph));
        }
        return s;
    }

    // evaluation with the torus phase stripped (theta = 0); the reduced
    // function on the quadrant used by the numeric backend
    Complex eval_base(double phi, double psi) const { return eval(0.0, 0.0, phi, psi); }

    // Exact integral over [0,2pi]^2 x (0,pi/2) x (-pi/2,pi/2) via the Beta
    // function.  Terms with nonzero torus mode integrate to 0; surviving
    // monomials must have all trig exponents > -1.
    Complex integrate_quadrant() const {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        Complex s(0.0, 0.0);
        for (const auto& [e, c] : terms_) {
            if (e[0] != 0 || e[1] != 0) continue;
            if (e[2] <= -1 || e[3] <= -1 || e[4] <= -1 || e[5] <= -1)
                throw NonIntegrable("monomial exponent <= -1 on the open quadrant");
            if (e[5] % 2 != 0) continue;  // odd in sin(psi) over (-pi/2, pi/2)
            double iphi = 0.5 * std::beta(0.5 * (e[2] + 1), 0.5 * (e[3] + 1));
            double ipsi = std::beta(0.5 * (e[4] + 1), 0.5 * (e[5] + 1));
            s += c * two_pi * two_pi * iphi * ipsi;
        }
        return s;
    }

    // multiplicative inverse, defined for single-term elements only
    TrigLaurentFun monomial_inverse() const {
        if (terms_.size() != 1)
            throw SingularCoefficient("inverse requires a single-term element");
        const auto& [e, c] = *terms_.begin();
        return monomial(1.0 / c, -e[0], -e[1], -e[2], -e[3], -e[4], -e[5]);
    }

    // d/dv(w)/w for a single-term w; stays in the ring (e.g. cot - tan)
    TrigLaurentFun dlog(Var v) const {
        if (terms_.size() != 1) throw SingularCoefficient("dlog requires a monomial");
        return derivative(v) * monomial_inverse();
    }

    friend std::ostream& operator<<(std::ostream& os, const TrigLaurentFun& f) {
        if (f.terms_.empty()) return os << "0";
        bool first = true;
        for (const auto& [e, c] : f.terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag())
               << "i)";
            const char* names[6] = {"e1^", "e2^", "cF^", "sF^", "cP^", "sP^"};
            for (int i = 0; i < 6; ++i)
                if (e[i] != 0) os << names[i] << e[i];
        }
        return os;
    }

   private:
    static double ipow(double x, int n) {
        if (n == 0) return 1.0;
        return std::pow(x, n);
    }

    void insert(const TrigExp& e, const Complex& c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (std::abs(c) > kRingZeroTol) terms_.emplace(e, c);
        } else {
            it->second += c;
            if (std::abs(it->second) <= kRingZeroTol) terms_.erase(it);
        }
    }

    TermMap terms_;
};

using TLF = TrigLaurentFun;

// convenience generators
inline TLF tlf_one() { return TLF::monomial(1.0, 0, 0, 0, 0, 0, 0); }
inline TLF tlf_phase(int n1, int n2) { return TLF::monomial(1.0, n1, n2, 0, 0, 0, 0); }
inline TLF cos_phi(int p = 1) { return TLF::monomial(1.0, 0, 0, p, 0, 0, 0); }
inline TLF sin_phi(int p = 1) { return TLF::monomial(1.0, 0, 0, 0, p, 0, 0); }
inline TLF cos_psi(int p = 1) { return TLF::monomial(1.0, 0, 0, 0, 0, p, 0); }
inline TLF sin_psi(int p = 1) { return TLF::monomial(1.0, 0, 0, 0, 0, 0, p); }
inline TLF tan_phi() { return TLF::monomial(1.0, 0, 0, -1, 1, 0, 0); }
inline TLF cot_phi() { return TLF::monomial(1.0, 0, 0, 1, -1, 0, 0); }
inline TLF tan_psi() { return TLF::monomial(1.0, 0, 0, 0, 0, -1, 1); }

// Integration weights on the quadrant.  A WeightFun is a theta-independent
// real positive monomial so that dlog stays in the ring.
class WeightFun {
   public:
    explicit WeightFun(const TLF& w) : w_(w) {
        if (!w.is_monomial() || !w.theta_independent())
            throw SingularCoefficient("weight must be a theta-independent monomial");
    }
    const TLF& fun() const { return w_; }
    TLF dlog(Var v) const { return w_.dlog(v); }
    double eval(double phi, double psi) const { return w_.eval_base(phi, psi).real(); }

   private:
    TLF w_;
};

// the three built-in weights: vertical, base and total volume weight
inline WeightFun weight_X() { return WeightFun(sin_phi() * cos_phi() * cos_psi(2)); }
inline WeightFun weight_B() { return WeightFun(cos_psi()); }
inline WeightFun weight_S4() { return WeightFun(sin_phi() * cos_phi() * cos_psi(3)); }

}  // namespace ncs
