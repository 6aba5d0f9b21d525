#pragma once

// Differential operators of order <= 2 in the commuting symbols
// (d/dth1, d/dth2, d/dphi, d/dpsi) with matrix-valued TrigLaurentFun
// coefficients.  Composition is Leibniz-correct; identities are checked by
// normalizing the difference and reading off the residual.

#include <Eigen/Dense>
#include <map>

#include "ncsphere/trig_laurent.hpp"

namespace Eigen {
template <>
struct NumTraits<ncs::TrigLaurentFun> : GenericNumTraits<ncs::TrigLaurentFun> {
    typedef ncs::TrigLaurentFun Real;
    typedef ncs::TrigLaurentFun NonInteger;
    typedef ncs::TrigLaurentFun Nested;
    typedef ncs::TrigLaurentFun Literal;
    enum {
        IsComplex = 0,  // conjugation is handled explicitly, never by Eigen
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 16,
        MulCost = 64
    };
    static inline Real epsilon() { return Real(ncs::kRingZeroTol); }
    static inline Real dummy_precision() { return Real(ncs::kRingZeroTol); }
    static inline int digits10() { return 15; }
};
}  // namespace Eigen

namespace ncs {

using TrigMat = Eigen::Matrix<TrigLaurentFun, Eigen::Dynamic, Eigen::Dynamic>;
using TrigVec = Eigen::Matrix<TrigLaurentFun, Eigen::Dynamic, 1>;

// derivative multi-index: orders in (th1, th2, phi, psi)
using DerivIndex = std::array<int, 4>;

inline int deriv_order(const DerivIndex& d) { return d[0] + d[1] + d[2] + d[3]; }

inline TrigMat trig_zero(int rows, int cols) {
    return TrigMat::Constant(rows, cols, TrigLaurentFun());
}

// scale a constant complex matrix into the ring
inline TrigMat lift_const(const Eigen::MatrixXcd& m, const TLF& f = tlf_one()) {
    TrigMat r = trig_zero(int(m.rows()), int(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (std::abs(m(i, j)) > kRingZeroTol) r(i, j) = m(i, j) * f;
    return r;
}

// entrywise conjugate transpose with ring conjugation
inline TrigMat trig_adjoint(const TrigMat& m) {
    TrigMat r = trig_zero(int(m.cols()), int(m.rows()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(j, i) = m(i, j).conjugate();
    return r;
}

inline double trig_residual(const TrigMat& m) {
    double r = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r = std::max(r, m(i, j).residual());
    return r;
}

inline TrigMat trig_derivative(const TrigMat& m, Var v) {
    TrigMat r = trig_zero(int(m.rows()), int(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).derivative(v);
    return r;
}

inline Eigen::MatrixXcd trig_eval_base(const TrigMat& m, double phi, double psi) {
    Eigen::MatrixXcd r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).eval_base(phi, psi);
    return r;
}

class MatrixDiffOp {
   public:
    static constexpr int kMaxOrder = 2;
    using TermMap = std::map<DerivIndex, TrigMat>;

    explicit MatrixDiffOp(int size = 2) : size_(size) {}

    static MatrixDiffOp identity(int size) {
        MatrixDiffOp p(size);
        p.add_term({0, 0, 0, 0}, lift_const(Eigen::MatrixXcd::Identity(size, size)));
        return p;
    }
    // c * M * d^d  with M constant and c in the ring
    static MatrixDiffOp term(int size, const DerivIndex& d, const Eigen::MatrixXcd& m,
                             const TLF& c = tlf_one()) {
        MatrixDiffOp p(size);
        p.add_term(d, lift_const(m, c));
        return p;
    }
    // scalar (1x1) operator
    static MatrixDiffOp scalar_term(const DerivIndex& d, const TLF& c) {
        MatrixDiffOp p(1);
        p.add_term(d, lift_const(Eigen::MatrixXcd::Identity(1, 1), c));
        return p;
    }

    int size() const { return size_; }
    const TermMap& terms() const { return terms_; }

    int order() const {
        int o = 0;
        for (const auto& [d, m] : terms_) o = std::max(o, deriv_order(d));
        return o;
    }

    void add_term(const DerivIndex& d, const TrigMat& m) {
        if (deriv_order(d) > kMaxOrder)
            throw OrderOverflow("derivative order exceeds 2");
        auto it = terms_.find(d);
        if (it == terms_.end())
            terms_.emplace(d, m);
        else
            it->second += m;
        normalize();
    }

    MatrixDiffOp& operator+=(const MatrixDiffOp& o) {
        for (const auto& [d, m] : o.terms_) {
            auto it = terms_.find(d);
            if (it == terms_.end())
                terms_.emplace(d, m);
            else
                it->second += m;
        }
        normalize();
        return *this;
    }
    MatrixDiffOp& operator-=(const MatrixDiffOp& o) {
        for (const auto& [d, m] : o.terms_) {
            auto it = terms_.find(d);
            if (it == terms_.end())
                terms_.emplace(d, (-m.array()).matrix());
            else
                it->second -= m;
        }
        normalize();
        return *this;
    }
    friend MatrixDiffOp operator+(MatrixDiffOp a, const MatrixDiffOp& b) { return a += b; }
    friend MatrixDiffOp operator-(MatrixDiffOp a, const MatrixDiffOp& b) { return a -= b; }

    MatrixDiffOp& operator*=(const Complex& s) {
        for (auto& [d, m] : terms_)
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j) m(i, j) *= s;
        normalize();
        return *this;
    }
    friend MatrixDiffOp operator*(const Complex& s, MatrixDiffOp p) { return p *= s; }

    // left multiplication by a constant matrix
    MatrixDiffOp left_mul(const Eigen::MatrixXcd& g) const {
        MatrixDiffOp r(int(g.rows()));
        for (const auto& [d, m] : terms_) r.add_term(d, TrigMat(lift_const(g) * m));
        return r;
    }
    // conjugation P -> G P G^{-1} by a constant involution (G = G^{-1})
    MatrixDiffOp conjugate_by(const Eigen::MatrixXcd& g) const {
        MatrixDiffOp r(size_);
        for (const auto& [d, m] : terms_)
            r.add_term(d, TrigMat(lift_const(g) * m * lift_const(g)));
        return r;
    }

    double residual() const {
        double r = 0.0;
        for (const auto& [d, m] : terms_) r = std::max(r, trig_residual(m));
        return r;
    }
    bool is_zero() const { return residual() <= kRingZeroTol; }

    // multiply every coefficient by a ring element (used to clear denominators)
    MatrixDiffOp cleared_by(const TLF& f) const {
        MatrixDiffOp r(size_);
        for (const auto& [d, m] : terms_) {
            TrigMat mm = trig_zero(size_, size_);
            for (int i = 0; i < size_; ++i)
                for (int j = 0; j < size_; ++j) mm(i, j) = f * m(i, j);
            r.add_term(d, mm);
        }
        return r;
    }

    // apply to a column vector of ring elements
    TrigVec apply(const TrigVec& v) const {
        TrigVec out = TrigVec::Constant(size_, TrigLaurentFun());
        for (const auto& [d, m] : terms_) {
            TrigVec w = v;
            for (int axis = 0; axis < 4; ++axis)
                for (int k = 0; k < d[axis]; ++k)
                    for (int i = 0; i < w.size(); ++i)
                        w(i) = w(i).derivative(static_cast<Var>(axis));
            out += m * w;
        }
        return out;
    }

    // substitute d/dth_j -> i*n_j; the result only carries phi/psi derivatives
    MatrixDiffOp mode_symbol(int n1, int n2) const {
        const Complex I(0.0, 1.0);
        MatrixDiffOp r(size_);
        for (const auto& [d, m] : terms_) {
            Complex factor = 1.0;
            for (int k = 0; k < d[0]; ++k) factor *= I * double(n1);
            for (int k = 0; k < d[1]; ++k) factor *= I * double(n2);
            TrigMat mm = m;
            for (int i = 0; i < size_; ++i)
                for (int j = 0; j < size_; ++j) mm(i, j) *= factor;
            r.add_term({0, 0, d[2], d[3]}, mm);
        }
        return r;
    }

    bool has_grid_derivatives() const {
        for (const auto& [d, m] : terms_)
            if (d[2] != 0 || d[3] != 0) return true;
        return false;
    }

    // pointwise value of a purely multiplicative operator
    Eigen::MatrixXcd eval_multiplicative(double phi, double psi) const {
        Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(size_, size_);
        for (const auto& [d, m] : terms_) {
            if (deriv_order(d) != 0)
                throw SingularCoefficient("operator has derivative terms");
            r += trig_eval_base(m, phi, psi);
        }
        return r;
    }

   private:
    void normalize() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = (trig_residual(it->second) <= kRingZeroTol) ? terms_.erase(it) : ++it;
    }

    int size_;
    TermMap terms_;
};

// Leibniz-correct composition: the derivative symbols of P act on the
// coefficients of Q before commuting outward.  Throws OrderOverflow if the
// total order exceeds 2.
inline MatrixDiffOp compose(const MatrixDiffOp& p, const MatrixDiffOp& q) {
    if (p.size() != q.size())
        throw SingularCoefficient("compose: size mismatch");
    MatrixDiffOp r(p.size());
    for (const auto& [dp, mp] : p.terms()) {
        for (const auto& [dq, mq] : q.terms()) {
            if (deriv_order(dp) + deriv_order(dq) > MatrixDiffOp::kMaxOrder)
                throw OrderOverflow("composition exceeds order 2");
            // expand d^dp (mq d^dq .) one unit derivative at a time
            std::map<DerivIndex, TrigMat> acc;
            acc.emplace(dq, mq);
            for (int axis = 0; axis < 4; ++axis) {
                for (int k = 0; k < dp[axis]; ++k) {
                    std::map<DerivIndex, TrigMat> next;
                    auto addto = [&](const DerivIndex& d, const TrigMat& m) {
                        auto it = next.find(d);
                        if (it == next.end())
                            next.emplace(d, m);
                        else
                            it->second += m;
                    };
                    for (const auto& [d, m] : acc) {
                        DerivIndex up = d;
                        up[axis] += 1;
                        addto(up, m);
                        addto(d, trig_derivative(m, static_cast<Var>(axis)));
                    }
                    acc = std::move(next);
                }
            }
            for (const auto& [d, m] : acc) r.add_term(d, TrigMat(mp * m));
        }
    }
    return r;
}

// anticommutator PQ + QP
inline MatrixDiffOp anticommutator(const MatrixDiffOp& p, const MatrixDiffOp& q) {
    return compose(p, q) + compose(q, p);
}

// Formal adjoint of an order <= 1 operator with respect to the weighted inner
// product <xi, eta> = integral xi^* eta w.  Uses (A d_mu)^* = (-d_mu - dlog_mu w) A^+.
inline MatrixDiffOp formal_adjoint(const MatrixDiffOp& p, const WeightFun& w) {
    if (p.order() > 1) throw OrderOverflow("formal_adjoint requires order <= 1");
    const int n = p.size();
    MatrixDiffOp r(n);
    for (const auto& [d, m] : p.terms()) {
        MatrixDiffOp mult(n);
        mult.add_term({0, 0, 0, 0}, trig_adjoint(m));
        if (deriv_order(d) == 0) {
            r += mult;
            continue;
        }
        int axis = 0;
        while (d[axis] == 0) ++axis;
        Var v = static_cast<Var>(axis);
        MatrixDiffOp dstar(n);
        DerivIndex unit{0, 0, 0, 0};
        unit[axis] = 1;
        dstar.add_term(unit, lift_const(-Eigen::MatrixXcd::Identity(n, n)));
        // theta-derivatives of the weight vanish; dlog is still well defined
        dstar.add_term({0, 0, 0, 0},
                       lift_const(-Eigen::MatrixXcd::Identity(n, n), w.dlog(v)));
        r += compose(dstar, mult);
    }
    return r;
}

}  // namespace ncs
