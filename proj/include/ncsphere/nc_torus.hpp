#pragma once

// Polynomial algebra of the n-dimensional noncommutative torus: finite sums
// x = sum_k lambda_k U^k with k in Z^n and the product convention
//
//   U^k U^l = exp(i phase(k, l)) U^{k+l},
//   phase(k, l) = 2 pi sum_{m > j} theta_{mj} k_m l_j,
//
// together with the canonical trace, the basic derivations, the involution,
// and Lipschitz seminorms evaluated in a truncated GNS representation.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

#include "ncsphere/errors.hpp"
#include "ncsphere/trig_laurent.hpp"  // kRingZeroTol

namespace ncs {

class DeformationMatrix {
   public:
    explicit DeformationMatrix(const Eigen::MatrixXd& th) : th_(th) {
        if (th.rows() != th.cols())
            throw MismatchedDeformation("deformation matrix must be square");
        if ((th + th.transpose()).cwiseAbs().maxCoeff() > 1e-15)
            throw MismatchedDeformation("deformation matrix must be skew-symmetric");
    }

    static DeformationMatrix dim2(double theta12) {
        Eigen::Matrix2d m;
        m << 0.0, theta12, -theta12, 0.0;
        return DeformationMatrix(m);
    }

    int dim() const { return int(th_.rows()); }
    const Eigen::MatrixXd& matrix() const { return th_; }

    double phase(const std::vector<int>& k, const std::vector<int>& l) const {
        double s = 0.0;
        for (int m = 1; m < dim(); ++m)
            for (int j = 0; j < m; ++j) s += th_(m, j) * k[m] * l[j];
        return 2.0 * std::numbers::pi * s;
    }

    friend bool operator==(const DeformationMatrix& a, const DeformationMatrix& b) {
        return a.th_.rows() == b.th_.rows() && (a.th_ - b.th_).cwiseAbs().maxCoeff() == 0.0;
    }

   private:
    Eigen::MatrixXd th_;
};

class TorusPoly {
   public:
    using Mode = std::vector<int>;
    using TermMap = std::map<Mode, std::complex<double>>;

    explicit TorusPoly(const DeformationMatrix& th) : th_(th) {}

    static TorusPoly unitary(const DeformationMatrix& th, const Mode& k,
                             std::complex<double> coeff = 1.0) {
        TorusPoly x(th);
        x.insert(k, coeff);
        return x;
    }
    static TorusPoly one(const DeformationMatrix& th) {
        return unitary(th, Mode(th.dim(), 0));
    }

    const DeformationMatrix& deformation() const { return th_; }
    const TermMap& terms() const { return terms_; }

    double residual() const {
        double r = 0.0;
        for (const auto& [k, c] : terms_) r = std::max(r, std::abs(c));
        return r;
    }
    bool is_zero() const { return residual() <= kRingZeroTol; }

    int degree() const {
        int d = 0;
        for (const auto& [k, c] : terms_)
            for (int v : k) d = std::max(d, std::abs(v));
        return d;
    }

    TorusPoly& operator+=(const TorusPoly& o) {
        require_same(o);
        for (const auto& [k, c] : o.terms_) insert(k, c);
        return *this;
    }
    TorusPoly& operator-=(const TorusPoly& o) {
        require_same(o);
        for (const auto& [k, c] : o.terms_) insert(k, -c);
        return *this;
    }
    TorusPoly& operator*=(std::complex<double> s) {
        TermMap out;
        for (const auto& [k, c] : terms_)
            if (std::abs(c * s) > kRingZeroTol) out.emplace(k, c * s);
        terms_ = std::move(out);
        return *this;
    }
    friend TorusPoly operator+(TorusPoly a, const TorusPoly& b) { return a += b; }
    friend TorusPoly operator-(TorusPoly a, const TorusPoly& b) { return a -= b; }
    friend TorusPoly operator*(std::complex<double> s, TorusPoly a) { return a *= s; }

    friend TorusPoly operator*(const TorusPoly& a, const TorusPoly& b) {
        a.require_same(b);
        TorusPoly r(a.th_);
        const std::complex<double> i(0.0, 1.0);
        for (const auto& [k, ck] : a.terms_)
            for (const auto& [l, cl] : b.terms_) {
                Mode kl(k.size());
                for (std::size_t j = 0; j < k.size(); ++j) kl[j] = k[j] + l[j];
                r.insert(kl, ck * cl * std::exp(i * a.th_.phase(k, l)));
            }
        return r;
    }

    // involution: (lambda U^k)^* = conj(lambda) e^{i phase(k,k)} U^{-k}
    TorusPoly star() const {
        const std::complex<double> i(0.0, 1.0);
        TorusPoly r(th_);
        for (const auto& [k, c] : terms_) {
            Mode mk(k.size());
            for (std::size_t j = 0; j < k.size(); ++j) mk[j] = -k[j];
            r.insert(mk, std::conj(c) * std::exp(i * th_.phase(k, k)));
        }
        return r;
    }

    std::complex<double> trace() const {
        auto it = terms_.find(Mode(th_.dim(), 0));
        return it == terms_.end() ? 0.0 : it->second;
    }

    // basic derivation: delta_j(U^k) = i k_j U^k
    TorusPoly derivation(int j) const {
        if (j < 0 || j >= th_.dim()) throw IndexOutOfRange("derivation index");
        const std::complex<double> i(0.0, 1.0);
        TorusPoly r(th_);
        for (const auto& [k, c] : terms_) r.insert(k, i * double(k[j]) * c);
        return r;
    }

   private:
    void require_same(const TorusPoly& o) const {
        if (!(th_ == o.th_))
            throw MismatchedDeformation("operands carry different deformations");
    }
    void insert(const Mode& k, std::complex<double> c) {
        if (int(k.size()) != th_.dim())
            throw IndexOutOfRange("mode length does not match torus dimension");
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            if (std::abs(c) > kRingZeroTol) terms_.emplace(k, c);
        } else {
            it->second += c;
            if (std::abs(it->second) <= kRingZeroTol) terms_.erase(it);
        }
    }

    DeformationMatrix th_;
    TermMap terms_;
};

// Truncated GNS representation on l^2 of the mode box |l|_inf <= N:
// pi(U^k) e_l = e^{i phase(k, l)} e_{k + l}, entries leaving the box dropped.
// Norms of elements of degree d are exact on the interior block
// |l|_inf <= N - d, where no truncation is felt.
class TruncatedGNSRep {
   public:
    TruncatedGNSRep(const DeformationMatrix& th, int N) : th_(th), N_(N) {
        if (N < 1) throw IndexOutOfRange("GNS truncation must be >= 1");
        int n = th.dim();
        side_ = 2 * N + 1;
        dim_ = 1;
        for (int j = 0; j < n; ++j) dim_ *= side_;
    }

    int dim() const { return dim_; }

    Eigen::MatrixXcd matrix(const TorusPoly& x) const {
        const std::complex<double> i(0.0, 1.0);
        int n = th_.dim();
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_, dim_);
        std::vector<int> l(n), kl(n);
        for (int col = 0; col < dim_; ++col) {
            unflatten(col, l);
            for (const auto& [k, c] : x.terms()) {
                bool inside = true;
                for (int j = 0; j < n; ++j) {
                    kl[j] = k[j] + l[j];
                    if (std::abs(kl[j]) > N_) inside = false;
                }
                if (!inside) continue;
                m(flatten(kl), col) += c * std::exp(i * th_.phase(k, l));
            }
        }
        return m;
    }

    // operator norm of x read off the untruncated interior block
    double norm(const TorusPoly& x) const {
        int d = x.degree();
        if (d > N_) throw IndexOutOfRange("element degree exceeds GNS truncation");
        Eigen::MatrixXcd m = matrix(x);
        std::vector<int> cols;
        std::vector<int> l(th_.dim());
        for (int col = 0; col < dim_; ++col) {
            unflatten(col, l);
            bool interior = true;
            for (int v : l)
                if (std::abs(v) > N_ - d) interior = false;
            if (interior) cols.push_back(col);
        }
        Eigen::MatrixXcd sub(dim_, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) sub.col(j) = m.col(cols[j]);
        return sub.bdcSvd().singularValues()(0);
    }

    // Lipschitz-type seminorm ||x|| + sum_j w_j ||delta_j x||
    double seminorm(const TorusPoly& x, const std::vector<double>& w) const {
        if (int(w.size()) != th_.dim()) throw IndexOutOfRange("weight length");
        double s = norm(x);
        for (int j = 0; j < th_.dim(); ++j)
            if (w[j] != 0.0) s += w[j] * norm(x.derivation(j));
        return s;
    }

   private:
    int flatten(const std::vector<int>& l) const {
        int idx = 0;
        for (std::size_t j = 0; j < l.size(); ++j) idx = idx * side_ + (l[j] + N_);
        return idx;
    }
    void unflatten(int idx, std::vector<int>& l) const {
        for (int j = int(l.size()) - 1; j >= 0; --j) {
            l[j] = idx % side_ - N_;
            idx /= side_;
        }
    }

    DeformationMatrix th_;
    int N_, side_, dim_;
};

}  // namespace ncs
