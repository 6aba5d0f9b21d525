#pragma once

// Shift-invert Lanczos for sparse Hermitian matrices: eigenvalues nearest a
// real shift sigma, with full reorthogonalization and a SparseLU factor of
// (H - sigma I) as the inner solver.

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <complex>
#include <random>
#include <vector>

#include "ncsphere/errors.hpp"

namespace ncs {

using SparseCM = Eigen::SparseMatrix<std::complex<double>>;

struct EigenPairs {
    Eigen::VectorXd values;   // eigenvalues of H, sorted by |value - sigma|
    Eigen::MatrixXcd vectors; // matching Ritz vectors (columns)
};

// Lanczos iteration on a prefactorized (H - sigma I); reusable across
// several random starting vectors without refactorizing.
inline EigenPairs shift_invert_lanczos(const Eigen::SparseLU<SparseCM>& lu, int n,
                                       double sigma, int nev, int max_steps = 0,
                                       unsigned seed = 12345) {
    using Complex = std::complex<double>;
    if (max_steps == 0) max_steps = std::min(n, std::max(6 * nev, 60));
    max_steps = std::min(max_steps, n);

    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd V(n, max_steps + 1);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
    v /= v.norm();
    V.col(0) = v;

    std::vector<double> alpha, beta;
    int m = 0;
    for (int j = 0; j < max_steps; ++j) {
        Eigen::VectorXcd w = lu.solve(V.col(j));
        Complex a = V.col(j).dot(w);
        w -= a * V.col(j);
        if (j > 0) w -= beta.back() * V.col(j - 1);
        // full reorthogonalization, twice
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i <= j; ++i) w -= V.col(i).dot(w) * V.col(i);
        alpha.push_back(a.real());
        double b = w.norm();
        m = j + 1;
        if (b < 1e-12) break;
        beta.push_back(b);
        V.col(j + 1) = w / b;
    }
    if (!beta.empty() && int(beta.size()) == m) beta.pop_back();

    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);

    // largest |theta| of the inverse correspond to eigenvalues nearest sigma
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::abs(es.eigenvalues()(a)) > std::abs(es.eigenvalues()(b));
    });

    int k = std::min(nev, m);
    EigenPairs out;
    out.values.resize(k);
    out.vectors.resize(n, k);
    for (int i = 0; i < k; ++i) {
        double theta = es.eigenvalues()(idx[i]);
        out.values(i) = sigma + (theta == 0.0 ? 0.0 : 1.0 / theta);
        out.vectors.col(i) = V.leftCols(m) * es.eigenvectors().col(idx[i]);
        out.vectors.col(i) /= out.vectors.col(i).norm();
    }
    return out;
}

inline EigenPairs shift_invert_lanczos(const SparseCM& H, double sigma, int nev,
                                       int max_steps = 0, unsigned seed = 12345) {
    const int n = int(H.rows());
    SparseCM A = H;
    for (int i = 0; i < n; ++i) A.coeffRef(i, i) -= sigma;
    A.makeCompressed();
    Eigen::SparseLU<SparseCM> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success)
        throw SingularCoefficient("shift-invert factorization failed");
    return shift_invert_lanczos(lu, n, sigma, nev, max_steps, seed);
}

}  // namespace ncs
