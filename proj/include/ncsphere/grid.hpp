#pragma once

// Discretization of the open base quadrant (0, pi/2) x (-pi/2, pi/2):
// interior node placements with one-dimensional differentiation matrices and
// quadrature weights.  The uniform placement uses second-order central
// differences with homogeneous Dirichlet padding; the Chebyshev placement
// uses spectral collocation on Gauss nodes.

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cmath>
#include <numbers>
#include <vector>

#include "ncsphere/errors.hpp"

namespace ncs {

struct Grid1D {
    Eigen::VectorXd nodes;
    Eigen::VectorXd qweights;            // quadrature weights against dx
    Eigen::SparseMatrix<double> d1, d2;  // differentiation matrices
};

enum class Placement { Uniform, Chebyshev };

inline Grid1D make_uniform_grid(int n, double lo, double hi) {
    if (n < 2) throw IndexOutOfRange("grid needs at least 2 interior nodes");
    double h = (hi - lo) / (n + 1);
    Grid1D g;
    g.nodes.resize(n);
    for (int i = 0; i < n; ++i) g.nodes(i) = lo + (i + 1) * h;
    g.qweights = Eigen::VectorXd::Constant(n, h);
    std::vector<Eigen::Triplet<double>> t1, t2;
    for (int i = 0; i < n; ++i) {
        if (i > 0) {
            t1.emplace_back(i, i - 1, -0.5 / h);
            t2.emplace_back(i, i - 1, 1.0 / (h * h));
        }
        if (i + 1 < n) {
            t1.emplace_back(i, i + 1, 0.5 / h);
            t2.emplace_back(i, i + 1, 1.0 / (h * h));
        }
        t2.emplace_back(i, i, -2.0 / (h * h));
    }
    g.d1.resize(n, n);
    g.d2.resize(n, n);
    g.d1.setFromTriplets(t1.begin(), t1.end());
    g.d2.setFromTriplets(t2.begin(), t2.end());
    return g;
}

inline Grid1D make_chebyshev_grid(int n, double lo, double hi) {
    if (n < 2) throw IndexOutOfRange("grid needs at least 2 interior nodes");
    constexpr double pi = std::numbers::pi;
    // Chebyshev-Gauss nodes on (-1, 1), mapped increasing to (lo, hi)
    Eigen::VectorXd x(n);
    for (int k = 0; k < n; ++k) x(k) = -std::cos((2.0 * k + 1.0) * pi / (2.0 * n));
    // barycentric weights for Gauss nodes
    Eigen::VectorXd bw(n);
    for (int k = 0; k < n; ++k)
        bw(k) = (k % 2 == 0 ? 1.0 : -1.0) * std::sin((2.0 * k + 1.0) * pi / (2.0 * n));
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double diag = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            d(i, j) = (bw(j) / bw(i)) / (x(i) - x(j));
            diag -= d(i, j);
        }
        d(i, i) = diag;
    }
    // quadrature: integrate the Chebyshev interpolant exactly
    Eigen::MatrixXd V(n, n);
    Eigen::VectorXd m(n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) V(j, k) = std::cos(j * std::acos(x(k)));
        m(j) = (j % 2 == 0) ? 2.0 / (1.0 - double(j) * double(j)) : 0.0;
    }
    Eigen::VectorXd w = V.colPivHouseholderQr().solve(m);

    double scale = 0.5 * (hi - lo);
    Grid1D g;
    g.nodes.resize(n);
    for (int k = 0; k < n; ++k) g.nodes(k) = lo + scale * (x(k) + 1.0);
    g.qweights = scale * w;
    Eigen::MatrixXd d1 = d / scale;
    Eigen::MatrixXd d2 = d1 * d1;
    g.d1 = d1.sparseView();
    g.d2 = d2.sparseView();
    return g;
}

struct GridSpec {
    int nphi, npsi;
    Placement placement = Placement::Uniform;

    Grid1D phi() const { return make(nphi, 0.0, 0.5 * std::numbers::pi); }
    Grid1D psi() const {
        return make(npsi, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
    }
    int nodes() const { return nphi * npsi; }

   private:
    Grid1D make(int n, double lo, double hi) const {
        return placement == Placement::Uniform ? make_uniform_grid(n, lo, hi)
                                               : make_chebyshev_grid(n, lo, hi);
    }
};

// torus modes |k|_inf <= N in row-major order
struct ModeSet {
    std::vector<std::pair<int, int>> modes;

    explicit ModeSet(int N) {
        for (int n1 = -N; n1 <= N; ++n1)
            for (int n2 = -N; n2 <= N; ++n2) modes.emplace_back(n1, n2);
    }
    std::size_t size() const { return modes.size(); }
    auto begin() const { return modes.begin(); }
    auto end() const { return modes.end(); }
};

}  // namespace ncs
