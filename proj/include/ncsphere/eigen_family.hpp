#pragma once

// Explicit fibrewise eigenfamily of the vertical operator.  At a base point
// (phi, psi) the mode-(n1, n2) symbol is the 2x2 matrix
//
//   M = -(n1 / h1) sigma^1 - (n2 / h2) sigma^2,   h1 = cos(phi)cos(psi),
//                                                 h2 = sin(phi)cos(psi),
//
// with unit eigenvectors (1, +c)/sqrt(2) and (1, -c)/sqrt(2) for the
// eigenvalues -lambda and +lambda, lambda = sqrt((n1/h1)^2 + (n2/h2)^2).
// The resolvent (i mu - M)^{-1} is assembled from the eigenprojections.

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "ncsphere/errors.hpp"

namespace ncs {

struct EigenFamily {
    int n1, n2;
    double phi, psi;

    double r1() const { return n1 / (std::cos(phi) * std::cos(psi)); }
    double r2() const { return n2 / (std::sin(phi) * std::cos(psi)); }

    double lambda() const { return std::hypot(r1(), r2()); }

    // phase c with |c| = 1; c = 1 for the zero mode
    std::complex<double> c() const {
        if (n1 == 0 && n2 == 0) return {1.0, 0.0};
        return std::complex<double>(r1(), r2()) / lambda();
    }

    // unit eigenvector for sign s in {+1, -1}; M v_s = -s lambda v_s
    Eigen::Vector2cd spinor(int s) const {
        Eigen::Vector2cd v;
        v << 1.0, double(s) * c();
        return v / std::sqrt(2.0);
    }

    Eigen::Matrix2cd symbol() const {
        Eigen::Matrix2cd m;
        const std::complex<double> i(0.0, 1.0);
        m << 0.0, r1() - i * r2(), r1() + i * r2(), 0.0;
        return -m;
    }

    // unitary diagonalizer: columns are the +/- spinors, W^* M W = diag(-l, l)
    Eigen::Matrix2cd W() const {
        Eigen::Matrix2cd w;
        w.col(0) = spinor(+1);
        w.col(1) = spinor(-1);
        return w;
    }

    // (i mu - M)^{-1} through the eigenprojections
    Eigen::Matrix2cd resolvent(double mu) const {
        if (mu == 0.0) throw ZeroSpectralParameter("resolvent requires mu != 0");
        const std::complex<double> i(0.0, 1.0);
        double l = lambda();
        Eigen::Matrix2cd r = Eigen::Matrix2cd::Zero();
        for (int s : {+1, -1}) {
            Eigen::Vector2cd v = spinor(s);
            r += (v * v.adjoint()) / (i * mu + double(s) * l);
        }
        return r;
    }
};

}  // namespace ncs
