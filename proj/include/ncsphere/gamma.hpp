#pragma once

// Pauli and flat gamma matrices, gradings, and the parity-twist unitary
// Gamma used when identifying the vertical x horizontal tensor product with
// 4-spinors.  The C^2 (x) C^2 -> C^4 identification sends the vertical index
// s and the horizontal index t to c = 2*(t-1) + s, so a vertical operator A
// and a horizontal operator B lift to kron(I,A) and kron(B,I) respectively.

#include <Eigen/Dense>
#include <complex>

namespace ncs {

struct GammaSet {
    Eigen::Matrix2cd sigma1, sigma2;
    Eigen::Matrix4cd gamma1, gamma2, gamma3, gamma4;
    Eigen::Matrix2cd gamma_X;      // vertical grading
    Eigen::Matrix2cd gamma_Q;      // base grading
    Eigen::Matrix4cd gamma;        // total grading gamma_X (x) gamma_Q
    Eigen::Matrix4cd gamma_X_lift; // gamma_X (x) 1 on C^4
    Eigen::Matrix4cd Gamma;        // (gamma_X (x) 1)(1+gamma)/2 + (1-gamma)/2

    GammaSet() {
        const std::complex<double> i(0.0, 1.0);
        sigma1 << 0, 1, 1, 0;
        sigma2 << 0, -i, i, 0;
        gamma1 << 0, 1, 0, 0,
                  1, 0, 0, 0,
                  0, 0, 0, -1,
                  0, 0, -1, 0;
        gamma2 << 0, -i, 0, 0,
                  i, 0, 0, 0,
                  0, 0, 0, i,
                  0, 0, -i, 0;
        gamma3 << 0, 0, 1, 0,
                  0, 0, 0, 1,
                  1, 0, 0, 0,
                  0, 1, 0, 0;
        gamma4 << 0, 0, -i, 0,
                  0, 0, 0, -i,
                  i, 0, 0, 0,
                  0, i, 0, 0;
        gamma_X = Eigen::Matrix2cd::Zero();
        gamma_X(0, 0) = 1;
        gamma_X(1, 1) = -1;
        gamma_Q = gamma_X;
        gamma = kron(gamma_Q, gamma_X);  // horizontal index is the slow index
        gamma_X_lift = kron(Eigen::Matrix2cd::Identity(), gamma_X);
        Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
        Gamma = gamma_X_lift * (id + gamma) / 2.0 + (id - gamma) / 2.0;
    }

    // kron with A acting on the slow (horizontal) factor
    static Eigen::Matrix4cd kron(const Eigen::Matrix2cd& slow,
                                 const Eigen::Matrix2cd& fast) {
        Eigen::Matrix4cd r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.block<2, 2>(2 * i, 2 * j) = slow(i, j) * fast;
        return r;
    }
};

inline const GammaSet& gammas() {
    static const GammaSet g;
    return g;
}

}  // namespace ncs
