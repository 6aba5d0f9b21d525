#pragma once

// Assembly of a MatrixDiffOp into per-torus-mode sparse matrices on a base
// grid.  The torus derivatives are replaced by i n_j; the remaining phi/psi
// derivatives become Kronecker factors of the one-dimensional differentiation
// matrices, and coefficients are evaluated pointwise at the nodes.
// Unknowns are ordered idx = (i_phi * npsi + i_psi) * s + component.

#include <Eigen/SparseCore>
#include <complex>
#include <vector>

#include "ncsphere/grid.hpp"
#include "ncsphere/matrix_diff_op.hpp"

namespace ncs {

using SparseC = Eigen::SparseMatrix<std::complex<double>>;

struct ModeGridOperator {
    int n1, n2;
    SparseC mat;
};

inline SparseC assemble_numeric(const MatrixDiffOp& op, const GridSpec& grid, int n1,
                                int n2) {
    MatrixDiffOp sym = op.mode_symbol(n1, n2);
    const int s = sym.size();
    Grid1D gphi = grid.phi();
    Grid1D gpsi = grid.psi();
    const int nphi = grid.nphi, npsi = grid.npsi;
    const int dim = nphi * npsi * s;

    auto dmat = [](const Grid1D& g, int order) -> Eigen::SparseMatrix<double> {
        if (order == 0) {
            Eigen::SparseMatrix<double> id(g.nodes.size(), g.nodes.size());
            id.setIdentity();
            return id;
        }
        if (order == 1) return g.d1;
        return g.d2;
    };

    std::vector<Eigen::Triplet<std::complex<double>>> trip;
    for (const auto& [d, m] : sym.terms()) {
        Eigen::SparseMatrix<double> dphi = dmat(gphi, d[2]);
        Eigen::SparseMatrix<double> dpsi = dmat(gpsi, d[3]);
        // coefficient values at the nodes
        std::vector<Eigen::MatrixXcd> coeff(nphi * npsi);
        for (int i = 0; i < nphi; ++i)
            for (int j = 0; j < npsi; ++j) {
                Eigen::MatrixXcd c = trig_eval_base(m, gphi.nodes(i), gpsi.nodes(j));
                if (!c.allFinite())
                    throw SingularCoefficient("coefficient not finite at grid node");
                coeff[i * npsi + j] = c;
            }
        // iterate dphi and dpsi entries (column-major storage)
        for (int cp = 0; cp < dphi.outerSize(); ++cp)
            for (Eigen::SparseMatrix<double>::InnerIterator itp(dphi, cp); itp; ++itp)
                for (int cq = 0; cq < dpsi.outerSize(); ++cq)
                    for (Eigen::SparseMatrix<double>::InnerIterator itq(dpsi, cq); itq;
                         ++itq) {
                        int row_node = int(itp.row()) * npsi + int(itq.row());
                        int col_node = cp * npsi + cq;
                        double w = itp.value() * itq.value();
                        const Eigen::MatrixXcd& c = coeff[row_node];
                        for (int a = 0; a < s; ++a)
                            for (int b = 0; b < s; ++b)
                                if (c(a, b) != std::complex<double>(0.0, 0.0))
                                    trip.emplace_back(row_node * s + a, col_node * s + b,
                                                      w * c(a, b));
                    }
    }
    SparseC out(dim, dim);
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

inline std::vector<ModeGridOperator> assemble_modes(const MatrixDiffOp& op,
                                                    const GridSpec& grid,
                                                    const ModeSet& modes) {
    std::vector<ModeGridOperator> out;
    out.reserve(modes.size());
    for (auto [n1, n2] : modes) out.push_back({n1, n2, assemble_numeric(op, grid, n1, n2)});
    return out;
}

// diagonal of the weighted inner product: quadrature weight times the volume
// weight, repeated for each spinor component
inline Eigen::VectorXd weight_diagonal(const GridSpec& grid, const WeightFun& w, int s) {
    Grid1D gphi = grid.phi();
    Grid1D gpsi = grid.psi();
    Eigen::VectorXd diag(grid.nodes() * s);
    for (int i = 0; i < grid.nphi; ++i)
        for (int j = 0; j < grid.npsi; ++j) {
            double v = gphi.qweights(i) * gpsi.qweights(j) *
                       w.eval(gphi.nodes(i), gpsi.nodes(j));
            for (int a = 0; a < s; ++a) diag((i * grid.npsi + j) * s + a) = v;
        }
    return diag;
}

// evaluate a ring-coefficient spinor field at the nodes (theta stripped)
inline Eigen::VectorXcd grid_section(const TrigVec& v, const GridSpec& grid) {
    Grid1D gphi = grid.phi();
    Grid1D gpsi = grid.psi();
    const int s = int(v.size());
    Eigen::VectorXcd out(grid.nodes() * s);
    for (int i = 0; i < grid.nphi; ++i)
        for (int j = 0; j < grid.npsi; ++j)
            for (int a = 0; a < s; ++a)
                out((i * grid.npsi + j) * s + a) =
                    v(a).eval_base(gphi.nodes(i), gpsi.nodes(j));
    return out;
}

}  // namespace ncs
