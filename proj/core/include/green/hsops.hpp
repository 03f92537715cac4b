#pragma once

#include "green/quasimatrix.hpp"

namespace green {

/// Quadrature discretization of an integral operator
/// (F f)(x) = integral over the column domain of G(x,y) f(y) dy.
/// Norms, inner products and the SVD all carry the grids' quadrature
/// weights; the unweighted matrix SVD is never exposed.
struct HsOperator {
    Grid row_grid;  // output domain
    Grid col_grid;  // input domain
    Matrix kernel;  // row node x col node values G(x_i, y_j)

    HsOperator() = default;
    HsOperator(Grid rows, Grid cols, Matrix values)
        : row_grid(std::move(rows)), col_grid(std::move(cols)), kernel(std::move(values)) {
        if (kernel.rows() != row_grid.size() || kernel.cols() != col_grid.size())
            throw std::invalid_argument("kernel values do not match grids");
    }
};

/// SVD in the weighted geometry: left/right singular functions orthonormal
/// under their grids' quadrature, singular values nonincreasing.
struct WeightedSvd {
    Quasimatrix left;
    Vector singular_values;
    Quasimatrix right;

    /// (sum of sigma_j^2 for j > k)^{1/2}
    double tail(Index k) const {
        const Index n = singular_values.size();
        if (k >= n) return 0.0;
        return singular_values.tail(n - k).norm();
    }
};

double hs_norm(const HsOperator& op);

/// Quadrature application: u(x_i) = sum_j w_j G(x_i, y_j) f(y_j).
Vector apply(const HsOperator& op, const Vector& f);

WeightedSvd weighted_svd(const HsOperator& op);

/// Column space basis, orthonormal in the weighted inner product. Columns
/// whose residual drops below drop_tol times the largest input column norm
/// are discarded; an all-zero input yields an empty quasimatrix.
Quasimatrix orthonormalize(const Quasimatrix& q, double drop_tol = 1e-10);

/// Orthonormal basis with exactly as many columns as the input, rank-deficient
/// or not (Householder QR in the weighted geometry). Trailing columns of a
/// numerically dependent input span arbitrary complements of the column space.
Quasimatrix orthonormalize_full(const Quasimatrix& q);

/// Composition P_basis o op where P_basis is the weighted orthogonal
/// projection onto the span of the basis columns.
HsOperator project_rows(const HsOperator& op, const Quasimatrix& basis);

}  // namespace green
