#include "green/hsops.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <stdexcept>

namespace green {

double hs_norm(const HsOperator& op) {
    const Vector row_w = op.row_grid.weights();
    const Vector col_w = op.col_grid.weights();
    const double s = row_w.transpose() * op.kernel.cwiseAbs2() * col_w;
    return std::sqrt(s);
}

Vector apply(const HsOperator& op, const Vector& f) {
    if (f.size() != op.col_grid.size())
        throw std::invalid_argument("input function does not live on the operator's column grid");
    return op.kernel * op.col_grid.weights().cwiseProduct(f);
}

WeightedSvd weighted_svd(const HsOperator& op) {
    const Vector sr = op.row_grid.weights().cwiseSqrt();
    const Vector sc = op.col_grid.weights().cwiseSqrt();
    const Matrix scaled = sr.asDiagonal() * op.kernel * sc.asDiagonal();

    Eigen::BDCSVD<Matrix> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        throw std::runtime_error("SVD failed on weighted kernel matrix");

    WeightedSvd out;
    out.singular_values = svd.singularValues();
    out.left = Quasimatrix(op.row_grid, sr.cwiseInverse().asDiagonal() * svd.matrixU());
    out.right = Quasimatrix(op.col_grid, sc.cwiseInverse().asDiagonal() * svd.matrixV());
    return out;
}

Quasimatrix orthonormalize(const Quasimatrix& q, double drop_tol) {
    const Grid& grid = q.grid;
    const Index n = q.count();

    double max_norm = 0.0;
    for (Index j = 0; j < n; ++j) max_norm = std::max(max_norm, grid.norm(q.columns.col(j)));
    if (max_norm == 0.0) return Quasimatrix(grid, Matrix(grid.size(), 0));
    const double tol = drop_tol * max_norm;

    // modified Gram-Schmidt with one re-orthogonalization pass
    Matrix basis(grid.size(), n);
    Index kept = 0;
    for (Index j = 0; j < n; ++j) {
        Vector v = q.columns.col(j);
        for (int pass = 0; pass < 2; ++pass)
            for (Index i = 0; i < kept; ++i)
                v -= grid.inner(basis.col(i), v) * basis.col(i);
        const double nv = grid.norm(v);
        if (nv <= tol) continue;
        basis.col(kept++) = v / nv;
    }
    return Quasimatrix(grid, basis.leftCols(kept));
}

Quasimatrix orthonormalize_full(const Quasimatrix& q) {
    const Vector sw = q.grid.weights().cwiseSqrt();
    const Matrix scaled = sw.asDiagonal() * q.columns;
    Eigen::HouseholderQR<Matrix> qr(scaled);
    Matrix thin_q = qr.householderQ() * Matrix::Identity(scaled.rows(), scaled.cols());
    return Quasimatrix(q.grid, sw.cwiseInverse().asDiagonal() * thin_q);
}

HsOperator project_rows(const HsOperator& op, const Quasimatrix& basis) {
    if (basis.grid != op.row_grid)
        throw std::invalid_argument("projection basis does not live on the operator's row grid");
    const Quasimatrix q = orthonormalize(basis);
    if (q.count() == 0)
        return HsOperator(op.row_grid, op.col_grid, Matrix::Zero(op.kernel.rows(), op.kernel.cols()));
    const Matrix coeffs = q.columns.transpose() * op.row_grid.weights().asDiagonal() * op.kernel;
    return HsOperator(op.row_grid, op.col_grid, q.columns * coeffs);
}

}  // namespace green
