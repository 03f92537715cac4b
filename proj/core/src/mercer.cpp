#include "green/mercer.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>

#include "green/rng.hpp"

namespace green {

MercerBasis build_mercer(const CovKernelSpec& kernel, const Grid& grid, double rank_cutoff) {
    const Matrix k = kernel.evaluate(grid);

    // Similarity transform: eigenpairs of K W are those of the symmetric
    // matrix W^{1/2} K W^{1/2}, with eigenvectors rescaled by W^{-1/2}.
    const Vector sqrt_w = grid.weights().cwiseSqrt();
    Matrix b = sqrt_w.asDiagonal() * k * sqrt_w.asDiagonal();
    b = 0.5 * (b + b.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Matrix> es(b);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigen-solve failed while building Mercer basis");

    // ascending from Eigen; walk backwards and keep values above the cutoff
    const Vector& evals = es.eigenvalues();
    const Index n = evals.size();
    const double lambda_1 = evals(n - 1);
    if (!(lambda_1 > 0.0)) throw std::runtime_error("covariance operator has no positive modes");
    const double floor = rank_cutoff * lambda_1;

    Index kept = 0;
    while (kept < n && evals(n - 1 - kept) > floor) ++kept;

    MercerBasis basis;
    basis.grid = grid;
    basis.eigenvalues.resize(kept);
    basis.eigenfunctions.resize(grid.size(), kept);
    const Vector inv_sqrt_w = sqrt_w.cwiseInverse();
    for (Index j = 0; j < kept; ++j) {
        basis.eigenvalues(j) = evals(n - 1 - j);
        basis.eigenfunctions.col(j) = inv_sqrt_w.cwiseProduct(es.eigenvectors().col(n - 1 - j));
    }
    basis.trace = basis.eigenvalues.sum();
    return basis;
}

Quasimatrix sample_gp(const MercerBasis& basis, Index count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample count must be >= 1");

    const Index m = basis.modes();
    const Vector sqrt_lambda = basis.eigenvalues.cwiseSqrt();
    Matrix coeffs(m, count);
    for (Index j = 0; j < count; ++j) {
        NormalStream stream(derive_seed(seed, static_cast<std::uint64_t>(j)));
        for (Index i = 0; i < m; ++i) coeffs(i, j) = sqrt_lambda(i) * stream();
    }
    return Quasimatrix(basis.grid, basis.eigenfunctions * coeffs);
}

}  // namespace green
