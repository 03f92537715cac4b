#pragma once

#include <cstdint>

#include "green/kernels.hpp"
#include "green/quasimatrix.hpp"

namespace green {

/// Eigenpairs of the quadrature-discretized covariance operator
/// f -> integral of K(.,y) f(y) dy. Eigenfunctions are orthonormal in the
/// grid's weighted inner product; eigenvalues are nonincreasing and positive.
struct MercerBasis {
    Grid grid;
    Vector eigenvalues;      // descending, strictly positive after the cutoff
    Matrix eigenfunctions;   // grid.size() x modes, weighted-orthonormal
    double trace = 0.0;      // sum of retained eigenvalues

    Index modes() const { return eigenvalues.size(); }
};

/// Eigendecomposition of the weighted kernel operator. Eigenvalues below
/// rank_cutoff * lambda_1 (including floating-point negatives) are dropped.
MercerBasis build_mercer(const CovKernelSpec& kernel, const Grid& grid,
                         double rank_cutoff = 1e-12);

/// Karhunen-Loeve sampling: each column is sum_j sqrt(lambda_j) c_j psi_j
/// with independent standard-normal c_j. Column j uses the sub-stream
/// derive_seed(seed, j), so columns are independent of draw order.
Quasimatrix sample_gp(const MercerBasis& basis, Index count, std::uint64_t seed);

}  // namespace green
