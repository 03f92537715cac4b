#pragma once

#include <green/hsops.hpp>
#include <green/mercer.hpp>
#include <green/rng.hpp>

// shared builders for the test suites

namespace testing {

using green::Grid;
using green::Index;
using green::Matrix;
using green::Vector;

inline Grid line_grid(Index n, double lo = 0.0, double hi = 1.0) {
    green::Box box;
    box.dim = 1;
    box.lo[0] = lo;
    box.hi[0] = hi;
    return Grid::uniform(box, n);
}

inline Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
    green::NormalStream stream(seed);
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) m(i, j) = stream();
    return m;
}

inline Vector random_vector(Index n, std::uint64_t seed) {
    green::NormalStream stream(seed);
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = stream();
    return v;
}

/// kernel table whose weighted covariance operator is the identity: every
/// eigenvalue is 1 and gamma_k = 1 for any orthonormal set
inline green::CovKernelSpec identity_like_kernel(const Grid& grid) {
    Matrix table = Matrix::Zero(grid.size(), grid.size());
    for (Index i = 0; i < grid.size(); ++i) table(i, i) = 1.0 / grid.weights()(i);
    return green::CovKernelSpec::tabulated(grid, table);
}

/// operator with prescribed singular values and random weighted-orthonormal
/// singular functions
inline green::HsOperator synthetic_operator(const Grid& grid, const Vector& singular_values,
                                            std::uint64_t seed) {
    const Index n = grid.size();
    const Index r = singular_values.size();
    const auto u = green::orthonormalize(green::Quasimatrix(grid, random_matrix(n, r, seed)));
    const auto v =
        green::orthonormalize(green::Quasimatrix(grid, random_matrix(n, r, seed ^ 0xabcdef)));
    Matrix kernel =
        u.columns * singular_values.asDiagonal() * v.columns.transpose();
    return green::HsOperator(grid, grid, std::move(kernel));
}

}  // namespace testing
