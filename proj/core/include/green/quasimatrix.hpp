#pragma once

#include "green/grid.hpp"

namespace green {

/// A finite set of grid functions treated as columns, sharing one quadrature.
struct Quasimatrix {
    Grid grid;
    Matrix columns;  // grid.size() x count

    Quasimatrix() = default;
    Quasimatrix(Grid g, Matrix cols) : grid(std::move(g)), columns(std::move(cols)) {
        if (columns.rows() != grid.size())
            throw std::invalid_argument("quasimatrix columns do not match grid");
    }

    Index count() const { return columns.cols(); }
    Vector column(Index j) const { return columns.col(j); }

    /// Gram matrix of weighted inner products between the columns of a and b.
    static Matrix gram(const Quasimatrix& a, const Quasimatrix& b) {
        if (a.grid != b.grid) throw std::invalid_argument("quasimatrix grid mismatch");
        return a.columns.transpose() * a.grid.weights().asDiagonal() * b.columns;
    }
};

}  // namespace green
