#include "green/kernels.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>

namespace green {

CovKernelSpec CovKernelSpec::squared_exponential(double length_scale) {
    if (!(length_scale > 0.0))
        throw std::invalid_argument("squared-exponential length scale must be positive");
    CovKernelSpec k;
    k.family_ = Family::squared_exponential;
    k.length_scale_ = length_scale;
    return k;
}

CovKernelSpec CovKernelSpec::tabulated(const Grid& grid, Matrix table) {
    if (table.rows() != table.cols()) throw std::invalid_argument("kernel table must be square");
    if (table.rows() != grid.size())
        throw std::invalid_argument("kernel table does not match grid size");

    const double scale = table.cwiseAbs().maxCoeff();
    if (scale > 0.0) {
        const double asym = (table - table.transpose()).cwiseAbs().maxCoeff();
        if (asym > 1e-12 * scale)
            throw std::invalid_argument("kernel table is not symmetric");
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (table + table.transpose()),
                                                 Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("eigen-solve failed while validating kernel table");
        if (es.eigenvalues().minCoeff() < -1e-10 * scale)
            throw std::invalid_argument("kernel table is not positive semidefinite");
    }

    CovKernelSpec k;
    k.family_ = Family::user_tabulated;
    k.table_ = std::move(table);
    k.table_nodes_ = grid.size();
    return k;
}

Matrix CovKernelSpec::evaluate(const Grid& grid) const {
    if (family_ == Family::user_tabulated) {
        if (grid.size() != table_nodes_)
            throw std::invalid_argument("tabulated kernel evaluated on a different grid");
        return table_;
    }
    const Index n = grid.size();
    const double inv = 1.0 / (2.0 * length_scale_ * length_scale_);
    Matrix k(n, n);
    for (Index i = 0; i < n; ++i) {
        k(i, i) = 1.0;
        for (Index j = 0; j < i; ++j) {
            const double r2 = (grid.nodes().row(i) - grid.nodes().row(j)).squaredNorm();
            const double v = std::exp(-r2 * inv);
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

CovKernelSpec CovKernelSpec::restrict_to(const Grid& grid, const Box& sub) const {
    if (!sub.intersects(grid.box()))
        throw std::invalid_argument("sub-box does not intersect the grid's box");
    auto r = green::restrict_to(grid, sub);
    const auto& idx = r.index_map;
    const Index m = static_cast<Index>(idx.size());

    if (family_ == Family::squared_exponential) {
        // pointwise family: restriction is just re-evaluation on the sub-grid
        return tabulated(r.subgrid, squared_exponential(length_scale_).evaluate(r.subgrid));
    }
    if (grid.size() != table_nodes_)
        throw std::invalid_argument("tabulated kernel restricted on a different grid");
    Matrix sub_table(m, m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j)
            sub_table(i, j) = table_(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
    return tabulated(r.subgrid, std::move(sub_table));
}

std::string CovKernelSpec::describe() const {
    if (family_ == Family::squared_exponential)
        return "se:" + std::to_string(length_scale_);
    return "tabulated:" + std::to_string(table_.rows());
}

}  // namespace green
