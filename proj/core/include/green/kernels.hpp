#pragma once

#include <optional>
#include <string>

#include "green/grid.hpp"

namespace green {

/// Covariance kernel of a Gaussian process: either the squared-exponential
/// family K(x,y) = exp(-|x-y|^2 / (2 l^2)) or a user-supplied node x node
/// table on a fixed grid.
class CovKernelSpec {
  public:
    enum class Family { squared_exponential, user_tabulated };

    /// squared-exponential with unit length scale
    CovKernelSpec() = default;

    static CovKernelSpec squared_exponential(double length_scale);

    /// Tabulated kernel. Must be symmetric within 1e-12 relative and have
    /// smallest eigenvalue >= -1e-10 relative; otherwise throws.
    static CovKernelSpec tabulated(const Grid& grid, Matrix table);

    Family family() const { return family_; }
    double length_scale() const { return length_scale_; }
    const Matrix& table() const { return table_; }

    /// Node x node evaluation matrix on `grid`. Tabulated kernels require
    /// the grid they were tabulated on (matched by node count).
    Matrix evaluate(const Grid& grid) const;

    /// Restriction to the sub-grid of nodes owned by `sub`: a tabulated
    /// kernel equal to the parent on the retained node pairs.
    CovKernelSpec restrict_to(const Grid& grid, const Box& sub) const;

    std::string describe() const;

  private:
    Family family_ = Family::squared_exponential;
    double length_scale_ = 1.0;
    Matrix table_;
    Index table_nodes_ = 0;
};

}  // namespace green
