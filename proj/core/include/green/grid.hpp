#pragma once

#include <Eigen/Core>

#include <array>
#include <vector>

#include "green/box.hpp"

namespace green {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Tensor-product quadrature grid on a box.
///
/// Nodes are cell centers (midpoint rule): along each axis the box is split
/// into nodes_per_axis equal cells and the node sits at the cell center, so
/// every node carries the same weight h^dim and the weights sum to the box
/// volume exactly. Cell-centered nodes never land on the dyadic cut planes
/// used by the hierarchical partition, and the uniform weights make discrete
/// solution operators exactly symmetric.
class Grid {
  public:
    Grid() = default;

    /// Uniform grid with nodes_per_axis cells per axis.
    static Grid uniform(const Box& box, Index nodes_per_axis);

    /// Grid from an explicit node set (used for restrictions to sub-boxes).
    /// nodes_per_axis > 0 marks a uniform tensor grid (deserialization).
    static Grid from_nodes(const Box& box, int dim, Matrix nodes, Vector weights,
                           Index nodes_per_axis = 0);

    int dim() const { return box_.dim; }
    const Box& box() const { return box_; }
    Index size() const { return nodes_.rows(); }
    Index nodes_per_axis() const { return nodes_per_axis_; }

    /// n x 3 matrix of node coordinates (axes beyond dim() are zero).
    const Matrix& nodes() const { return nodes_; }
    const Vector& weights() const { return weights_; }

    std::array<double, 3> node(Index i) const {
        return {nodes_(i, 0), nodes_(i, 1), nodes_(i, 2)};
    }

    /// Weighted L2 inner product of two grid functions.
    double inner(const Vector& f, const Vector& g) const;
    double norm(const Vector& f) const { return std::sqrt(inner(f, f)); }

    /// Indices of nodes owned by `sub` (half-open on internal faces of the
    /// grid's box, closed at the top face).
    std::vector<Index> indices_in(const Box& sub) const;

    /// Node of the cell containing p (uniform grids only); throws outside
    /// the closed box.
    Index locate(const std::array<double, 3>& p) const;

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.box_ == b.box_ && a.nodes_.rows() == b.nodes_.rows() &&
               a.nodes_ == b.nodes_ && a.weights_ == b.weights_;
    }
    friend bool operator!=(const Grid& a, const Grid& b) { return !(a == b); }

  private:
    Box box_;
    Index nodes_per_axis_ = 0;
    Matrix nodes_;    // size() x 3
    Vector weights_;  // size()
};

/// A grid restricted to a sub-box, together with the map back into the parent.
struct GridRestriction {
    Grid subgrid;
    std::vector<Index> index_map;  // subgrid node i == parent node index_map[i]
};

/// Sub-grid of the nodes owned by `sub`; weights inherited from the parent.
/// Throws if no node falls inside.
GridRestriction restrict_to(const Grid& grid, const Box& sub);

/// Pick out the sub-grid values of a parent grid function.
Vector restrict_function(const Vector& f, const std::vector<Index>& index_map);

/// Zero-extension from a sub-grid back to the parent grid. Adjoint of
/// restrict_function under the inherited quadrature.
Vector extend_by_zero(const Vector& f_sub, const std::vector<Index>& index_map,
                      Index parent_size);

}  // namespace green
