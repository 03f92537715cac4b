#include "green/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace green {

Grid Grid::uniform(const Box& box, Index nodes_per_axis) {
    if (box.dim < 1 || box.dim > 3) throw std::invalid_argument("grid dim must be 1, 2 or 3");
    if (nodes_per_axis < 1) throw std::invalid_argument("nodes_per_axis must be positive");
    for (int d = 0; d < box.dim; ++d)
        if (!(box.hi[d] > box.lo[d])) throw std::invalid_argument("box has empty extent");

    Grid g;
    g.box_ = box;
    g.nodes_per_axis_ = nodes_per_axis;

    const int dim = box.dim;
    Index total = 1;
    for (int d = 0; d < dim; ++d) total *= nodes_per_axis;

    g.nodes_ = Matrix::Zero(total, 3);
    double cell_volume = 1.0;
    std::array<double, 3> h{{0.0, 0.0, 0.0}};
    for (int d = 0; d < dim; ++d) {
        h[d] = box.extent(d) / static_cast<double>(nodes_per_axis);
        cell_volume *= h[d];
    }
    g.weights_ = Vector::Constant(total, cell_volume);

    // axis 0 fastest
    for (Index i = 0; i < total; ++i) {
        Index rem = i;
        for (int d = 0; d < dim; ++d) {
            const Index id = rem % nodes_per_axis;
            rem /= nodes_per_axis;
            g.nodes_(i, d) = box.lo[d] + (static_cast<double>(id) + 0.5) * h[d];
        }
    }
    return g;
}

Grid Grid::from_nodes(const Box& box, int dim, Matrix nodes, Vector weights,
                      Index nodes_per_axis) {
    if (nodes.rows() != weights.size()) throw std::invalid_argument("nodes/weights size mismatch");
    if (nodes.cols() != 3) throw std::invalid_argument("nodes must be n x 3");
    Grid g;
    g.box_ = box;
    g.box_.dim = dim;
    g.nodes_per_axis_ = nodes_per_axis;
    g.nodes_ = std::move(nodes);
    g.weights_ = std::move(weights);
    return g;
}

double Grid::inner(const Vector& f, const Vector& g) const {
    if (f.size() != size() || g.size() != size())
        throw std::invalid_argument("grid function has wrong size");
    return f.cwiseProduct(weights_).dot(g);
}

std::vector<Index> Grid::indices_in(const Box& sub) const {
    std::vector<Index> idx;
    for (Index i = 0; i < size(); ++i)
        if (sub.owns(node(i), box_)) idx.push_back(i);
    return idx;
}

Index Grid::locate(const std::array<double, 3>& p) const {
    if (nodes_per_axis_ < 1)
        throw std::logic_error("locate requires a uniform tensor grid");
    Index idx = 0;
    Index stride = 1;
    for (int d = 0; d < dim(); ++d) {
        const double ext = box_.extent(d);
        if (p[d] < box_.lo[d] - 1e-14 * ext || p[d] > box_.hi[d] + 1e-14 * ext)
            throw std::invalid_argument("point outside the grid's box");
        const double h = ext / static_cast<double>(nodes_per_axis_);
        Index id = static_cast<Index>(std::floor((p[d] - box_.lo[d]) / h));
        id = std::min(std::max(id, Index(0)), nodes_per_axis_ - 1);
        idx += id * stride;
        stride *= nodes_per_axis_;
    }
    return idx;
}

GridRestriction restrict_to(const Grid& grid, const Box& sub) {
    auto idx = grid.indices_in(sub);
    if (idx.empty()) throw std::invalid_argument("sub-box contains no grid nodes");

    Matrix nodes(static_cast<Index>(idx.size()), 3);
    Vector weights(static_cast<Index>(idx.size()));
    for (Index i = 0; i < static_cast<Index>(idx.size()); ++i) {
        nodes.row(i) = grid.nodes().row(idx[static_cast<size_t>(i)]);
        weights(i) = grid.weights()(idx[static_cast<size_t>(i)]);
    }
    GridRestriction r;
    r.subgrid = Grid::from_nodes(sub, grid.dim(), std::move(nodes), std::move(weights));
    r.index_map = std::move(idx);
    return r;
}

Vector restrict_function(const Vector& f, const std::vector<Index>& index_map) {
    Vector out(static_cast<Index>(index_map.size()));
    for (Index i = 0; i < out.size(); ++i) out(i) = f(index_map[static_cast<size_t>(i)]);
    return out;
}

Vector extend_by_zero(const Vector& f_sub, const std::vector<Index>& index_map,
                      Index parent_size) {
    if (f_sub.size() != static_cast<Index>(index_map.size()))
        throw std::invalid_argument("sub-grid function does not match index map");
    Vector out = Vector::Zero(parent_size);
    for (Index i = 0; i < f_sub.size(); ++i) {
        const Index j = index_map[static_cast<size_t>(i)];
        if (j < 0 || j >= parent_size) throw std::invalid_argument("index map out of range");
        out(j) = f_sub(i);
    }
    return out;
}

}  // namespace green
