#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace green {

/// Axis-aligned box in 1, 2 or 3 dimensions. Unused axes carry [0,0].
struct Box {
    int dim = 1;
    std::array<double, 3> lo{{0.0, 0.0, 0.0}};
    std::array<double, 3> hi{{0.0, 0.0, 0.0}};

    static Box unit(int dim) {
        Box b;
        b.dim = dim;
        for (int d = 0; d < dim; ++d) {
            b.lo[d] = 0.0;
            b.hi[d] = 1.0;
        }
        return b;
    }

    double extent(int axis) const { return hi[axis] - lo[axis]; }

    double volume() const {
        double v = 1.0;
        for (int d = 0; d < dim; ++d) v *= extent(d);
        return v;
    }

    double diameter() const {
        double s = 0.0;
        for (int d = 0; d < dim; ++d) s += extent(d) * extent(d);
        return std::sqrt(s);
    }

    bool contains(const std::array<double, 3>& p) const {
        for (int d = 0; d < dim; ++d)
            if (p[d] < lo[d] || p[d] > hi[d]) return false;
        return true;
    }

    /// Membership convention used to assign nodes to cells of a partition:
    /// half-open on every internal face, closed on the domain's upper face.
    /// Guarantees each point belongs to exactly one cell of a tiling.
    bool owns(const std::array<double, 3>& p, const Box& domain) const {
        for (int d = 0; d < dim; ++d) {
            if (p[d] < lo[d]) return false;
            const bool top = hi[d] == domain.hi[d];
            if (top ? p[d] > hi[d] : p[d] >= hi[d]) return false;
        }
        return true;
    }

    bool intersects(const Box& other) const {
        for (int d = 0; d < dim; ++d)
            if (lo[d] > other.hi[d] || hi[d] < other.lo[d]) return false;
        return true;
    }

    friend bool operator==(const Box& a, const Box& b) {
        return a.dim == b.dim && a.lo == b.lo && a.hi == b.hi;
    }
};

/// Shortest Euclidean distance between two boxes (0 when they touch or overlap).
inline double distance(const Box& a, const Box& b) {
    if (a.dim != b.dim) throw std::invalid_argument("box dimension mismatch");
    double s = 0.0;
    for (int d = 0; d < a.dim; ++d) {
        const double gap = std::max({a.lo[d] - b.hi[d], b.lo[d] - a.hi[d], 0.0});
        s += gap * gap;
    }
    return std::sqrt(s);
}

}  // namespace green
