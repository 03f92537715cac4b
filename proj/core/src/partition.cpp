#include "green/partition.hpp"

#include <cmath>
#include <stdexcept>

namespace green {

namespace {

constexpr double pi = 3.14159265358979323846;

// ceil with a 1e-9 snap so that arguments a hair above an integer (from
// rounding of log/sqrt) do not bump the result.
int ceil_snap(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }

struct IndexPair {
    std::array<long, 3> x{{0, 0, 0}};
    std::array<long, 3> y{{0, 0, 0}};
};

Box box_at(const Box& domain, int level, const std::array<long, 3>& idx) {
    Box b;
    b.dim = domain.dim;
    const double denom = static_cast<double>(1L << level);
    for (int d = 0; d < domain.dim; ++d) {
        const double ext = domain.extent(d);
        b.lo[d] = domain.lo[d] + static_cast<double>(idx[d]) * ext / denom;
        b.hi[d] = domain.lo[d] + static_cast<double>(idx[d] + 1) * ext / denom;
    }
    return b;
}

}  // namespace

bool admissibility(const Box& X, const Box& Y, double rho) {
    const double maxdiam = std::max(X.diameter(), Y.diameter());
    return distance(X, Y) >= rho * maxdiam * (1.0 - 1e-12);
}

AdmissiblePartition build_partition(int dim, int n_levels, double rho) {
    return build_partition(Box::unit(dim), n_levels, rho);
}

AdmissiblePartition build_partition(const Box& domain, int n_levels, double rho) {
    const int dim = domain.dim;
    if (dim < 1 || dim > 3) throw std::invalid_argument("partition dim must be 1, 2 or 3");
    if (n_levels < 1) throw std::invalid_argument("need at least one level");
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
    if (n_levels * dim > 24)
        throw std::invalid_argument("refusing partition with more than 24 total splits");

    AdmissiblePartition part;
    part.dim = dim;
    part.rho = rho;
    part.levels = n_levels;
    part.domain = domain;

    std::vector<IndexPair> frontier = {IndexPair{}};  // root pair, level 0
    const long children = 1L << dim;

    for (int level = 1; level <= n_levels; ++level) {
        std::vector<IndexPair> next;
        next.reserve(frontier.size() * static_cast<size_t>(children * children));
        for (const IndexPair& parent : frontier) {
            for (long cx = 0; cx < children; ++cx) {
                for (long cy = 0; cy < children; ++cy) {
                    IndexPair child;
                    for (int d = 0; d < dim; ++d) {
                        child.x[d] = 2 * parent.x[d] + ((cx >> d) & 1);
                        child.y[d] = 2 * parent.y[d] + ((cy >> d) & 1);
                    }
                    const Box bx = box_at(domain, level, child.x);
                    const Box by = box_at(domain, level, child.y);
                    if (admissibility(bx, by, rho))
                        part.admissible.push_back({bx, by, level});
                    else
                        next.push_back(child);
                }
            }
        }
        frontier = std::move(next);
    }

    part.non_admissible.reserve(frontier.size());
    for (const IndexPair& leaf : frontier)
        part.non_admissible.push_back(
            {box_at(domain, n_levels, leaf.x), box_at(domain, n_levels, leaf.y), n_levels});
    return part;
}

long long non_admissible_count_formula(int dim, int n_levels) {
    const long long per_axis = 3LL * (1LL << n_levels) - 2;
    long long c = 1;
    for (int d = 0; d < dim; ++d) c *= per_axis;
    return c;
}

long long admissible_count_formula(int dim, int n_levels) {
    auto pow_dim = [dim](long long base) {
        long long r = 1;
        for (int d = 0; d < dim; ++d) r *= base;
        return r;
    };
    long long total = 0;
    for (int level = 1; level <= n_levels; ++level) {
        const long long parents = pow_dim(3LL * (1LL << (level - 1)) - 2);
        const long long kept = pow_dim(3LL * (1LL << level) - 2);
        total += (1LL << (2 * dim)) * parents - kept;
    }
    return total;
}

int choose_levels(double epsilon, double c_kappa) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must be in (0,1)");
    if (!(c_kappa > 0.0)) throw std::invalid_argument("c_kappa must be positive");
    const double constant = 54.0 * pi * pi * (6.0 + std::sqrt(3.0)) * c_kappa * c_kappa;
    return ceil_snap(std::log2(constant) + 2.0 * std::log2(1.0 / epsilon));
}

int target_rank(double epsilon, double c_sep) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must be in (0,1)");
    if (!(c_sep > 0.0)) throw std::invalid_argument("c_sep must be positive");
    const int log_term = ceil_snap(std::log(1.0 / epsilon));
    const int c = ceil_snap(c_sep);
    return c * log_term * log_term * log_term * log_term + log_term;
}

}  // namespace green
