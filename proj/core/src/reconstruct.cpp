#include "green/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "green/rng.hpp"
#include "green/rsvd.hpp"

namespace green {

namespace {

constexpr double pi = 3.14159265358979323846;

std::array<double, 6> box_key(const Box& b) {
    return {b.lo[0], b.lo[1], b.lo[2], b.hi[0], b.hi[1], b.hi[2]};
}

bool box_less(const Box& a, const Box& b) {
    for (int d = 0; d < 3; ++d) {
        if (a.lo[d] != b.lo[d]) return a.lo[d] < b.lo[d];
    }
    return false;
}

// restrictions and Mercer bases per unique box, shared across the blocks
// that reuse the same sub-domain
class SubdomainCache {
  public:
    SubdomainCache(const Grid& grid, const CovKernelSpec& kernel) : grid_(grid), kernel_(kernel) {}

    const GridRestriction& restriction(const Box& box) {
        auto [it, inserted] = restrictions_.try_emplace(box_key(box));
        if (inserted) it->second = restrict_to(grid_, box);
        return it->second;
    }

    const MercerBasis& basis(const Box& box) {
        auto [it, inserted] = bases_.try_emplace(box_key(box));
        if (inserted) {
            const GridRestriction& r = restriction(box);
            it->second = build_mercer(kernel_.restrict_to(grid_, box), r.subgrid);
        }
        return it->second;
    }

  private:
    const Grid& grid_;
    const CovKernelSpec& kernel_;
    std::map<std::array<double, 6>, GridRestriction> restrictions_;
    std::map<std::array<double, 6>, MercerBasis> bases_;
};

Index binsearch(const std::vector<Index>& sorted, Index value) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), value);
    if (it == sorted.end() || *it != value)
        throw std::logic_error("node not found in block sub-grid");
    return static_cast<Index>(it - sorted.begin());
}

std::string block_label(const Box& X, const Box& Y) {
    auto one = [](const Box& b) {
        std::string s = "[";
        for (int d = 0; d < b.dim; ++d)
            s += (d ? " x " : "") + std::to_string(b.lo[d]) + "," + std::to_string(b.hi[d]);
        return s + "]";
    };
    return one(X) + " x " + one(Y);
}

LowRankBlock learn_block_impl(const ForwardOracle& oracle, const MercerBasis& basis_y,
                              const GridRestriction& rx, const GridRestriction& ry, const Box& X,
                              const Box& Y, int level, Index k, Index p, std::uint64_t seed) try {
    const Index l = k + p;
    const Index n_parent = oracle.grid().size();
    if (l > rx.subgrid.size())
        throw std::invalid_argument("k + p exceeds the X sub-grid size; use a finer grid");

    LowRankBlock block;
    block.X = X;
    block.Y = Y;
    block.level = level;
    block.row_index_map = rx.index_map;
    block.col_index_map = ry.index_map;

    const Quasimatrix omega = sample_gp(basis_y, l, seed);

    Matrix images(rx.subgrid.size(), l);
    for (Index j = 0; j < l; ++j) {
        const Vector u = oracle.apply(extend_by_zero(omega.column(j), ry.index_map, n_parent));
        images.col(j) = restrict_function(u, rx.index_map);
    }

    double max_norm = 0.0;
    for (Index j = 0; j < l; ++j)
        max_norm = std::max(max_norm, rx.subgrid.norm(images.col(j)));
    if (max_norm == 0.0) {
        std::fprintf(stderr, "greenlearn: warning: operator annihilated every probe on a block; "
                             "keeping a rank-0 block\n");
        block.left = Quasimatrix(rx.subgrid, Matrix(rx.subgrid.size(), 0));
        block.right = Quasimatrix(ry.subgrid, Matrix(ry.subgrid.size(), 0));
        block.rank = 0;
        block.queries_used = l;
        return block;
    }

    // keep all k+p directions: dropping numerically dependent columns would
    // break the exact 2(k+p) query count, and extra directions only shrink
    // the projection error
    block.left = orthonormalize_full(Quasimatrix(rx.subgrid, std::move(images)));

    Matrix right(ry.subgrid.size(), l);
    for (Index c = 0; c < l; ++c) {
        const Vector u = oracle.apply(extend_by_zero(block.left.column(c), rx.index_map, n_parent));
        right.col(c) = restrict_function(u, ry.index_map);
    }
    block.right = Quasimatrix(ry.subgrid, std::move(right));
    block.rank = l;
    block.queries_used = 2 * l;
    return block;
} catch (const std::exception& e) {
    throw std::runtime_error("learning block " + block_label(X, Y) + ": " + e.what());
}

}  // namespace

LowRankBlock LowRankBlock::transposed() const {
    LowRankBlock t;
    t.X = Y;
    t.Y = X;
    t.level = level;
    t.left = right;
    t.right = left;
    t.row_index_map = col_index_map;
    t.col_index_map = row_index_map;
    t.rank = rank;
    t.queries_used = queries_used;
    return t;
}

LowRankBlock learn_block(const ForwardOracle& oracle, const CovKernelSpec& kernel, const Box& X,
                         const Box& Y, Index k, Index p, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("target rank k must be >= 1");
    SubdomainCache cache(oracle.grid(), kernel);
    return learn_block_impl(oracle, cache.basis(Y), cache.restriction(X), cache.restriction(Y), X,
                            Y, 0, k, p, seed);
}

HierGreen learn_green(const ForwardOracle& oracle, const CovKernelSpec& kernel,
                      const LearnConfig& config) {
    if (!(config.epsilon > 0.0 && config.epsilon < 1.0))
        throw std::invalid_argument("epsilon must be in (0,1)");
    const Grid& grid = oracle.grid();
    if (grid.nodes_per_axis() < 1)
        throw std::invalid_argument("learner needs a uniform tensor grid");

    // depth: requested or epsilon-driven, clamped so every leaf keeps at
    // least 2 nodes per axis (and the partition stays enumerable)
    const Index m = grid.nodes_per_axis();
    int n_max = 0;
    while (m / (Index(1) << (n_max + 1)) >= 2 && (n_max + 1) * grid.dim() <= 24) ++n_max;
    if (n_max < 1) throw std::invalid_argument("grid too coarse for any partition level");

    const int n_raw = config.levels ? *config.levels : choose_levels(config.epsilon, config.c_kappa);
    const int n = std::min(std::max(n_raw, 1), n_max);

    HierGreen g;
    g.grid = grid;
    g.kernel = kernel;
    g.seed = config.seed;
    g.epsilon_target = config.epsilon;
    if (n < n_raw) {
        const double c = 54.0 * pi * pi * (6.0 + std::sqrt(3.0)) * config.c_kappa * config.c_kappa;
        g.epsilon_effective = std::sqrt(c / std::pow(2.0, n));
    } else {
        g.epsilon_effective = config.epsilon;
    }

    g.partition = build_partition(grid.box(), n, config.rho);

    // canonical unordered pairs in first-appearance order
    std::vector<std::pair<Box, Box>> unordered;
    std::map<std::array<double, 6>, char> seen;
    std::vector<int> pair_level;
    for (const BoxPair& pair : g.partition.admissible) {
        const Box& a = box_less(pair.X, pair.Y) ? pair.X : pair.Y;
        const Box& b = box_less(pair.X, pair.Y) ? pair.Y : pair.X;
        std::array<double, 6> key{a.lo[0], a.lo[1], a.lo[2], b.lo[0], b.lo[1], b.lo[2]};
        if (seen.emplace(key, 1).second) {
            unordered.emplace_back(a, b);
            pair_level.push_back(pair.level);
        }
    }
    if (unordered.empty()) throw std::invalid_argument("partition has no admissible pairs");

    SubdomainCache cache(grid, kernel);
    Index min_subgrid = grid.size();
    for (const auto& [a, b] : unordered) {
        min_subgrid = std::min(min_subgrid, static_cast<Index>(cache.restriction(a).subgrid.size()));
        min_subgrid = std::min(min_subgrid, static_cast<Index>(cache.restriction(b).subgrid.size()));
    }

    const Index k_raw = config.k ? *config.k : target_rank(config.epsilon, config.c_sep);
    Index k, p;
    if (config.p) {
        p = *config.p;
        k = std::min(k_raw, min_subgrid - p);
    } else {
        k = std::min(k_raw, min_subgrid / 2);
        p = k;
    }
    if (k < 1)
        throw std::invalid_argument("target rank clamped below 1 by the sub-grid size; "
                                    "use a finer grid");
    g.k = k;
    g.p = p;

    g.blocks.reserve(unordered.size());
    for (size_t i = 0; i < unordered.size(); ++i) {
        const auto& [a, b] = unordered[i];
        g.blocks.push_back(learn_block_impl(oracle, cache.basis(b), cache.restriction(a),
                                            cache.restriction(b), a, b, pair_level[i], k, p,
                                            derive_seed(config.seed, i)));
        g.total_queries += g.blocks.back().queries_used;
    }

    index_blocks(g);
    return g;
}

void index_blocks(HierGreen& g) {
    std::map<std::array<double, 12>, Index> by_boxes;
    for (Index i = 0; i < static_cast<Index>(g.blocks.size()); ++i) {
        const auto kx = box_key(g.blocks[static_cast<size_t>(i)].X);
        const auto ky = box_key(g.blocks[static_cast<size_t>(i)].Y);
        std::array<double, 12> key;
        std::copy(kx.begin(), kx.end(), key.begin());
        std::copy(ky.begin(), ky.end(), key.begin() + 6);
        by_boxes[key] = i;
    }
    g.pair_blocks.clear();
    g.pair_blocks.reserve(g.partition.admissible.size());
    for (const BoxPair& pair : g.partition.admissible) {
        const auto kx = box_key(pair.X);
        const auto ky = box_key(pair.Y);
        std::array<double, 12> direct, flipped;
        std::copy(kx.begin(), kx.end(), direct.begin());
        std::copy(ky.begin(), ky.end(), direct.begin() + 6);
        std::copy(ky.begin(), ky.end(), flipped.begin());
        std::copy(kx.begin(), kx.end(), flipped.begin() + 6);
        if (auto it = by_boxes.find(direct); it != by_boxes.end())
            g.pair_blocks.emplace_back(it->second, false);
        else if (auto it2 = by_boxes.find(flipped); it2 != by_boxes.end())
            g.pair_blocks.emplace_back(it2->second, true);
        else
            throw std::logic_error("admissible pair without a learned block");
    }
}

double evaluate(const HierGreen& g, const std::array<double, 3>& x,
                const std::array<double, 3>& y) {
    // snap to the owning cell's node first; box membership of the node is
    // consistent with the half-open restriction convention, the raw point's
    // need not be when cells straddle a cut plane
    const Index ix = g.grid.locate(x);
    const Index iy = g.grid.locate(y);
    const auto nx = g.grid.node(ix);
    const auto ny = g.grid.node(iy);

    for (size_t pi_ = 0; pi_ < g.partition.admissible.size(); ++pi_) {
        const BoxPair& pair = g.partition.admissible[pi_];
        if (!pair.X.owns(nx, g.partition.domain) || !pair.Y.owns(ny, g.partition.domain)) continue;
        const auto [bi, transp] = g.pair_blocks[pi_];
        const LowRankBlock& b = g.blocks[static_cast<size_t>(bi)];
        if (b.rank == 0) return 0.0;
        const Index rx = binsearch(transp ? b.col_index_map : b.row_index_map, ix);
        const Index ry = binsearch(transp ? b.row_index_map : b.col_index_map, iy);
        if (transp) return b.right.columns.row(rx).dot(b.left.columns.row(ry));
        return b.left.columns.row(rx).dot(b.right.columns.row(ry));
    }
    return 0.0;  // non-admissible leaf
}

Vector apply_green(const HierGreen& g, const Vector& f) {
    if (f.size() != g.grid.size())
        throw std::invalid_argument("input function does not live on the learned grid");
    Vector u = Vector::Zero(g.grid.size());
    for (const LowRankBlock& b : g.blocks) {
        if (b.rank == 0) continue;
        // X x Y orientation
        Vector fy = restrict_function(f, b.col_index_map);
        Vector coeff = b.right.columns.transpose() * b.right.grid.weights().cwiseProduct(fy);
        Vector ux = b.left.columns * coeff;
        for (Index i = 0; i < ux.size(); ++i) u(b.row_index_map[static_cast<size_t>(i)]) += ux(i);
        // Y x X orientation, shared factors
        Vector fx = restrict_function(f, b.row_index_map);
        Vector coeff2 = b.left.columns.transpose() * b.left.grid.weights().cwiseProduct(fx);
        Vector uy = b.right.columns * coeff2;
        for (Index i = 0; i < uy.size(); ++i) u(b.col_index_map[static_cast<size_t>(i)]) += uy(i);
    }
    return u;
}

ErrorReport global_error(const HierGreen& g, const DenseGreen& ref) {
    if (ref.grid != g.grid) throw std::invalid_argument("reference grid does not match the model");

    ErrorReport report;
    report.reference_norm = hs_norm(ref.as_operator());
    report.n_queries = g.total_queries;
    report.epsilon_target = g.epsilon_target;

    auto gather = [&ref](const std::vector<Index>& rows, const std::vector<Index>& cols) {
        Matrix sub(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j)
                sub(static_cast<Index>(i), static_cast<Index>(j)) = ref.values(rows[i], cols[j]);
        return sub;
    };
    auto weighted_sq = [](const Matrix& diff, const Vector& wr, const Vector& wc) {
        return wr.dot(Vector(diff.cwiseAbs2() * wc));
    };

    double admissible_sq = 0.0;
    report.gamma_eps = std::numeric_limits<double>::infinity();
    for (const LowRankBlock& b : g.blocks) {
        BlockErrorEntry entry;
        entry.X = b.X;
        entry.Y = b.Y;
        entry.level = b.level;

        const Vector& wx = b.left.grid.weights();
        const Vector& wy = b.right.grid.weights();
        const Matrix ref_xy = gather(b.row_index_map, b.col_index_map);
        const Matrix ref_yx = gather(b.col_index_map, b.row_index_map);
        entry.error_sq_xy = weighted_sq(ref_xy - b.dense(), wx, wy);
        entry.error_sq_yx =
            weighted_sq(ref_yx - b.right.columns * b.left.columns.transpose(), wy, wx);
        admissible_sq += entry.error_sq_xy + entry.error_sq_yx;

        // quality factor of the sampling kernel against the reference's
        // leading right singular functions on this block; k is clamped to the
        // block's numerical rank, past which the singular functions carry no
        // information and the capture matrix degenerates
        const MercerBasis basis_y = build_mercer(g.kernel.restrict_to(g.grid, b.Y), b.right.grid);
        const WeightedSvd svd = weighted_svd(HsOperator(b.left.grid, b.right.grid, ref_xy));
        Index numerical_rank = 0;
        while (numerical_rank < svd.singular_values.size() &&
               svd.singular_values(numerical_rank) > 1e-12 * svd.singular_values(0))
            ++numerical_rank;
        const Index k_used = std::min({g.k, numerical_rank, basis_y.modes()});
        entry.k_used = k_used;
        const KernelQuality quality = covariance_capture(
            basis_y, Quasimatrix(b.right.grid, svd.right.columns.leftCols(k_used)));
        entry.gamma_k = quality.gamma_k;
        if (quality.gamma_k < report.gamma_eps) {
            report.gamma_eps = quality.gamma_k;
            report.gamma_eps_harmonic_bound = quality.harmonic_lower_bound;
        }
        report.per_block.push_back(std::move(entry));
    }

    std::map<std::array<double, 6>, std::vector<Index>> leaf_nodes;
    auto nodes_of = [&](const Box& box) -> const std::vector<Index>& {
        auto [it, inserted] = leaf_nodes.try_emplace(box_key(box));
        if (inserted) it->second = ref.grid.indices_in(box);
        return it->second;
    };
    double mass = 0.0;
    for (const BoxPair& pair : g.partition.non_admissible) {
        const auto& rows = nodes_of(pair.X);
        const auto& cols = nodes_of(pair.Y);
        for (const Index i : rows) {
            const double wi = ref.grid.weights()(i);
            for (const Index j : cols) {
                const double v = ref.values(i, j);
                mass += wi * ref.grid.weights()(j) * v * v;
            }
        }
    }
    report.non_admissible_mass_sq = mass;

    const double nrm2 = report.reference_norm * report.reference_norm;
    report.admissible_relative_error = std::sqrt(admissible_sq / nrm2);
    report.relative_l2_error = std::sqrt((admissible_sq + mass) / nrm2);
    return report;
}

}  // namespace green
