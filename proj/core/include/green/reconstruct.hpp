#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "green/elliptic.hpp"
#include "green/kernels.hpp"
#include "green/mercer.hpp"
#include "green/oracle.hpp"
#include "green/partition.hpp"

namespace green {

/// Oracle backed by a known dense kernel; used for synthetic operators and
/// verification runs.
class OperatorOracle final : public ForwardOracle {
  public:
    explicit OperatorOracle(HsOperator op)
        : op_(std::move(op)), queries_(std::make_shared<std::atomic<long>>(0)) {
        if (op_.row_grid != op_.col_grid)
            throw std::invalid_argument("operator oracle requires a square operator");
    }

    const Grid& grid() const override { return op_.col_grid; }
    Vector apply(const Vector& f) const override {
        queries_->fetch_add(1, std::memory_order_relaxed);
        return green::apply(op_, f);
    }
    long query_count() const override { return queries_->load(std::memory_order_relaxed); }
    const HsOperator& op() const { return op_; }

  private:
    HsOperator op_;
    std::shared_ptr<std::atomic<long>> queries_;
};

/// Low-rank factors of the approximant on one admissible pair X x Y:
/// value(x, y) = sum_r left_r(x) right_r(y). The Y x X orientation shares
/// the same factors (transposed()).
struct LowRankBlock {
    Box X;
    Box Y;
    int level = 0;
    Quasimatrix left;                  // on the X sub-grid
    Quasimatrix right;                 // on the Y sub-grid
    std::vector<Index> row_index_map;  // X sub-grid -> parent grid node
    std::vector<Index> col_index_map;  // Y sub-grid -> parent grid node
    Index rank = 0;
    Index queries_used = 0;

    LowRankBlock transposed() const;
    Matrix dense() const { return left.columns * right.columns.transpose(); }
};

struct LearnConfig {
    double epsilon = 0.1;
    std::optional<Index> k;    // override target_rank(epsilon, c_sep)
    std::optional<Index> p;    // override p = k
    std::optional<int> levels; // override choose_levels(epsilon, c_kappa)
    double rho = default_rho;
    double c_sep = 1.0;
    double c_kappa = 1.0;
    std::uint64_t seed = 0;
};

/// The learned approximant: low-rank factors on every admissible pair of the
/// hierarchical partition, identically zero on the non-admissible leaves.
struct HierGreen {
    AdmissiblePartition partition;
    std::vector<LowRankBlock> blocks;  // one per unordered learned pair
    /// per entry of partition.admissible: block index and whether the stored
    /// factors must be transposed for that orientation
    std::vector<std::pair<Index, bool>> pair_blocks;
    Grid grid;
    CovKernelSpec kernel;
    Index k = 0;
    Index p = 0;
    std::uint64_t seed = 0;
    double epsilon_target = 0.0;
    double epsilon_effective = 0.0;
    long total_queries = 0;
};

struct BlockErrorEntry {
    Box X;
    Box Y;
    int level = 0;
    double error_sq_xy = 0.0;
    double error_sq_yx = 0.0;
    double gamma_k = 0.0;
    Index k_used = 0;
};

struct ErrorReport {
    double relative_l2_error = 0.0;         // includes the non-admissible mass
    double admissible_relative_error = 0.0; // learned blocks only, over ||ref||
    double non_admissible_mass_sq = 0.0;
    double reference_norm = 0.0;
    double gamma_eps = 0.0;                 // min gamma_k over learned blocks
    double gamma_eps_harmonic_bound = 0.0;  // (1/k) sum lambda_1/lambda_j of the argmin block
    long n_queries = 0;
    double epsilon_target = 0.0;
    std::vector<BlockErrorEntry> per_block;
};

/// One admissible pair through the oracle: k+p GP probes on Y extended by
/// zero, their images restricted to X and orthonormalized, then k+p more
/// queries on the zero-extended basis to produce the Y-side factors.
/// Exactly 2(k+p) queries; the X x Y and Y x X approximants share factors.
LowRankBlock learn_block(const ForwardOracle& oracle, const CovKernelSpec& kernel, const Box& X,
                         const Box& Y, Index k, Index p, std::uint64_t seed);

/// Full pipeline: pick depth and rank from epsilon (clamped to the grid, with
/// the achieved epsilon reported), build the partition, learn every unordered
/// admissible pair once, leave non-admissible leaves at zero.
HierGreen learn_green(const ForwardOracle& oracle, const CovKernelSpec& kernel,
                      const LearnConfig& config);

/// Nodal evaluation: locates the unique pair owning (x, y); low-rank value on
/// admissible pairs, exactly 0 on non-admissible leaves. Points are snapped
/// to their grid cell; throws outside the domain.
double evaluate(const HierGreen& g, const std::array<double, 3>& x,
                const std::array<double, 3>& y);

/// u(x) = sum over panels of the low-rank quadrature of G~(x, .) f.
Vector apply_green(const HierGreen& g, const Vector& f);

/// Verification-mode error decomposition against the dense reference,
/// including the per-block quality factors and their minimum.
ErrorReport global_error(const HierGreen& g, const DenseGreen& ref);

/// Rebuilds pair_blocks from partition + blocks (after deserialization).
void index_blocks(HierGreen& g);

}  // namespace green
