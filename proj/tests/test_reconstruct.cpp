#include <doctest.h>

#include <green/reconstruct.hpp>
#include <green/rsvd.hpp>

#include <set>

#include "test_helpers.hpp"

using namespace green;

namespace {

constexpr double pi = 3.14159265358979323846;

Grid unit_line(Index n) { return Grid::uniform(Box::unit(1), n); }

// symmetric separable kernel of exact rank 3 (self-adjoint, like the PDE case)
OperatorOracle rank3_oracle(const Grid& g) {
    Matrix factors(g.size(), 3);
    for (Index i = 0; i < g.size(); ++i) {
        const double x = g.nodes()(i, 0);
        factors(i, 0) = 1.0;
        factors(i, 1) = std::sin(pi * x);
        factors(i, 2) = x * (1.0 - x);
    }
    Matrix kernel = factors * factors.transpose();
    return OperatorOracle(HsOperator(g, g, std::move(kernel)));
}

Box sub_box(double lo, double hi) {
    Box b = Box::unit(1);
    b.lo[0] = lo;
    b.hi[0] = hi;
    return b;
}

Matrix dense_block(const Matrix& values, const std::vector<Index>& rows,
                   const std::vector<Index>& cols) {
    Matrix sub(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j)
            sub(static_cast<Index>(i), static_cast<Index>(j)) = values(rows[i], cols[j]);
    return sub;
}

// nodal assembly of the learned approximant, the direct route used to
// cross-check the blockwise error report
Matrix assemble_dense(const HierGreen& g) {
    Matrix full = Matrix::Zero(g.grid.size(), g.grid.size());
    for (size_t pi_ = 0; pi_ < g.partition.admissible.size(); ++pi_) {
        const auto [bi, transp] = g.pair_blocks[pi_];
        const LowRankBlock& b = g.blocks[static_cast<size_t>(bi)];
        const Matrix block = transp ? Matrix(b.right.columns * b.left.columns.transpose())
                                    : Matrix(b.left.columns * b.right.columns.transpose());
        const auto& rows = transp ? b.col_index_map : b.row_index_map;
        const auto& cols = transp ? b.row_index_map : b.col_index_map;
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j)
                full(rows[i], cols[j]) = block(static_cast<Index>(i), static_cast<Index>(j));
    }
    return full;
}

}  // namespace

TEST_CASE("a separable kernel is reproduced from a single probe batch") {
    const Grid g = unit_line(64);
    const auto kernel = CovKernelSpec::squared_exponential(0.5);

    Matrix gk(g.size(), g.size());
    for (Index i = 0; i < g.size(); ++i)
        for (Index j = 0; j < g.size(); ++j) {
            const double x = g.nodes()(i, 0), y = g.nodes()(j, 0);
            gk(i, j) = (1.0 + x) * (1.0 + y);  // symmetric rank 1
        }
    const OperatorOracle oracle{HsOperator(g, g, gk)};

    const Box x = sub_box(0.0, 0.25), y = sub_box(0.75, 1.0);
    const LowRankBlock block = learn_block(oracle, kernel, x, y, 1, 2, 42);

    const Matrix truth = dense_block(gk, block.row_index_map, block.col_index_map);
    CHECK((block.dense() - truth).norm() <= 1e-8 * truth.norm());
    CHECK(block.queries_used == 6);
    CHECK(oracle.query_count() == 6);

    // the transposed orientation shares the factors
    const LowRankBlock t = block.transposed();
    CHECK(t.left.columns == block.right.columns);
    CHECK((t.dense() - block.dense().transpose()).norm() == 0.0);
}

TEST_CASE("learned block error obeys the probability bound in most seeds") {
    const Grid g = unit_line(256);
    const EllipticOracle oracle(CoefficientField::identity(1), g);
    const DenseGreen ref = dense_green(oracle);
    const auto kernel = CovKernelSpec::squared_exponential(0.05);

    const Box x = sub_box(0.0, 0.25), y = sub_box(0.75, 1.0);
    const Index k = 8, p = 8;

    // instantiate the bound from the dense reference and the measured
    // quality factor of the restricted sampling kernel
    const auto rx = restrict_to(g, x);
    const auto ry = restrict_to(g, y);
    const Matrix truth = dense_block(ref.values, rx.index_map, ry.index_map);
    const HsOperator block_op(rx.subgrid, ry.subgrid, truth);
    const WeightedSvd svd = weighted_svd(block_op);
    const MercerBasis basis_y = build_mercer(kernel.restrict_to(g, y), ry.subgrid);
    const KernelQuality quality = covariance_capture(
        basis_y, Quasimatrix(ry.subgrid, svd.right.columns.leftCols(k)));
    const double trace_ratio = basis_y.trace / basis_y.eigenvalues(0);
    const double s = std::pow(double(k), 0.25);
    const double t = std::exp(1.0);
    const ProbabilityBound pb =
        evaluate_probability_bound(svd.tail(k), quality.gamma_k, k, p, s, t, trace_ratio);

    // the 1D block is exactly rank one (any tridiagonal inverse is
    // semiseparable), so bound and error are both at roundoff scale; the
    // floating-point slack keeps the comparison meaningful
    const double fp_slack = 1e-12 * hs_norm(block_op);
    int successes = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const LowRankBlock block = learn_block(oracle, kernel, x, y, k, p, seed);
        const double err = hs_norm(HsOperator(rx.subgrid, ry.subgrid, truth - block.dense()));
        if (err <= pb.bound + fp_slack) ++successes;
    }
    CHECK(successes >= 95);
}

TEST_CASE("learned block error obeys the probability bound on a 2D block") {
    // 2D face-separated blocks carry a genuinely decaying spectrum, so the
    // bound is exercised away from roundoff
    const Grid g = Grid::uniform(Box::unit(2), 32);
    const EllipticOracle oracle(CoefficientField::identity(2), g);
    const DenseGreen ref = dense_green(oracle);
    const auto kernel = CovKernelSpec::squared_exponential(0.2);

    Box x = Box::unit(2), y = Box::unit(2);
    x.hi[0] = 0.25;
    x.hi[1] = 0.25;
    y.lo[0] = 0.75;
    y.hi[1] = 0.25;
    const Index k = 8, p = 8;

    const auto rx = restrict_to(g, x);
    const auto ry = restrict_to(g, y);
    const Matrix truth = dense_block(ref.values, rx.index_map, ry.index_map);
    const HsOperator block_op(rx.subgrid, ry.subgrid, truth);
    const WeightedSvd svd = weighted_svd(block_op);
    const MercerBasis basis_y = build_mercer(kernel.restrict_to(g, y), ry.subgrid);
    const KernelQuality quality = covariance_capture(
        basis_y, Quasimatrix(ry.subgrid, svd.right.columns.leftCols(k)));
    const ProbabilityBound pb =
        evaluate_probability_bound(svd.tail(k), quality.gamma_k, k, p, std::pow(double(k), 0.25),
                                   std::exp(1.0), basis_y.trace / basis_y.eigenvalues(0));

    int successes = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const LowRankBlock block = learn_block(oracle, kernel, x, y, k, p, seed);
        const double err = hs_norm(HsOperator(rx.subgrid, ry.subgrid, truth - block.dense()));
        if (err <= pb.bound) ++successes;
    }
    CHECK(successes >= 29);
}

TEST_CASE("learn_green on an exact rank-3 operator captures every block") {
    const Grid g = unit_line(64);
    const OperatorOracle oracle = rank3_oracle(g);
    LearnConfig config;
    config.epsilon = 0.1;
    config.k = 3;
    config.p = 3;
    config.levels = 3;
    config.seed = 5;
    const HierGreen green = learn_green(oracle, CovKernelSpec::squared_exponential(0.5), config);

    const DenseGreen ref{g, oracle.op().kernel};
    const ErrorReport report = global_error(green, ref);
    CHECK(report.admissible_relative_error <= 1e-6);

    // every learned admissible value matches the true kernel
    for (const BoxPair& pair : green.partition.admissible) {
        const auto rx = restrict_to(g, pair.X);
        const auto ry = restrict_to(g, pair.Y);
        const Index i = rx.index_map[rx.index_map.size() / 2];
        const Index j = ry.index_map[ry.index_map.size() / 3];
        const double got = evaluate(green, g.node(i), g.node(j));
        CHECK(got == doctest::Approx(oracle.op().kernel(i, j)).epsilon(1e-6));
    }
}

TEST_CASE("evaluation is exactly zero on non-admissible leaves") {
    const Grid g = unit_line(32);
    const OperatorOracle oracle = rank3_oracle(g);
    LearnConfig config;
    config.k = 3;
    config.p = 3;
    config.levels = 2;
    const HierGreen green = learn_green(oracle, CovKernelSpec::squared_exponential(0.5), config);

    for (const BoxPair& pair : green.partition.non_admissible) {
        const auto rx = restrict_to(g, pair.X);
        const auto ry = restrict_to(g, pair.Y);
        CHECK(evaluate(green, g.node(rx.index_map[0]), g.node(ry.index_map[0])) == 0.0);
    }
    CHECK_THROWS(evaluate(green, {5.0, 0, 0}, {0.5, 0, 0}));
}

TEST_CASE("shared factors make the two orientations exactly symmetric") {
    const Grid g = unit_line(64);
    const OperatorOracle oracle = rank3_oracle(g);
    LearnConfig config;
    config.k = 2;
    config.p = 2;
    config.levels = 3;
    const HierGreen green = learn_green(oracle, CovKernelSpec::squared_exponential(0.5), config);

    for (const BoxPair& pair : green.partition.admissible) {
        const auto rx = restrict_to(g, pair.X);
        const auto ry = restrict_to(g, pair.Y);
        const auto nx = g.node(rx.index_map[1]);
        const auto ny = g.node(ry.index_map[2]);
        CHECK(evaluate(green, nx, ny) == evaluate(green, ny, nx));  // bitwise
    }
}

TEST_CASE("query accounting: 2(k+p) per learned pair, totals match the oracle") {
    const Grid g = unit_line(128);
    const EllipticOracle oracle(CoefficientField::identity(1), g);
    const auto kernel = CovKernelSpec::squared_exponential(0.1);
    LearnConfig config;
    config.k = 4;
    config.p = 4;
    config.levels = 3;

    const long before = oracle.query_count();
    const HierGreen green = learn_green(oracle, kernel, config);
    const long spent = oracle.query_count() - before;

    const long pairs = static_cast<long>(green.blocks.size());
    CHECK(pairs == static_cast<long>(green.partition.admissible.size()) / 2);
    CHECK(green.total_queries == 2 * (4 + 4) * pairs);
    CHECK(spent == green.total_queries);
    for (const LowRankBlock& b : green.blocks) CHECK(b.queries_used == 16);
}

TEST_CASE("error report identity against direct dense subtraction") {
    const Grid g = unit_line(128);
    const EllipticOracle oracle(CoefficientField::identity(1), g);
    const DenseGreen ref = dense_green(oracle);
    const auto kernel = CovKernelSpec::squared_exponential(0.05);
    LearnConfig config;
    config.k = 6;
    config.p = 6;
    config.levels = 3;
    config.seed = 11;
    const HierGreen green = learn_green(oracle, kernel, config);
    const ErrorReport report = global_error(green, ref);

    const Matrix assembled = assemble_dense(green);
    const double direct =
        hs_norm(HsOperator(g, g, ref.values - assembled)) / report.reference_norm;
    CHECK(report.relative_l2_error == doctest::Approx(direct).epsilon(1e-10));

    CHECK(report.gamma_eps > 0.0);
    CHECK(report.gamma_eps <= 1.0 + 1e-10);
    CHECK(1.0 / report.gamma_eps >= report.gamma_eps_harmonic_bound - 1e-8);
    CHECK(report.n_queries == green.total_queries);
}

TEST_CASE("verification mode: per-block truncated SVDs achieve exactly the tail error") {
    const Grid g = unit_line(128);
    const EllipticOracle oracle(CoefficientField::identity(1), g);
    const DenseGreen ref = dense_green(oracle);

    // hand-built model whose blocks are the rank-k truncations of the
    // reference itself; the reported block errors must then be the
    // Eckart-Young tails
    HierGreen model;
    model.grid = g;
    model.kernel = CovKernelSpec::squared_exponential(0.2);
    model.k = 2;
    model.p = 0;
    model.partition = build_partition(g.box(), 3);

    std::vector<double> expected_tails_sq;
    std::set<std::array<double, 2>> seen;
    for (const BoxPair& pair : model.partition.admissible) {
        const Box& a = pair.X.lo[0] < pair.Y.lo[0] ? pair.X : pair.Y;
        const Box& b = pair.X.lo[0] < pair.Y.lo[0] ? pair.Y : pair.X;
        if (!seen.insert({a.lo[0], b.lo[0]}).second) continue;
        auto rx = restrict_to(g, a);
        auto ry = restrict_to(g, b);
        const Matrix sub = dense_block(ref.values, rx.index_map, ry.index_map);
        const WeightedSvd svd = weighted_svd(HsOperator(rx.subgrid, ry.subgrid, sub));
        const Index k = 2;
        LowRankBlock block;
        block.X = a;
        block.Y = b;
        block.level = pair.level;
        block.left = Quasimatrix(
            rx.subgrid,
            Matrix(svd.left.columns.leftCols(k) * svd.singular_values.head(k).asDiagonal()));
        block.right = Quasimatrix(ry.subgrid, Matrix(svd.right.columns.leftCols(k)));
        block.row_index_map = rx.index_map;
        block.col_index_map = ry.index_map;
        block.rank = k;
        model.blocks.push_back(std::move(block));
        expected_tails_sq.push_back(std::pow(svd.tail(k), 2));
    }
    index_blocks(model);

    const ErrorReport report = global_error(model, ref);
    REQUIRE(report.per_block.size() == expected_tails_sq.size());
    const double scale = std::pow(report.reference_norm, 2);
    for (size_t i = 0; i < report.per_block.size(); ++i) {
        CHECK(report.per_block[i].error_sq_xy ==
              doctest::Approx(expected_tails_sq[i]).epsilon(1e-10).scale(scale));
        CHECK(report.per_block[i].error_sq_yx ==
              doctest::Approx(expected_tails_sq[i]).epsilon(1e-10).scale(scale));
    }
}

TEST_CASE("learning the 1D Poisson Green captures the admissible region") {
    const Grid g = unit_line(256);
    const EllipticOracle oracle(CoefficientField::identity(1), g);
    const DenseGreen ref = dense_green(oracle);
    const auto kernel = CovKernelSpec::squared_exponential(0.05);
    LearnConfig config;
    config.k = 8;
    config.p = 8;
    config.levels = 4;
    config.seed = 3;
    const HierGreen green = learn_green(oracle, kernel, config);
    const ErrorReport report = global_error(green, ref);
    CHECK(report.admissible_relative_error <= 5e-2);
    MESSAGE("admissible relative error: ", report.admissible_relative_error,
            ", total (with near-diagonal mass): ", report.relative_l2_error);
}

TEST_CASE("mean error does not grow when the rank is doubled") {
    const Grid g = unit_line(128);
    const EllipticOracle oracle(CoefficientField::identity(1), g);
    const DenseGreen ref = dense_green(oracle);
    const auto kernel = CovKernelSpec::squared_exponential(0.05);

    auto mean_error = [&](Index k) {
        double sum = 0.0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            LearnConfig config;
            config.k = k;
            config.p = k;
            config.levels = 3;
            config.seed = seed;
            sum += global_error(learn_green(oracle, kernel, config), ref).relative_l2_error;
        }
        return sum / 20.0;
    };
    const double at4 = mean_error(4);
    const double at8 = mean_error(8);
    CHECK(at8 <= at4 + 1e-12);
}

TEST_CASE("determinism: identical config and seed give identical models") {
    const Grid g = unit_line(64);
    const OperatorOracle oracle = rank3_oracle(g);
    LearnConfig config;
    config.k = 3;
    config.p = 3;
    config.levels = 2;
    config.seed = 77;
    const auto kernel = CovKernelSpec::squared_exponential(0.3);
    const HierGreen a = learn_green(oracle, kernel, config);
    const HierGreen b = learn_green(oracle, kernel, config);
    REQUIRE(a.blocks.size() == b.blocks.size());
    for (size_t i = 0; i < a.blocks.size(); ++i) {
        CHECK(a.blocks[i].left.columns == b.blocks[i].left.columns);
        CHECK(a.blocks[i].right.columns == b.blocks[i].right.columns);
    }
    CHECK(a.total_queries == b.total_queries);
}

TEST_CASE("apply_green: zero input, dense-assembly oracle, PDE comparison") {
    const Grid g = unit_line(128);
    const EllipticOracle oracle(CoefficientField::identity(1), g);
    const DenseGreen ref = dense_green(oracle);
    const auto kernel = CovKernelSpec::squared_exponential(0.05);
    LearnConfig config;
    config.k = 8;
    config.p = 8;
    config.levels = 3;
    config.seed = 19;
    const HierGreen green = learn_green(oracle, kernel, config);

    CHECK(apply_green(green, Vector::Zero(g.size())).norm() == 0.0);

    // blockwise application equals applying the assembled dense approximant
    const Matrix assembled = assemble_dense(green);
    const Vector f = testing::random_vector(g.size(), 91);
    const Vector direct = assembled * g.weights().cwiseProduct(f);
    const Vector blockwise = apply_green(green, f);
    CHECK((blockwise - direct).norm() <= 1e-12 * direct.norm());

    // against the PDE solve: controlled by the total relative error
    Vector sine(g.size());
    for (Index i = 0; i < g.size(); ++i) sine(i) = std::sin(pi * g.nodes()(i, 0));
    const Vector u_green = apply_green(green, sine);
    const Vector u_pde = oracle.apply(sine);
    const ErrorReport report = global_error(green, ref);
    CHECK((u_green - u_pde).norm() / u_pde.norm() <= 2.0 * report.relative_l2_error);
}

TEST_CASE("depth is clamped to the grid and the achieved epsilon is reported") {
    const Grid g = unit_line(64);
    const OperatorOracle oracle = rank3_oracle(g);
    LearnConfig config;
    config.k = 1;
    config.p = 1;  // level-5 leaves keep only 2 nodes, so k + p must fit in 2
    config.levels = 10;  // 64 nodes support at most 5 levels with 2 nodes per leaf
    config.epsilon = 0.3;
    const HierGreen green = learn_green(oracle, CovKernelSpec::squared_exponential(0.5), config);
    CHECK(green.partition.levels == 5);
    CHECK(green.epsilon_effective > green.epsilon_target);  // honesty about the clamp
    CHECK(green.epsilon_target == 0.3);
}

TEST_CASE("variable-coefficient operators are learned the same way") {
    const Grid g = unit_line(128);
    const EllipticOracle oracle(CoefficientField::sinusoidal(1), g);
    const DenseGreen ref = dense_green(oracle);
    LearnConfig config;
    config.k = 8;
    config.p = 8;
    config.levels = 3;
    config.seed = 21;
    const HierGreen green =
        learn_green(oracle, CovKernelSpec::squared_exponential(0.05), config);
    const ErrorReport report = global_error(green, ref);
    CHECK(report.admissible_relative_error <= 1e-10);  // 1D blocks are still rank one
    CHECK(report.gamma_eps > 0.0);
    CHECK(report.gamma_eps <= 1.0 + 1e-10);
}

TEST_CASE("2D end-to-end: learned blocks match the dense reference") {
    const Grid g = Grid::uniform(Box::unit(2), 32);
    const EllipticOracle oracle(CoefficientField::identity(2), g);
    const DenseGreen ref = dense_green(oracle);
    LearnConfig config;
    config.k = 6;
    config.p = 6;
    config.levels = 2;
    config.seed = 8;
    const HierGreen green = learn_green(oracle, CovKernelSpec::squared_exponential(0.2), config);
    CHECK(green.blocks.size() == 78);  // 156 ordered admissible pairs at 2 levels
    CHECK(green.total_queries == 78 * 24);
    const ErrorReport report = global_error(green, ref);
    CHECK(report.admissible_relative_error <= 1e-4);
    CHECK(report.gamma_eps > 0.0);
    CHECK(report.gamma_eps <= 1.0 + 1e-10);
    // evaluation agrees with the reference inside an admissible pair
    const BoxPair& pair = green.partition.admissible.front();
    const auto rx = restrict_to(g, pair.X);
    const auto ry = restrict_to(g, pair.Y);
    const Index i = rx.index_map[rx.index_map.size() / 2];
    const Index j = ry.index_map[ry.index_map.size() / 2];
    CHECK(evaluate(green, g.node(i), g.node(j)) ==
          doctest::Approx(ref.values(i, j)).epsilon(1e-3));
}

TEST_CASE("rank clamping reports an unusable grid") {
    const Grid g = unit_line(8);
    const OperatorOracle oracle = rank3_oracle(g);
    LearnConfig config;
    config.k = 6;
    config.p = 6;  // k + p > any level-2 sub-grid on 8 nodes
    config.levels = 2;
    CHECK_THROWS(learn_green(oracle, CovKernelSpec::squared_exponential(0.5), config));
}
