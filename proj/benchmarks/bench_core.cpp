#include <benchmark/benchmark.h>

#include <green/elliptic.hpp>
#include <green/partition.hpp>
#include <green/reconstruct.hpp>
#include <green/rsvd.hpp>

using namespace green;

namespace {

Grid line(Index n) { return Grid::uniform(Box::unit(1), n); }

void BM_mercer_build(benchmark::State& state) {
    const Grid g = line(state.range(0));
    const auto kernel = CovKernelSpec::squared_exponential(0.1);
    for (auto _ : state) benchmark::DoNotOptimize(build_mercer(kernel, g));
}
BENCHMARK(BM_mercer_build)->Arg(64)->Arg(128)->Arg(256);

void BM_sample_gp(benchmark::State& state) {
    const Grid g = line(128);
    const MercerBasis basis = build_mercer(CovKernelSpec::squared_exponential(0.1), g);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(sample_gp(basis, state.range(0), seed++));
}
BENCHMARK(BM_sample_gp)->Arg(8)->Arg(32);

void BM_weighted_svd(benchmark::State& state) {
    const Grid g = line(state.range(0));
    Matrix kernel(g.size(), g.size());
    for (Index i = 0; i < g.size(); ++i)
        for (Index j = 0; j < g.size(); ++j) {
            const double d = g.nodes()(i, 0) - g.nodes()(j, 0);
            kernel(i, j) = std::exp(-d * d);
        }
    const HsOperator op(g, g, kernel);
    for (auto _ : state) benchmark::DoNotOptimize(weighted_svd(op));
}
BENCHMARK(BM_weighted_svd)->Arg(64)->Arg(128);

void BM_elliptic_factorize(benchmark::State& state) {
    const Grid g = Grid::uniform(Box::unit(3), state.range(0));
    const auto coeff = CoefficientField::identity(3);
    for (auto _ : state) {
        EllipticOracle oracle(coeff, g);
        benchmark::DoNotOptimize(oracle.matrix());
    }
}
BENCHMARK(BM_elliptic_factorize)->Arg(9)->Arg(17);

void BM_elliptic_solve(benchmark::State& state) {
    const Grid g = Grid::uniform(Box::unit(3), state.range(0));
    const EllipticOracle oracle(CoefficientField::identity(3), g);
    const Vector f = Vector::Ones(g.size());
    for (auto _ : state) benchmark::DoNotOptimize(oracle.apply(f));
}
BENCHMARK(BM_elliptic_solve)->Arg(9)->Arg(17);

void BM_learn_block(benchmark::State& state) {
    const Grid g = line(256);
    const EllipticOracle oracle(CoefficientField::identity(1), g);
    const auto kernel = CovKernelSpec::squared_exponential(0.05);
    Box x = Box::unit(1), y = Box::unit(1);
    x.hi[0] = 0.25;
    y.lo[0] = 0.75;
    const Index k = state.range(0);
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(learn_block(oracle, kernel, x, y, k, k, seed++));
}
BENCHMARK(BM_learn_block)->Arg(4)->Arg(8);

void BM_build_partition(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_partition(3, state.range(0)));
}
BENCHMARK(BM_build_partition)->Arg(2)->Arg(3);

void BM_learn_green_1d(benchmark::State& state) {
    const Grid g = line(256);
    const EllipticOracle oracle(CoefficientField::identity(1), g);
    const auto kernel = CovKernelSpec::squared_exponential(0.05);
    LearnConfig config;
    config.k = state.range(0);
    config.p = state.range(0);
    config.levels = 4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(learn_green(oracle, kernel, config));
        ++config.seed;
    }
}
BENCHMARK(BM_learn_green_1d)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
