#include "green/elliptic.hpp"

#include <Eigen/SparseCholesky>

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace green {

CoefficientField CoefficientField::identity(int dim) {
    return CoefficientField(
        dim, [](const std::array<double, 3>&) { return std::array<double, 3>{1.0, 1.0, 1.0}; },
        "identity");
}

CoefficientField CoefficientField::diagonal(int dim, std::array<double, 3> entries) {
    std::string desc = "diag:";
    for (int d = 0; d < dim; ++d) desc += (d ? "," : "") + std::to_string(entries[d]);
    return CoefficientField(
        dim, [entries](const std::array<double, 3>&) { return entries; }, desc);
}

CoefficientField CoefficientField::sinusoidal(int dim) {
    return CoefficientField(
        dim,
        [](const std::array<double, 3>& p) {
            const double a = 1.0 + 0.5 * std::sin(3.14159265358979323846 * p[0]);
            return std::array<double, 3>{a, a, a};
        },
        "sinusoidal");
}

CoefficientField CoefficientField::from_function(int dim, DiagFn fn, std::string description) {
    return CoefficientField(dim, std::move(fn), std::move(description));
}

double kappa_c(const CoefficientField& coeff, const Grid& grid) {
    double max_eig = 0.0;
    double min_eig = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < grid.size(); ++i) {
        const auto a = coeff.at(grid.node(i));
        for (int d = 0; d < grid.dim(); ++d) {
            max_eig = std::max(max_eig, a[d]);
            min_eig = std::min(min_eig, a[d]);
        }
    }
    if (!(min_eig > 0.0)) throw std::runtime_error("coefficient field is not positive definite");
    return max_eig / min_eig;
}

struct EllipticOracle::Backend {
    Eigen::SparseMatrix<double> op;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
    mutable std::atomic<long> queries{0};
};

EllipticOracle::EllipticOracle(const CoefficientField& coeff, const Grid& grid)
    : grid_(grid), coeff_(coeff), backend_(std::make_shared<Backend>()) {
    if (coeff.dim() != grid.dim())
        throw std::invalid_argument("coefficient field dimension does not match grid");
    if (grid.nodes_per_axis() < 1)
        throw std::invalid_argument("elliptic oracle needs a uniform tensor grid");

    const int dim = grid.dim();
    const Index m = grid.nodes_per_axis();
    const Index n = grid.size();

    std::array<double, 3> h{{1.0, 1.0, 1.0}};
    for (int d = 0; d < dim; ++d) h[d] = grid.box().extent(d) / static_cast<double>(m);

    // cache the diagonal coefficient at every node, rejecting non-SPD entries
    std::vector<std::array<double, 3>> a(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i) {
        a[static_cast<size_t>(i)] = coeff_.at(grid.node(i));
        for (int d = 0; d < dim; ++d)
            if (!(a[static_cast<size_t>(i)][d] > 0.0))
                throw std::invalid_argument("coefficient not positive definite at node " +
                                            std::to_string(i));
    }

    Index stride[3] = {1, m, m * m};
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<size_t>(n * (2 * dim + 1)));
    for (Index i = 0; i < n; ++i) {
        double diag = 0.0;
        Index rem = i;
        Index id[3] = {0, 0, 0};
        for (int d = 0; d < dim; ++d) {
            id[d] = rem % m;
            rem /= m;
        }
        for (int d = 0; d < dim; ++d) {
            const double inv_h2 = 1.0 / (h[d] * h[d]);
            // face toward +d
            if (id[d] + 1 < m) {
                const Index j = i + stride[d];
                const double face = 0.5 * (a[static_cast<size_t>(i)][d] + a[static_cast<size_t>(j)][d]);
                diag += face * inv_h2;
                triplets.emplace_back(i, j, -face * inv_h2);
            } else {
                diag += 2.0 * a[static_cast<size_t>(i)][d] * inv_h2;  // Dirichlet wall, half cell
            }
            // face toward -d
            if (id[d] > 0) {
                const Index j = i - stride[d];
                const double face = 0.5 * (a[static_cast<size_t>(i)][d] + a[static_cast<size_t>(j)][d]);
                diag += face * inv_h2;
                triplets.emplace_back(i, j, -face * inv_h2);
            } else {
                diag += 2.0 * a[static_cast<size_t>(i)][d] * inv_h2;
            }
        }
        triplets.emplace_back(i, i, diag);
    }

    backend_->op.resize(n, n);
    backend_->op.setFromTriplets(triplets.begin(), triplets.end());
    backend_->solver.compute(backend_->op);
    if (backend_->solver.info() != Eigen::Success)
        throw std::runtime_error("factorization of the elliptic operator failed");
}

Vector EllipticOracle::apply(const Vector& f) const {
    if (f.size() != grid_.size())
        throw std::invalid_argument("right-hand side does not live on the oracle's grid");
    backend_->queries.fetch_add(1, std::memory_order_relaxed);
    Vector u = backend_->solver.solve(f);
    if (backend_->solver.info() != Eigen::Success)
        throw std::runtime_error("elliptic solve failed");
    return u;
}

long EllipticOracle::query_count() const {
    return backend_->queries.load(std::memory_order_relaxed);
}

const Eigen::SparseMatrix<double>& EllipticOracle::matrix() const { return backend_->op; }

DenseGreen dense_green(const EllipticOracle& oracle, Index node_cap) {
    const Grid& grid = oracle.grid();
    const Index n = grid.size();
    if (n > node_cap)
        throw std::invalid_argument("dense reference refused: " + std::to_string(n) +
                                    " nodes exceed the cap of " + std::to_string(node_cap));

    DenseGreen ref;
    ref.grid = grid;
    ref.values.resize(n, n);
    Vector e = Vector::Zero(n);
    for (Index j = 0; j < n; ++j) {
        e(j) = 1.0 / grid.weights()(j);
        ref.values.col(j) = oracle.apply(e);
        e(j) = 0.0;
    }
    return ref;
}

double block_norm_sq(const DenseGreen& ref, const Box& X, const Box& Y) {
    const auto rows = ref.grid.indices_in(X);
    const auto cols = ref.grid.indices_in(Y);
    double total = 0.0;
    for (const Index i : rows) {
        const double wi = ref.grid.weights()(i);
        for (const Index j : cols) {
            const double g = ref.values(i, j);
            total += wi * ref.grid.weights()(j) * g * g;
        }
    }
    return total;
}

double estimate_decay_constant(const DenseGreen& ref) {
    const double norm = hs_norm(ref.as_operator());
    if (norm == 0.0) return 0.0;
    const Index n = ref.grid.size();
    double best = 0.0;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            if (i == j) continue;
            const double r = (ref.grid.nodes().row(i) - ref.grid.nodes().row(j)).norm();
            best = std::max(best, ref.values(i, j) * r);
        }
    return best / norm;
}

}  // namespace green
