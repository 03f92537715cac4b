#include "green/rsvd.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

#include "green/rng.hpp"

namespace green {

namespace {

Matrix standard_normal(Index rows, Index cols, std::uint64_t seed) {
    Matrix z(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        NormalStream stream(derive_seed(seed, static_cast<std::uint64_t>(j)));
        for (Index i = 0; i < rows; ++i) z(i, j) = stream();
    }
    return z;
}

}  // namespace

RangeResult randomized_range(const ApplyFn& apply_fn, const Grid& row_grid,
                             const MercerBasis& basis, Index k, Index p, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("target rank k must be >= 1");
    if (p < 2) throw std::invalid_argument("oversampling p must be >= 2");

    RangeResult result;
    result.test_functions = sample_gp(basis, k + p, seed);

    Matrix images(row_grid.size(), k + p);
    for (Index j = 0; j < k + p; ++j) {
        Vector u = apply_fn(result.test_functions.column(j));
        if (u.size() != row_grid.size())
            throw std::runtime_error("oracle returned a function of unexpected size");
        images.col(j) = u;
    }
    result.images = Quasimatrix(row_grid, std::move(images));
    result.basis = orthonormalize(result.images);
    result.queries_used = k + p;
    return result;
}

RangeResult randomized_range(const HsOperator& op, const MercerBasis& basis, Index k, Index p,
                             std::uint64_t seed) {
    auto oracle = [&op](const Vector& f) { return apply(op, f); };
    RangeResult result = randomized_range(oracle, op.row_grid, basis, k, p, seed);
    result.achieved_error = range_error(op, result.basis);
    return result;
}

double range_error(const HsOperator& op, const Quasimatrix& basis) {
    Matrix residual = op.kernel;
    if (basis.count() > 0) {
        const Matrix coeffs =
            basis.columns.transpose() * op.row_grid.weights().asDiagonal() * op.kernel;
        residual -= basis.columns * coeffs;
    }
    return hs_norm(HsOperator(op.row_grid, op.col_grid, std::move(residual)));
}

KernelQuality covariance_capture(const MercerBasis& basis, const Quasimatrix& v) {
    if (v.grid != basis.grid)
        throw std::invalid_argument("singular functions do not live on the kernel's grid");
    const Index k = v.count();
    if (k < 1) throw std::invalid_argument("need at least one singular function");

    // modal coordinates: C = M^T diag(lambda) M with M = Psi^T W V
    const Matrix m = basis.eigenfunctions.transpose() * basis.grid.weights().asDiagonal() * v.columns;
    KernelQuality quality;
    quality.C = m.transpose() * basis.eigenvalues.asDiagonal() * m;
    quality.C = (0.5 * (quality.C + quality.C.transpose())).eval();
    quality.k = k;
    quality.lambda_1 = basis.eigenvalues(0);

    Eigen::SelfAdjointEigenSolver<Matrix> es(quality.C, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigen-solve failed on covariance-capture matrix");
    const double floor = 1e-14 * quality.lambda_1;
    double trace_inv = 0.0;
    for (Index i = 0; i < k; ++i) {
        const double mu = es.eigenvalues()(i);
        if (mu < floor)
            throw std::runtime_error("covariance-capture matrix is numerically singular: eigenvalue " +
                                     std::to_string(mu) + " below floor " + std::to_string(floor));
        trace_inv += 1.0 / mu;
    }
    quality.gamma_k = static_cast<double>(k) / (quality.lambda_1 * trace_inv);

    if (k <= basis.modes()) {
        double s = 0.0;
        for (Index j = 0; j < k; ++j) s += quality.lambda_1 / basis.eigenvalues(j);
        quality.harmonic_lower_bound = s / static_cast<double>(k);
    }
    return quality;
}

DeterministicBound deterministic_bound(const HsOperator& op, const Quasimatrix& omega, Index k) {
    if (omega.grid != op.col_grid)
        throw std::invalid_argument("test functions do not live on the operator's column grid");
    const Index l = omega.count();
    if (k < 1 || k > l) throw std::invalid_argument("need 1 <= k <= number of test functions");

    const WeightedSvd svd = weighted_svd(op);
    const Index r = svd.singular_values.size();
    const Index k_eff = std::min(k, r);

    // Omega_1 = V_1^* Omega, Omega_2 = V_2^* Omega in the weighted geometry
    const Matrix proj = svd.right.columns.transpose() * op.col_grid.weights().asDiagonal() * omega.columns;
    const Matrix omega1 = proj.topRows(k_eff);
    const Matrix omega2 = proj.bottomRows(r - k_eff);

    Eigen::JacobiSVD<Matrix> osvd(omega1, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sv = osvd.singularValues();
    if (sv.size() < k_eff || sv(k_eff - 1) <= 1e-10 * sv(0))
        throw std::runtime_error("Omega_1 is numerically rank deficient");
    // pinv through the SVD; full row rank was just established
    const Matrix pinv = osvd.matrixV() * sv.cwiseInverse().asDiagonal() * osvd.matrixU().transpose();

    DeterministicBound out;
    const Vector sigma2 = svd.singular_values.tail(r - k_eff);
    out.rhs = sigma2.squaredNorm() + (sigma2.asDiagonal() * omega2 * pinv).squaredNorm();

    Matrix images(op.row_grid.size(), l);
    for (Index j = 0; j < l; ++j) images.col(j) = apply(op, omega.column(j));
    const Quasimatrix q = orthonormalize(Quasimatrix(op.row_grid, std::move(images)));
    const double err = range_error(op, q);
    out.lhs = err * err;
    return out;
}

double evaluate_expectation_bound(double sv_tail, double gamma_k, Index k, Index p) {
    if (p < 2) throw std::invalid_argument("expectation bound requires p >= 2");
    if (!(gamma_k > 0.0 && gamma_k <= 1.0 + 1e-10))
        throw std::invalid_argument("gamma_k must lie in (0, 1]");
    const double kk = static_cast<double>(k);
    const double pp = static_cast<double>(p);
    return (1.0 + std::sqrt(kk * (kk + pp) / (gamma_k * (pp - 1.0)))) * sv_tail;
}

ProbabilityBound evaluate_probability_bound(double sv_tail, double gamma_k, Index k, Index p,
                                            double s, double t, double trace_ratio) {
    if (p < 4) throw std::invalid_argument("probability bound requires p >= 4");
    if (s < 1.0 || t < 1.0) throw std::invalid_argument("probability bound requires s, t >= 1");
    if (!(gamma_k > 0.0 && gamma_k <= 1.0 + 1e-10))
        throw std::invalid_argument("gamma_k must lie in (0, 1]");
    const double kk = static_cast<double>(k);
    const double pp = static_cast<double>(p);
    ProbabilityBound out;
    out.bound = std::sqrt(1.0 + t * t * s * s * (3.0 / gamma_k) * (kk * (kk + pp) / (pp + 1.0)) *
                                    trace_ratio) *
                sv_tail;
    out.failure_prob = std::pow(t, -pp) +
                       std::pow(s * std::exp(-(s * s - 1.0) / 2.0), static_cast<double>(k + p));
    return out;
}

PinvNormStatistics pinv_norm_statistics(const Matrix& C, Index k, Index l, Index trials,
                                        std::uint64_t seed) {
    if (C.rows() != k || C.cols() != k) throw std::invalid_argument("C must be k x k");
    if (l - k < 2) throw std::invalid_argument("pinv statistics require l - k >= 2");
    if (trials < 1) throw std::invalid_argument("need at least one trial");

    Eigen::LLT<Matrix> llt(C);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("C must be symmetric positive definite");
    const Matrix chol = llt.matrixL();
    const double trace_c_inv = llt.solve(Matrix::Identity(k, k)).trace();

    const std::vector<double> ts = {1.0, 1.5, 2.0, 3.0};
    std::vector<Index> exceed(ts.size(), 0);
    double sum = 0.0;
    for (Index trial = 0; trial < trials; ++trial) {
        const Matrix omega1 = chol * standard_normal(k, l, derive_seed(seed, trial));
        const Matrix gram = omega1 * omega1.transpose();
        const double trace_inv = gram.llt().solve(Matrix::Identity(k, k)).trace();
        sum += trace_inv;
        for (size_t i = 0; i < ts.size(); ++i) {
            const double threshold = 3.0 * trace_c_inv / static_cast<double>(l - k + 1) * ts[i] * ts[i];
            if (trace_inv > threshold) ++exceed[i];
        }
    }

    PinvNormStatistics out;
    out.mean_sq_pinv_norm = sum / static_cast<double>(trials);
    out.expected_mean = trace_c_inv / static_cast<double>(l - k - 1);
    for (size_t i = 0; i < ts.size(); ++i)
        out.exceedance.push_back({ts[i], static_cast<double>(exceed[i]) / static_cast<double>(trials),
                                  std::pow(ts[i], -static_cast<double>(l - k))});
    return out;
}

QuasimatrixNormStatistics omega2_tail_check(const MercerBasis& basis, Index l, Index trials,
                                            std::uint64_t seed) {
    if (l < 1) throw std::invalid_argument("need at least one column");
    if (trials < 1) throw std::invalid_argument("need at least one trial");

    const double trace = basis.trace;
    const std::vector<double> ss = {1.2, 1.5, 2.0};
    std::vector<Index> exceed(ss.size(), 0);
    double sum = 0.0;
    for (Index trial = 0; trial < trials; ++trial) {
        const Quasimatrix omega = sample_gp(basis, l, derive_seed(seed, trial));
        double sq = 0.0;
        for (Index j = 0; j < l; ++j) {
            const double n = basis.grid.norm(omega.columns.col(j));
            sq += n * n;
        }
        sum += sq;
        for (size_t i = 0; i < ss.size(); ++i)
            if (sq > static_cast<double>(l) * ss[i] * ss[i] * trace) ++exceed[i];
    }

    QuasimatrixNormStatistics out;
    out.mean_sq_norm = sum / static_cast<double>(trials);
    out.expected_mean = static_cast<double>(l) * trace;
    for (size_t i = 0; i < ss.size(); ++i)
        out.exceedance.push_back({ss[i], static_cast<double>(exceed[i]) / static_cast<double>(trials),
                                  std::pow(ss[i] * std::exp(-(ss[i] * ss[i] - 1.0) / 2.0),
                                           static_cast<double>(l))});
    return out;
}

EnergyCheck sigma2_omega2_energy_check(const HsOperator& op, const MercerBasis& basis,
                                       const Matrix& T, Index trials, std::uint64_t seed) {
    if (basis.grid != op.col_grid)
        throw std::invalid_argument("kernel basis does not live on the operator's column grid");
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    const Index l = T.rows();
    const Index k = T.cols();
    if (l < k) throw std::invalid_argument("T must have at least as many rows as columns");

    const WeightedSvd svd = weighted_svd(op);
    const Index r = svd.singular_values.size();
    const Index k_eff = std::min(k, r);
    const Vector sigma2 = svd.singular_values.tail(r - k_eff);
    const Matrix v2_w = svd.right.columns.rightCols(r - k_eff).transpose() *
                        op.col_grid.weights().asDiagonal();

    EnergyCheck out;
    out.bound = basis.eigenvalues(0) * sigma2.squaredNorm() * T.squaredNorm();
    if (sigma2.size() == 0 || T.squaredNorm() == 0.0) return out;

    double sum = 0.0;
    double sum_sq = 0.0;
    for (Index trial = 0; trial < trials; ++trial) {
        const Quasimatrix omega = sample_gp(basis, l, derive_seed(seed, trial));
        const double val = (sigma2.asDiagonal() * (v2_w * omega.columns) * T).squaredNorm();
        sum += val;
        sum_sq += val * val;
    }
    const double n = static_cast<double>(trials);
    out.empirical_mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - out.empirical_mean * out.empirical_mean);
    out.std_error = std::sqrt(var / n);
    return out;
}

}  // namespace green
