#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "green/hsops.hpp"
#include "green/mercer.hpp"

namespace green {

/// Black-box access to an operator: one call maps an input grid function to
/// the output grid function. The range finder sees nothing else.
using ApplyFn = std::function<Vector(const Vector&)>;

/// Outcome of randomized range finding with k+p Gaussian-process probes.
struct RangeResult {
    Quasimatrix test_functions;            // the k+p probes
    Quasimatrix images;                    // their images under the operator
    Quasimatrix basis;                     // orthonormal basis of span(images)
    std::optional<double> achieved_error;  // ||F - P F||_HS when a dense reference exists
    Index queries_used = 0;
};

/// Covariance-capture matrix of a kernel against k orthonormal functions and
/// the derived quality factor gamma_k = k / (lambda_1 trace(C^{-1})).
struct KernelQuality {
    Matrix C;
    double gamma_k = 0.0;
    Index k = 0;
    double lambda_1 = 0.0;
    double harmonic_lower_bound = 0.0;  // (1/k) sum_{j<=k} lambda_1/lambda_j <= 1/gamma_k
};

struct DeterministicBound {
    double lhs = 0.0;  // ||F - P_Y F||_HS^2
    double rhs = 0.0;  // ||Sigma_2||^2 + ||Sigma_2 Omega_2 pinv(Omega_1)||^2
};

struct ProbabilityBound {
    double bound = 0.0;
    double failure_prob = 0.0;
};

struct ExceedancePoint {
    double parameter = 0.0;  // the s or t at which the tail is probed
    double frequency = 0.0;  // empirical exceedance over the trials
    double bound = 0.0;      // theoretical tail bound at that parameter
};

struct PinvNormStatistics {
    double mean_sq_pinv_norm = 0.0;  // mean of trace((Omega_1 Omega_1^T)^{-1})
    double expected_mean = 0.0;      // trace(C^{-1}) / (l - k - 1)
    std::vector<ExceedancePoint> exceedance;
};

struct QuasimatrixNormStatistics {
    double mean_sq_norm = 0.0;   // mean of ||Omega||_HS^2
    double expected_mean = 0.0;  // l * trace(K)
    std::vector<ExceedancePoint> exceedance;
};

struct EnergyCheck {
    double empirical_mean = 0.0;
    double bound = 0.0;
    double std_error = 0.0;
};

/// Range finding through the black box only: draw k+p GP samples, push them
/// through the operator, orthonormalize the images. queries_used == k+p.
RangeResult randomized_range(const ApplyFn& apply_fn, const Grid& row_grid,
                             const MercerBasis& basis, Index k, Index p, std::uint64_t seed);

/// Verification-mode variant with a dense reference; fills achieved_error.
RangeResult randomized_range(const HsOperator& op, const MercerBasis& basis, Index k, Index p,
                             std::uint64_t seed);

/// ||op - P_basis op||_HS for an orthonormal basis on the row grid.
double range_error(const HsOperator& op, const Quasimatrix& basis);

/// C_ij = double quadrature of v_i(x) K(x,y) v_j(y), evaluated through the
/// Mercer modes; gamma_k per the quality-factor definition. Throws if C has
/// an eigenvalue below 1e-14 * lambda_1.
KernelQuality covariance_capture(const MercerBasis& basis, const Quasimatrix& v);

/// Exact inequality check: lhs <= rhs for every draw with full-rank Omega_1.
DeterministicBound deterministic_bound(const HsOperator& op, const Quasimatrix& omega, Index k);

/// (1 + sqrt(k (k+p) / (gamma_k (p-1)))) * sv_tail; requires p >= 2.
double evaluate_expectation_bound(double sv_tail, double gamma_k, Index k, Index p);

/// sqrt(1 + t^2 s^2 (3/gamma_k) (k(k+p)/(p+1)) trace_ratio) * sv_tail with
/// failure probability t^{-p} + (s e^{-(s^2-1)/2})^{k+p}; requires p >= 4
/// and s, t >= 1.
ProbabilityBound evaluate_probability_bound(double sv_tail, double gamma_k, Index k, Index p,
                                            double s, double t, double trace_ratio);

/// Monte-Carlo statistics of ||pinv(Omega_1)||_F^2 for Omega_1 with
/// independent N(0, C) columns; exceedance probed at t in {1, 1.5, 2, 3}.
PinvNormStatistics pinv_norm_statistics(const Matrix& C, Index k, Index l, Index trials,
                                        std::uint64_t seed);

/// Monte-Carlo tail of ||Omega||_HS^2 for l-column GP quasimatrices against
/// the Chernoff bound, probed at s in {1.2, 1.5, 2}.
QuasimatrixNormStatistics omega2_tail_check(const MercerBasis& basis, Index l, Index trials,
                                            std::uint64_t seed);

/// Monte-Carlo mean of ||Sigma_2 V_2^* Omega T||_HS^2 against
/// lambda_1 ||Sigma_2||^2 ||T||_F^2. T must have as many rows as Omega has
/// columns; the split index k is T's column count.
EnergyCheck sigma2_omega2_energy_check(const HsOperator& op, const MercerBasis& basis,
                                       const Matrix& T, Index trials, std::uint64_t seed);

}  // namespace green
