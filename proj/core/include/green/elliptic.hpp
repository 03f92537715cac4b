#pragma once

#include <Eigen/SparseCore>

#include <array>
#include <functional>
#include <memory>
#include <string>

#include "green/hsops.hpp"
#include "green/oracle.hpp"

namespace green {

/// Diagonal coefficient field A(x) = diag(a_1(x), ..., a_dim(x)) of the
/// divergence-form operator -div(A grad u). Presets cover the identity,
/// constant diagonal and a smoothly varying isotropic field
/// (1 + sin(pi x_1)/2) I; arbitrary diagonal fields via from_function.
class CoefficientField {
  public:
    using DiagFn = std::function<std::array<double, 3>(const std::array<double, 3>&)>;

    static CoefficientField identity(int dim);
    static CoefficientField diagonal(int dim, std::array<double, 3> entries);
    static CoefficientField sinusoidal(int dim);
    static CoefficientField from_function(int dim, DiagFn fn, std::string description);

    int dim() const { return dim_; }
    std::array<double, 3> at(const std::array<double, 3>& p) const { return fn_(p); }
    const std::string& describe() const { return description_; }

  private:
    CoefficientField(int dim, DiagFn fn, std::string description)
        : dim_(dim), fn_(std::move(fn)), description_(std::move(description)) {}

    int dim_;
    DiagFn fn_;
    std::string description_;
};

/// Spectral condition number sup_x lambda_max(A) / inf_x lambda_min(A),
/// extrema taken over the grid nodes.
double kappa_c(const CoefficientField& coeff, const Grid& grid);

/// Finite-difference solution operator of -div(A grad u) = f, u = 0 on the
/// boundary of the grid's box. Conservative flux stencil on the cell-centered
/// grid (3/5/7 points in 1/2/3 dimensions) with arithmetic face averaging of
/// A; wall faces use the boundary cell's coefficient across the half cell.
/// The assembled matrix is symmetric positive definite and factorized once.
class EllipticOracle final : public ForwardOracle {
  public:
    EllipticOracle(const CoefficientField& coeff, const Grid& grid);

    const Grid& grid() const override { return grid_; }
    const CoefficientField& coefficient() const { return coeff_; }

    /// Solves to the factorization's accuracy; increments the query counter.
    Vector apply(const Vector& f) const override;
    long query_count() const override;

    const Eigen::SparseMatrix<double>& matrix() const;

  private:
    Grid grid_;
    CoefficientField coeff_;
    struct Backend;
    std::shared_ptr<Backend> backend_;
};

/// Dense reference Green's function: column j holds the solution of
/// L u = e_j / w_j on the grid nodes. Verification-only artifact.
struct DenseGreen {
    Grid grid;
    Matrix values;

    HsOperator as_operator() const { return HsOperator(grid, grid, values); }
};

/// Refuses grids above `node_cap` nodes (one factorized solve per node).
DenseGreen dense_green(const EllipticOracle& oracle, Index node_cap = 8000);

/// Weighted L2 norm squared of the reference restricted to X x Y.
double block_norm_sq(const DenseGreen& ref, const Box& X, const Box& Y);

/// Empirical off-diagonal decay constant: max over node pairs x != y of
/// G(x,y) ||x-y|| / ||G||.
double estimate_decay_constant(const DenseGreen& ref);

}  // namespace green
