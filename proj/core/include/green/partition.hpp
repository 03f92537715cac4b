#pragma once

#include <cstdint>
#include <vector>

#include "green/box.hpp"

namespace green {

/// rho = 1/sqrt(3): with dyadic cube splitting this makes the geometric
/// admissibility rule coincide with per-axis index adjacency.
inline constexpr double default_rho = 0.57735026918962576451;

struct BoxPair {
    Box X;
    Box Y;
    int level = 0;
};

/// dist(X, Y) >= rho * max(diam X, diam Y). The boundary case counts as
/// admissible; a 1e-12 relative slack keeps the exact dyadic boundary
/// (dist == rho * maxdiam up to rounding) from flipping.
bool admissibility(const Box& X, const Box& Y, double rho);

/// Hierarchical partition of domain x domain into admissible pairs (frozen at
/// the level where they first become admissible) and the leaf-level
/// non-admissible pairs. Both lists are in deterministic order.
struct AdmissiblePartition {
    int dim = 1;
    double rho = default_rho;
    int levels = 0;
    Box domain;
    std::vector<BoxPair> admissible;
    std::vector<BoxPair> non_admissible;  // leaf level only
};

/// Recursive dyadic construction over `domain` (default unit box). Refuses
/// n_levels * dim > 24 (combinatorial blow-up).
AdmissiblePartition build_partition(int dim, int n_levels, double rho = default_rho);
AdmissiblePartition build_partition(const Box& domain, int n_levels, double rho = default_rho);

/// Closed-form counts for dyadic splitting, used as cross-checks for the
/// geometric recursion.
long long non_admissible_count_formula(int dim, int n_levels);
long long admissible_count_formula(int dim, int n_levels);

/// Depth making the ignored near-diagonal mass epsilon-small:
/// ceil(log2(54 pi^2 (6+sqrt(3)) c^2) + 2 log2(1/epsilon)).
int choose_levels(double epsilon, double c_kappa);

/// Separable-approximation target rank:
/// ceil(c_sep) * ceil(ln(1/epsilon))^4 + ceil(ln(1/epsilon)).
int target_rank(double epsilon, double c_sep);

}  // namespace green
