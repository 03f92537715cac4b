#pragma once

#include "green/grid.hpp"

namespace green {

/// Input-output access to a solution operator: one apply() per query. This is
/// everything the learner is allowed to see.
class ForwardOracle {
  public:
    virtual ~ForwardOracle() = default;
    virtual const Grid& grid() const = 0;
    virtual Vector apply(const Vector& f) const = 0;
    virtual long query_count() const = 0;
};

}  // namespace green
