#pragma once

#include <functional>

#include "folmet/cloud.hpp"
#include "folmet/domain.hpp"
#include "folmet/grid.hpp"

namespace folmet::geo {

struct SampleOptions {
    std::int64_t budget = 2'000'000;   // max emitted points
    std::int64_t grid_cap = 1'500'000'000;  // max grid nodes for bit-grid passes
};

/// Interior grid-node cloud of D within box at pitch h. Box-pruned
/// enumeration: whole node ranges classified Inside are emitted in bulk,
/// Outside ranges are skipped, only straddling ranges evaluate per node.
SampleCloud sample(const Domain& d, const RBox& box, double h, SampleOptions opt = {});

/// Grid nodes whose 2A-neighborhood contains both members and non-members.
SampleCloud boundary_sample(const Domain& d, const RBox& box, double h, SampleOptions opt = {});

/// Stream every grid node p with member(include, p) and, when exclude is
/// non-null, !closure_member(exclude, p). Returns false when the budget was
/// exhausted before the enumeration finished.
bool for_each_node(const Domain& include, const Domain* exclude_closure,
                   const RBox& box, double h, std::int64_t budget,
                   const std::function<void(const CPoint&)>& sink);

} // namespace folmet::geo
