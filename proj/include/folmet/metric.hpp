#pragma once

#include "folmet/cloud.hpp"
#include "folmet/domain.hpp"

namespace folmet::geo {

// Hausdorff machinery. All point-point distances use the coordinate-max
// metric d(z,w) = max_i |z_i - w_i| (see domain.hpp).

/// sup_{a in A} min_{b in B} d(a,b). Bucket-hash accelerated, OpenMP max
/// reduction; thread-count independent.
double directed_hausdorff(const SampleCloud& A, const SampleCloud& B);

/// Plain O(|A||B|) reference used by tests and the benchmark.
double directed_hausdorff_serial_ref(const SampleCloud& A, const SampleCloud& B);

/// H(A,B) = max of the two directed distances. Errors on empty clouds.
double hausdorff_distance(const SampleCloud& A, const SampleCloud& B);

/// sup over the closure of A (sampled on the h-grid of box) of the max-metric
/// distance to the closure of B; branch-and-bound on box classification, so
/// no cloud is materialized. Approximates the true sup within O(h).
double directed_sup_closure(const Domain& A, const Domain& B, const RBox& box, double h);

/// Same for boundaries: sup over grid nodes with mixed-sign neighborhood in A
/// of the distance to B's classification surface.
double directed_sup_boundary(const Domain& A, const Domain& B, const RBox& box, double h);

/// rho(U,V) = H(clU, clV) + H(bdU, bdV) at pitch h.
/// Requires both domains bounded and nonempty at resolution h.
double rho_distance(const Domain& U, const Domain& V, const RBox& box, double h);

} // namespace folmet::geo
