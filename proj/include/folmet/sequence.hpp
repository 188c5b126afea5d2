#pragma once

#include <functional>
#include <map>
#include <string>

#include "folmet/domain.hpp"

namespace folmet::geo {

/// Indexed family n -> W_n (n >= 1) with the distinguished base point that
/// every member must contain.
struct DomainSequence {
    std::function<DomainPtr(int)> generator;
    CPoint base_point;
    DomainPtr declared_kernel;   // optional
    std::string declared_F;      // optional symbolic description of F
    /// Optional domain contained in every W_n; lets kernel scans short-circuit
    /// the tail intersection. Must be exact when supplied.
    DomainPtr eventual_core;
    std::string name;

    /// W_n with the base-point invariant checked (error on violation).
    DomainPtr at(int n) const {
        if (n < 1) throw input_error("DomainSequence: index must be >= 1");
        DomainPtr d = generator(n);
        if (!d->member(base_point))
            throw math_error("DomainSequence '" + name + "': base point not in W_" +
                             std::to_string(n));
        return d;
    }
};

// The paper-driven families. All are centered at 0 with Euclidean product
// geometry; radii follow the corresponding examples.

/// W_n = P(0,(1,1)) u P(0,(2,1/n)) in C^2, kernel P(0,(1,1)).
DomainSequence family_example_1_3();

/// W_n = P(0,(1,1,1)) u P(0,(1/n,2,1/n)) in C^3, kernel P(0,(1,1,1)).
DomainSequence family_example_6_1_domains();

/// W_n = P(0,(1,1)) u Tube({y=x} cap P(0,(3,3)), 1/n) in C^2, kernel P(0,(1,1)).
DomainSequence family_example_6_3_domains();

/// Constant W_n = D.
DomainSequence family_constant(DomainPtr d, CPoint base);

/// P(0,(r_n,...,r_n)) with r_n = max(1 - 1/n, 0.02), increasing to P(0,(1,..,1)).
DomainSequence family_monotone_exhaustion(int dim);

/// P(0,(1+1/n,...)), Hausdorff-convergent onto P(0,(1,...,1)).
DomainSequence family_concentric_growing(int dim);

/// P(0,(1,1)) for even n, P(0,(2,2)) for odd n; no kernel limit.
DomainSequence family_alternating();

/// P(0,(1/n,1/n)); kernel degenerates to the {0} marker.
DomainSequence family_shrinking();

/// Look up a family by its config name; throws input_error for unknown names.
DomainSequence family_by_name(const std::string& name, std::uint64_t seed);

/// Section 6 Remark 1: boustrophedon enumeration of W_{j,m} = P(0,(1,1)) u
/// Tube(L_j, 1/m) over the antidiagonals, where L_j is the complex line
/// through the j-th boundary point. Lives here so kernel tooling can run it;
/// defective-set analysis of it lives in the lab module.
DomainSequence family_dense_defective(std::uint64_t seed);

/// The j-th boundary direction used by family_dense_defective: the first
/// eight are a real-direction fan (so finite truncations already spread the
/// lines), later ones fill the boundary torus quasi-uniformly.
CPoint dense_defective_boundary_point(int j, std::uint64_t seed);

/// Index n -> (j, m) for the boustrophedon enumeration (1-based).
std::pair<int, int> dense_defective_jm(int n);

} // namespace folmet::geo
