#pragma once

#include <optional>

#include "folmet/cloud.hpp"
#include "folmet/grid.hpp"
#include "folmet/metric.hpp"
#include "folmet/sequence.hpp"

namespace folmet::geo {

// Kernel of a domain sequence at grid resolution h. The tail intersection
// cap(k in [n_cap, n_max]) W_k stands in for the infinite tails; because the
// truncated tilde-V_n nest monotonically in n, the union over n <= n_cap of
// the base components equals the single component at n = n_cap, which is what
// gets computed. "Interior" is grid erosion by one cell, "component" is the
// 2A-neighbor flood fill of the base node.

struct KernelOptions {
    int n_cap = -1;                 // default n_max / 2
    std::int64_t memory_cap = 1'200'000'000;  // bytes across live bit grids
};

struct KernelResult {
    GridSpec grid;
    BitGrid region;               // empty when degenerate
    bool degenerate = false;      // the {0} marker of the definition
    bool inconclusive = false;    // grid artifact: base node on the interior boundary
    std::string note;
    std::int64_t cells = 0;
    std::vector<int> base_idx;    // grid position of the sequence base point
    int base_j = 0;

    SampleCloud boundary_cloud(std::int64_t max_points = 2'000'000) const;
    SampleCloud skeleton_cloud(std::int64_t max_points = 100'000) const;
};

KernelResult kernel_of_sequence(const DomainSequence& seq, int n_max, const RBox& box,
                                double h, KernelOptions opt = {});

/// Kernel of the reindexed subsequence {W_{indices[i]}}.
KernelResult kernel_of_subsequence(const DomainSequence& seq, const std::vector<int>& indices,
                                   const RBox& box, double h, KernelOptions opt = {});

/// rho between a kernel region and a symbolic domain, both read on the
/// region's grid with the same interior-erosion and base-component
/// conventions (so identical shapes compare to exactly zero, and the
/// discretization bias cancels instead of double counting). Distances larger
/// than `cap` come back as +infinity.
double region_rho_to_domain(const KernelResult& k, const Domain& d, double cap);

/// rho between two kernel regions on identical grids.
double region_rho(const KernelResult& a, const KernelResult& b, double cap);

enum class ConvergenceVerdict { Converges, Fails, Inconclusive };

struct ConvergenceReport {
    ConvergenceVerdict verdict = ConvergenceVerdict::Inconclusive;
    std::string witness;
    KernelResult full;                       // kernel of the whole sequence
    std::vector<double> subseq_rho;          // rho of each subsequence kernel vs full
    double tolerance = 0;
};

/// Def. 1.2-style finite check: the kernel of the full sequence, the even/odd
/// subsequences and `subsequence_count` seeded random subsequences must agree
/// within 2h in rho.
ConvergenceReport check_kernel_convergence(const DomainSequence& seq, int subsequence_count,
                                           int n_max, const RBox& box, double h,
                                           std::uint64_t seed, KernelOptions opt = {});

struct AbsorptionResult {
    bool absorbed = false;
    int n0 = -1;     // smallest index from which K stays inside W_n
};

/// Smallest n0 <= n_max with K in W_n for all n in [n0, n_max]; K points that
/// never stay absorbed give {absorbed=false}.
AbsorptionResult compact_absorption_index(const DomainSequence& seq, const SampleCloud& K,
                                          int n_max);

} // namespace folmet::geo
