#pragma once

#include <map>

#include "folmet/eta.hpp"
#include "folmet/kernel.hpp"
#include "folmet/sequence.hpp"
#include "folmet/transversal.hpp"

namespace folmet::lab {

using geo::DomainPtr;
using geo::DomainSequence;
using geo::SampleCloud;

// ---------------------------------------------------------------------------
// defective-set machinery

struct FDetection {
    SampleCloud samples;                    // persistent escape nodes
    std::vector<int> cluster_of;            // cluster id per sample
    int cluster_count = 0;
    std::vector<int> tested_indices;        // tail indices that were scanned
};

struct FDetectOptions {
    double persistence = 0.6;   // fraction of tested tail indices that must hit
    int probe_count = 12;       // how many tail indices seed candidates
    std::int64_t budget = 4'000'000;
    /// optional explicit subsequence; the detection then runs along these
    /// indices (Def. 1.4 quantifies over subsequences)
    std::vector<int> indices;
};

/// Escape-limit samples: grid nodes outside the closure of W that W_n keeps
/// visiting for a persistent fraction of the tested tail indices, clustered
/// at radius 2h. Empty F is a valid outcome.
FDetection detect_F(const DomainSequence& seq, DomainPtr W, const RBox& box, double h,
                    int n_max, FDetectOptions opt = {});

struct DefectiveAnswer {
    bool value = false;
    bool confident = true;   // false when decided through a truncated traced leaf
};

/// Does the leaf through p (in the ambient foliation) meet the h-neighborhood
/// of the F samples? Catalog leaves are tested through their charts, other
/// fields through traced leaves (flagged lower-confidence).
DefectiveAnswer defective_membership(const fol::PolyVectorField& X, const FDetection& F,
                                     const CPoint& p, DomainPtr U, double h);

enum class Removability { Removable, NotRemovable, Inconclusive };

/// Sufficient-condition check: estimate the leafwise interior of L_p cap F.
/// Point-like clusters (diameter <= 2h) are removable; a cluster containing a
/// leafwise disc of radius > 4h is not; anything else is inconclusive.
Removability removability_check(const fol::PolyVectorField& X, const FDetection& F,
                                const CPoint& p, DomainPtr U, double h);

// ---------------------------------------------------------------------------
// convergence experiments

struct ExperimentRow {
    CPoint p;
    int n = 0;
    eta::EtaEstimate eta_n;
    eta::EtaEstimate eta_W;
    double gap = 0;            // |eta_n - eta_W| when both exact, else 0 with flag
    bool exact_pair = false;   // both values closed-form
    bool in_S = false;
    bool in_E = false;
    bool starved = false;
};

struct ExperimentReport {
    std::string name;
    std::vector<ExperimentRow> rows;
    std::vector<int> schedule;
    bool pointwise_ok = true;
    bool uniform_ok = true;
    bool liminf_ok = true;
    double tol = 1e-3;
    double sup_gap_final = 0;
    double runtime_seconds = 0;
    std::string notes;

    /// recompute the three verdicts from the rows (the stored flags must match)
    void recompute_verdicts();
};

struct ExperimentSpec {
    fol::PolyVectorField X;
    DomainSequence seq;
    DomainPtr W;                       // limit domain (defaults to declared kernel)
    DomainPtr U;                       // ambient domain carrying the foliation
    std::vector<CPoint> points;        // evaluation points (pointwise) or K (uniform)
    std::vector<int> schedule;         // n values
    double tol = 1e-3;
    double mc_width = 0.05;            // sandwich width requirement for MC rows
    std::int64_t budget = 10'000;
    std::uint64_t seed = 7;
    double h = 0.02;                   // resolution used for S/E margins
    const FDetection* F = nullptr;     // optional, for S membership
};

/// eta_n(p) along the schedule vs eta_W(p); liminf and pointwise verdicts per
/// the theorems, with points of S u E reported separately.
ExperimentReport pointwise_convergence_experiment(const ExperimentSpec& spec);

/// sup over K of |eta_n - eta_W| per n; errors when K meets S u E (or S only
/// for transversal foliations when `allow_E_in_K`).
ExperimentReport uniform_convergence_experiment(const ExperimentSpec& spec,
                                                bool allow_E_in_K = false);

// ---------------------------------------------------------------------------
// Hausdorff => kernel

struct HausdorffKernelReport {
    bool rho_converges = false;
    bool kernel_matches = false;
    bool f_empty = false;
    int first_fail_stage = 0;     // 0 = pass, else 1..3
    std::vector<std::pair<int, double>> rho_series;
    double kernel_rho = 0;
};

HausdorffKernelReport hausdorff_to_kernel_check(const DomainSequence& seq, const RBox& box,
                                                double h, const std::vector<int>& schedule,
                                                int n_max);

// ---------------------------------------------------------------------------
// dense defective construction (section 6, remark 1)

struct DenseDefectiveReport {
    SampleCloud S_samples;
    std::vector<CPoint> test_grid;
    std::vector<double> grid_distance;   // distance from each test point to S samples
    double ball_radius = 0.25;
    bool covered = false;
    double oracle_max_line_distance = 0; // exact distances to the union of lines
};

/// Build the enumerated sequence up to (j_max, m_max), saturate the detected F
/// through the radial foliation, and check that the S samples meet every
/// radius-`ball_radius` ball around a planar test grid in W.
DenseDefectiveReport dense_defective_experiment(int j_max, int m_max, std::uint64_t seed,
                                                double h = 0.02, double ball_radius = 0.25,
                                                int grid_side = 9);

} // namespace folmet::lab
