#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "folmet/config.hpp"
#include "folmet/types.hpp"

namespace folmet::geo {

// Open connected subsets of C^N as expression trees with exact membership.
// Metric quantities (distances, Hausdorff, kernels) are computed elsewhere as
// grid approximations; the tree itself answers pointwise and box queries.
//
// Point-set distances use the coordinate-max metric
//     d(z, w) = max_i |z_i - w_i|,
// whose unit balls are polydiscs. Tube cross-sections stay Euclidean (they
// define the set, not the metric).

enum class BoxClass { Inside, Outside, Straddles };

enum class PointClass { Interior, Exterior, NearBoundary };

class Domain;
using DomainPtr = std::shared_ptr<const Domain>;

class Domain {
public:
    enum class Kind { Polydisc, Ball, Tube, Union, Intersection, Difference, Thickening };

    static DomainPtr polydisc(CPoint center, std::vector<double> radii);
    static DomainPtr ball(CPoint center, double radius);
    /// Euclidean r-neighborhood of the complex segment
    /// { a + z*(b-a) : |z - 1/2| <= 1/2 }  (the complex disc with real diameter [a,b]).
    static DomainPtr tube(CPoint a, CPoint b, double radius);
    static DomainPtr unite(std::vector<DomainPtr> children);
    static DomainPtr intersect(std::vector<DomainPtr> children);
    static DomainPtr difference(DomainPtr left, DomainPtr right);
    /// Max-metric eps-thickening of the child (child must have closed-form distance).
    static DomainPtr thicken(DomainPtr child, double eps);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }

    /// Open-set membership; exact inequalities on the tree.
    bool member(const CPoint& p) const;
    /// Membership in the closure (<= instead of <). For Difference nodes this
    /// over-approximates the true closure; see notes in the implementation.
    bool closure_member(const CPoint& p) const;

    /// Conservative interval classification of an axis-aligned box:
    /// Inside  => box is contained in the open set,
    /// Outside => box does not meet the closure,
    /// Straddles otherwise (including "could not decide").
    BoxClass classify(const RBox& box) const;

    /// Same classification for a max-metric ball (a product of discs of
    /// radius t around the coordinates of c). Exact for polydiscs and balls.
    BoxClass classify_maxball(const CPoint& c, double t) const;

    /// Exact max-metric distance to the closure where a closed form exists
    /// (polydisc, ball, tube, unions and thickenings of those); nullopt else.
    std::optional<double> dist_closure_fast(const CPoint& p) const;

    /// Max-metric distance to the closure, via the fast path or else bisection
    /// on box classification (then a certified lower bound within tol).
    double dist_closure(const CPoint& p, double tol = 1e-9) const;

    /// Max-metric distance to the classification surface (largest cube around
    /// p uniformly inside or uniformly outside). Certified lower bound.
    double dist_boundary(const CPoint& p, double tol = 1e-9) const;

    /// Box with lo/hi per real axis containing the closure, padded by pad.
    RBox bounding_box(double pad = 0.0) const;

    cfg::Record to_config() const;
    static DomainPtr from_config(const cfg::Record& r);

    /// Euclidean distance to the tube's core segment disc (Tube nodes only).
    double tube_segment_distance(const CPoint& p) const;

    // accessors used by geometry-aware code (leaf truncation, oracles)
    const CPoint& center() const { return center_; }
    const std::vector<double>& radii() const { return radii_; }
    double radius() const { return radii_.at(0); }
    const CPoint& tube_a() const { return center_; }
    const CPoint& tube_b() const { return b_; }
    const std::vector<DomainPtr>& children() const { return children_; }
    double epsilon() const { return eps_; }

private:
    Domain() = default;

    Kind kind_ = Kind::Polydisc;
    int dim_ = 0;
    CPoint center_;               // polydisc/ball center, tube endpoint a
    CPoint b_;                    // tube endpoint b
    std::vector<double> radii_;   // polydisc radii, or {radius} for ball/tube
    std::vector<DomainPtr> children_;
    double eps_ = 0;              // thickening

    double tube_seg_dist2(const CPoint& p) const;  // Euclidean distance to the segment disc
};

/// interior / exterior / near_boundary classification of a point at tolerance
/// tol, decided by classifying the max-metric cube of radius tol around p.
PointClass contains(const Domain& d, const CPoint& p, double tol);

} // namespace folmet::geo
