#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "folmet/rng.hpp"
#include "folmet/types.hpp"

namespace folmet::planar {

// Poincare densities of the planar model domains carried by leaves, in the
// curvature -1 normalization: the unit disc has density 2/(1-|q|^2). This is
// the normalization under which the punctured-disc metric reads
// 4/(|q|^2 (log|q|^2)^2) |dq|^2, which the examples pin down.
//
// Inputs within 1e-12 of a puncture or boundary are rejected, not clamped.

constexpr double kEdgeGuard = 1e-12;

struct HyperbolicDensity {
    double value = 0;
    enum class Source { ClosedForm, Oracle, BoundPair } source = Source::ClosedForm;
};

/// 2R/(R^2 - |q|^2) on D(0,R).
HyperbolicDensity density_disc(cplx q, double R);

/// 2/(|q| |log(|q|^2/R^2)|) on D(0,R) minus the origin.
HyperbolicDensity density_punctured_disc(cplx q, double R);

/// Density of the annulus r < |q| < R, computed by pulling the strip density
/// back through the exponential covering (no transcribed closed form).
HyperbolicDensity density_annulus(cplx q, double r, double R);

/// 1/(c - Re t) on the half-plane {Re t < c}; backs flow-chart leaf models.
HyperbolicDensity density_halfplane(cplx t, double c);

/// Planar model domain of a leaf.
struct PlanarDomain {
    enum class Kind { Disc, PuncturedDisc, Annulus, Sampled } kind = Kind::Disc;
    double R = 1;   // outer radius
    double r = 0;   // inner radius (annulus)
    // Sampled: membership predicate plus bounding box
    std::function<bool(cplx)> pred;
    double bb_re_lo = -1, bb_re_hi = 1, bb_im_lo = -1, bb_im_hi = 1;

    static PlanarDomain disc(double R);
    static PlanarDomain punctured_disc(double R);
    static PlanarDomain annulus(double r, double R);
    static PlanarDomain sampled(std::function<bool(cplx)> pred, double re_lo, double re_hi,
                                double im_lo, double im_hi);

    bool member(cplx q) const;
    /// Density at an interior point; Sampled domains have no closed form.
    HyperbolicDensity density(cplx q) const;
};

struct DensityBounds {
    double lower = 0;                 // density of the smallest enclosing catalog domain found
    std::optional<double> upper;      // density of the inscribed disc; absent when none found
    double probe_resolution = 0;
};

/// Inclusion bounds for a sampled domain: lower from an enclosing disc, upper
/// from the inscribed disc of radius dist(q, boundary), probed along rays.
DensityBounds density_bounds(const PlanarDomain& sampled, cplx q, int rays = 256);

/// A holomorphic covering with enough structure to check the density
/// convention: lambda_target(map(z)) |map'(z)| == lambda_source(z).
struct CoveringMap {
    std::string name;
    std::function<cplx(cplx)> map;
    std::function<cplx(cplx)> deriv;
    std::function<double(cplx)> source_density;
    std::function<double(cplx)> target_density;
    std::function<cplx(RngStream&)> sample_source;
};

/// |lambda_target(map(z)) |map'(z)| - lambda_source(z)|.
double pushforward_consistency_check(const CoveringMap& cover, cplx z);

/// identity, scaling, disc automorphism, disc -> punctured disc, half-plane ->
/// punctured disc, strip -> annulus, Cayley disc -> half-plane.
std::vector<CoveringMap> covering_catalog();

} // namespace folmet::planar
