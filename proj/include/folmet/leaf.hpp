#pragma once

#include <functional>
#include <optional>

#include "folmet/cloud.hpp"
#include "folmet/domain.hpp"
#include "folmet/field.hpp"
#include "folmet/planar.hpp"

namespace folmet::fol {

/// A leaf as a chart from a planar model domain. Catalog leaves carry exact
/// charts and truncations; traced leaves carry point clouds with tangents.
struct LeafModel {
    enum class Provenance { CatalogExact, Traced };
    Provenance provenance = Provenance::CatalogExact;

    planar::PlanarDomain omega;   // catalog model (punctured disc, disc, ...)
    cplx q0{0, 0};                // chart(q0) = base point
    std::function<std::vector<cplx>(cplx)> chart;
    std::function<std::vector<cplx>(cplx)> chart_deriv;
    std::string description;

    // traced payload
    geo::SampleCloud points;
    std::vector<std::vector<cplx>> tangents;  // unit field directions per point
    bool truncated = false;

    CPoint chart_point(cplx q) const { return CPoint(chart(q)); }
    double chart_deriv_norm(cplx q) const {
        double s = 0;
        for (const cplx& c : chart_deriv(q)) s += std::norm(c);
        return std::sqrt(s);
    }
};

/// Symbolic singular-set guess from the field's structure (axes where it
/// vanishes identically, or the origin). Exact for the catalog fields.
SingularSet symbolic_singular_guess(const PolyVectorField& X);

/// Exact leaf models for the catalog fields restricted to the paper's domain
/// families. Throws math_error when p is singular or off the catalog charts
/// (callers fall back to trace_leaf).
LeafModel leaf_through_catalog(const PolyVectorField& X, const CPoint& p, geo::DomainPtr D);

struct TraceOptions {
    int rays = 8;
    double step = 1e-2;       // initial step
    double rtol = 1e-10;
    double atol = 1e-12;
    int max_steps = 4000;     // per ray
    double singular_guard = 1e-6;
};

/// Numerical leaf: integrate dz/ds = e^{i theta} X(z) along `rays` complex
/// time directions with an embedded Runge-Kutta pair, stopping on domain exit
/// or approach to the singular set. Deterministic for fixed options.
LeafModel trace_leaf(const PolyVectorField& X, const CPoint& p, geo::DomainPtr D,
                     TraceOptions opt = {});

/// Radius of the q-disc {|q| < R} cut by D through a chart with monomial
/// components a_i q^{k_i}; exact for unions/intersections of polydiscs and
/// balls centered at 0, nullopt when D is not disc-like for this chart.
std::optional<double> monomial_chart_disc_radius(const std::vector<cplx>& coeff,
                                                 const std::vector<int>& power,
                                                 const geo::Domain& D);

} // namespace folmet::fol
