#pragma once

#include <limits>
#include <optional>

#include "folmet/leaf.hpp"

namespace folmet::eta {

// The modulus of uniformization in the normalization pinned by the examples:
// eta at p = (Euclidean chart-derivative norm at q0) / (planar Poincare
// density at q0). Monotone in the domain, zero on the singular set.

struct EtaEstimate {
    double lower = 0;
    double upper = std::numeric_limits<double>::infinity();
    std::optional<double> exact;
    enum class Method { ClosedForm, McSandwich, OnSingular } method = Method::ClosedForm;
    std::uint64_t seed = 0;
    std::int64_t budget = 0;
    bool starved = false;  // no admissible competitor found

    double best() const { return exact ? *exact : 0.5 * (lower + std::min(upper, 2 * lower)); }
    void check() const {
        if (exact && !(lower <= *exact + 1e-12 && *exact <= upper + 1e-12))
            throw math_error("EtaEstimate: exact outside [lower, upper]");
        if (!(lower <= upper + 1e-12)) throw math_error("EtaEstimate: lower > upper");
    }
};

/// Exact value on a catalog leaf model.
EtaEstimate eta_exact(const fol::LeafModel& L);

/// The extension by zero on the singular set; errors off E.
EtaEstimate eta_on_E(const fol::SingularSet& E, const CPoint& p);

/// Monte-Carlo lower bound: running maximum of chart-derivative/density
/// ratios over certified planar subdomains of the leaf model composed with
/// (1-eps) shrinks. Every candidate is a genuine competitor, so the bound is
/// sound for any seed and budget.
EtaEstimate eta_mc_lower(const fol::PolyVectorField& X, const CPoint& p, geo::DomainPtr D,
                         std::int64_t budget, std::uint64_t seed);

/// Upper bound by inclusion: the exact value through the catalog leaf of the
/// larger domain. Errors when sampled points of D escape D_outer.
EtaEstimate eta_upper_inclusion(const fol::PolyVectorField& X, const CPoint& p,
                                geo::DomainPtr D, geo::DomainPtr D_outer);

/// Coordinatewise Schwarz bound through the polydisc hull P(0,s) of D:
/// eta <= sqrt(sum ((s_i^2-|p_i|^2)/s_i)^2) / 2. Valid for every leaf.
double eta_upper_polydisc_hull(const CPoint& p, const geo::Domain& D);

/// Hull radii s_i = max over the closure of D of |z_i| (structural walk).
std::vector<double> polydisc_hull_radii(const geo::Domain& D);

/// Exact where the catalog applies, otherwise the MC sandwich with the best
/// available certified upper bound; zero on E.
EtaEstimate eta_evaluate(const fol::PolyVectorField& X, const CPoint& p, geo::DomainPtr D,
                         std::int64_t budget, std::uint64_t seed);

} // namespace folmet::eta
