#include "folmet/eta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "folmet/rng.hpp"

namespace folmet::eta {

using fol::LeafModel;
using planar::PlanarDomain;

EtaEstimate eta_exact(const LeafModel& L) {
    if (L.provenance != LeafModel::Provenance::CatalogExact)
        throw math_error("eta_exact: leaf is not a catalog model");
    double lambda = L.omega.density(L.q0).value;
    double v = L.chart_deriv_norm(L.q0) / lambda;
    EtaEstimate e;
    e.exact = v;
    e.lower = e.upper = v;
    e.method = EtaEstimate::Method::ClosedForm;
    e.check();
    return e;
}

EtaEstimate eta_on_E(const fol::SingularSet& E, const CPoint& p) {
    if (!E.contains(p, 1e-9)) throw math_error("eta_on_E: point is not on the singular set");
    EtaEstimate e;
    e.exact = 0.0;
    e.lower = e.upper = 0.0;
    e.method = EtaEstimate::Method::OnSingular;
    return e;
}

namespace {

/// density of a certified planar subdomain of omega at q0, or nullopt when the
/// candidate is inadmissible; candidates are exact subdomains by construction
std::optional<double> subdomain_density(const PlanarDomain& omega, cplx q0, RngStream& rng) {
    switch (omega.kind) {
    case PlanarDomain::Kind::Disc: {
        double R = omega.R;
        // disc D(c, r) inside D(0,R) containing q0
        double t = rng.uniform(0, 2 * M_PI);
        double cr = rng.next_double() * (R - std::abs(q0)) * 0.5;
        cplx c = q0 + std::polar(cr, t);
        double rmax = R - std::abs(c);
        if (rmax <= std::abs(q0 - c) + 1e-15) return std::nullopt;
        double r = rng.uniform(std::abs(q0 - c) + 0.5 * (rmax - std::abs(q0 - c)), rmax);
        return 2 * r / (r * r - std::norm(q0 - c));
    }
    case PlanarDomain::Kind::PuncturedDisc: {
        double R = omega.R;
        double a = std::abs(q0);
        int pick = static_cast<int>(rng.below(3));
        if (pick == 0) {
            // concentric punctured disc D*(rho), a < rho <= R
            double rho = rng.uniform(a + 0.7 * (R - a), R);
            return planar::density_punctured_disc(q0, rho).value;
        }
        if (pick == 1) {
            // disc avoiding the puncture: D(c,r), |c| > r, inside D(0,R)
            cplx dir = q0 / a;
            double c = rng.uniform(a * 0.6, std::min(R * 0.9, a * 1.4));
            cplx cc = c * dir;
            double rmax = std::min(R - c, c);
            if (rmax <= std::abs(q0 - cc) + 1e-15) return std::nullopt;
            double r = rng.uniform(std::abs(q0 - cc) + 0.5 * (rmax - std::abs(q0 - cc)), rmax);
            return 2 * r / (r * r - std::norm(q0 - cc));
        }
        // annulus r' < |q0| < R' <= R
        double rp = rng.uniform(a * 0.05, a * 0.8);
        double Rp = rng.uniform(a + 0.5 * (R - a), R);
        if (!(rp < a && a < Rp)) return std::nullopt;
        return planar::density_annulus(q0, rp, Rp).value;
    }
    case PlanarDomain::Kind::Annulus: {
        double a = std::abs(q0);
        double rp = rng.uniform(omega.r, omega.r + 0.8 * (a - omega.r));
        double Rp = rng.uniform(a + 0.2 * (omega.R - a), omega.R);
        if (!(omega.r <= rp && rp < a && a < Rp && Rp <= omega.R)) return std::nullopt;
        return planar::density_annulus(q0, rp, Rp).value;
    }
    default:
        return std::nullopt;
    }
}

} // namespace

EtaEstimate eta_mc_lower(const fol::PolyVectorField& X, const CPoint& p, geo::DomainPtr D,
                         std::int64_t budget, std::uint64_t seed) {
    EtaEstimate out;
    out.method = EtaEstimate::Method::McSandwich;
    out.seed = seed;
    out.budget = budget;
    out.upper = std::numeric_limits<double>::infinity();

    LeafModel L;
    try {
        L = fol::leaf_through_catalog(X, p, D);
    } catch (const math_error&) {
        out.starved = true;  // no planar truncation available
        return out;
    }

    double dnorm = L.chart_deriv_norm(L.q0);
    double lambda_full = L.omega.density(L.q0).value;

    double best = 0;
    for (std::int64_t i = 0; i < budget; ++i) {
        double eps = std::pow(0.5, 1 + static_cast<int>(i % 20));
        double lambda;
        if (i < 20) {
            // the full-cover family across the shrink grid
            lambda = lambda_full;
        } else {
            RngStream rng(seed, "eta-mc", static_cast<std::uint64_t>(i));
            auto cand = subdomain_density(L.omega, L.q0, rng);
            if (!cand) continue;
            lambda = *cand;
        }
        best = std::max(best, (1 - eps) * dnorm / lambda);
    }
    out.lower = best;
    out.starved = (best == 0);
    return out;
}

EtaEstimate eta_upper_inclusion(const fol::PolyVectorField& X, const CPoint& p,
                                geo::DomainPtr D, geo::DomainPtr D_outer) {
    // sampled inclusion check D subset D_outer
    RngStream rng(0x1c1e51ULL, "inclusion-check");
    RBox bb = D->bounding_box();
    int found = 0;
    for (int t = 0; t < 4000 && found < 200; ++t) {
        std::vector<cplx> z(D->dim());
        for (int i = 0; i < D->dim(); ++i)
            z[i] = cplx(rng.uniform(bb.lo[2 * i], bb.hi[2 * i]),
                        rng.uniform(bb.lo[2 * i + 1], bb.hi[2 * i + 1]));
        CPoint q(std::move(z));
        if (!D->member(q)) continue;
        ++found;
        if (!D_outer->member(q))
            throw math_error("eta_upper_inclusion: inclusion violated at a sampled point");
    }
    LeafModel L = fol::leaf_through_catalog(X, p, D_outer);
    EtaEstimate e = eta_exact(L);
    EtaEstimate out;
    out.method = EtaEstimate::Method::McSandwich;
    out.upper = *e.exact;
    out.lower = 0;
    return out;
}

std::vector<double> polydisc_hull_radii(const geo::Domain& D) {
    using K = geo::Domain::Kind;
    int n = D.dim();
    std::vector<double> out(n, 0.0);
    switch (D.kind()) {
    case K::Polydisc:
        for (int i = 0; i < n; ++i) out[i] = std::abs(D.center().z[i]) + D.radii()[i];
        return out;
    case K::Ball:
        for (int i = 0; i < n; ++i) out[i] = std::abs(D.center().z[i]) + D.radius();
        return out;
    case K::Tube: {
        for (int i = 0; i < n; ++i) {
            cplx mid = 0.5 * (D.tube_a().z[i] + D.tube_b().z[i]);
            double half = 0.5 * std::abs(D.tube_b().z[i] - D.tube_a().z[i]);
            out[i] = std::abs(mid) + half + D.radius();
        }
        return out;
    }
    case K::Union: {
        for (const auto& c : D.children()) {
            auto r = polydisc_hull_radii(*c);
            for (int i = 0; i < n; ++i) out[i] = std::max(out[i], r[i]);
        }
        return out;
    }
    case K::Intersection: {
        out.assign(n, std::numeric_limits<double>::infinity());
        for (const auto& c : D.children()) {
            auto r = polydisc_hull_radii(*c);
            for (int i = 0; i < n; ++i) out[i] = std::min(out[i], r[i]);
        }
        return out;
    }
    case K::Difference:
        return polydisc_hull_radii(*D.children()[0]);
    case K::Thickening: {
        auto r = polydisc_hull_radii(*D.children()[0]);
        for (double& v : r) v += D.epsilon();
        return r;
    }
    }
    throw math_error("polydisc_hull_radii: unreachable");
}

double eta_upper_polydisc_hull(const CPoint& p, const geo::Domain& D) {
    std::vector<double> s = polydisc_hull_radii(D);
    double sum = 0;
    for (int i = 0; i < p.dim(); ++i) {
        double a = std::abs(p.z[i]);
        if (a >= s[i]) throw math_error("eta_upper_polydisc_hull: point outside the hull");
        double b = (s[i] * s[i] - a * a) / s[i];
        sum += b * b;
    }
    return 0.5 * std::sqrt(sum);
}

namespace {

/// Certified sandwich for general-position leaves of the 6.1 field with real
/// coordinates. The flow chart t -> (x e^t, y(t), y(t) - a), a = y - z != 0,
/// satisfies |x| < r1 iff Re t < log(r1/|x|), so the half-plane H_c is always
/// a planar superdomain (upper bound). The lower bound is the shifted
/// half-plane competitor H_{c-d} whenever the |y|,|z| exclusion regions
/// provably avoid it (exact disc/Apollonius arithmetic in the w = e^{at}
/// plane, available for real a > 0).
std::optional<std::pair<double, double>> eta61_flow_sandwich(const fol::PolyVectorField& X,
                                                             const CPoint& p,
                                                             const geo::Domain& D) {
    if (X.catalog() != fol::PolyVectorField::Catalog::Ex61) return std::nullopt;
    for (const cplx& c : p.z)
        if (c.imag() != 0) return std::nullopt;
    double x0 = p.z[0].real();
    double y0 = p.z[1].real(), z0 = p.z[2].real();
    if (x0 == 0 || y0 == 0 || z0 == 0 || y0 == z0) return std::nullopt;
    if (y0 * z0 < 0) return std::nullopt;  // a sign change hits the y(t) pole
    if (y0 < z0) std::swap(y0, z0);        // the field is symmetric in (y, z); make a > 0
    double a = y0 - z0;
    double B = z0 / y0;  // in (0,1)

    // collect the centered polydisc parts of D
    struct Part { double r1, r2, r3; };
    std::vector<Part> parts;
    std::function<bool(const geo::Domain&)> collect = [&](const geo::Domain& d) {
        if (d.kind() == geo::Domain::Kind::Union) {
            for (const auto& ch : d.children())
                if (!collect(*ch)) return false;
            return true;
        }
        if (d.kind() != geo::Domain::Kind::Polydisc) return false;
        for (const cplx& c : d.center().z)
            if (c != cplx(0, 0)) return false;
        parts.push_back({d.radii()[0], d.radii()[1], d.radii()[2]});
        return true;
    };
    if (!collect(D)) return std::nullopt;

    double c = -std::numeric_limits<double>::infinity();
    const Part* dominant = nullptr;
    for (const Part& pt : parts) {
        double cp = std::log(pt.r1 / std::abs(x0));
        if (cp > c) {
            c = cp;
            dominant = &pt;
        }
    }
    if (!(c > 0) || !dominant) return std::nullopt;

    double dn = 0;  // |X(p)| = |phi'(0)|
    for (const cplx& v : X.eval(p)) dn += std::norm(v);
    dn = std::sqrt(dn);
    double upper = dn * c;

    // clearance of H_{c-d}: the half-plane's w-image is {0 < |w| < e^{a(c-d)}};
    // the |y| exclusion is the disc |w - 1/B| <= a/(r2 B) and the |z|
    // exclusion the Apollonius region |1 - B w| <= (a B / r3)|w| with minimum
    // modulus (1/B)/(1 + a B / r3)
    auto cleared = [&](double shift) {
        double reach = std::exp(a * (c - shift));
        double y_clear = 1.0 / B - a / (dominant->r2 * B);
        double s = a * B / dominant->r3;
        double z_clear = (1.0 / B) / (1.0 + s);
        return y_clear > reach * (1 + 1e-12) && z_clear > reach * (1 + 1e-12);
    };
    double lower = 0;
    for (double shift : {0.0, 0.01 * c, 0.05 * c, 0.2 * c, 0.5 * c})
        if (cleared(shift)) {
            lower = dn * (c - shift) * (1 - std::pow(0.5, 20));
            break;
        }
    return std::make_pair(lower, upper);
}

} // namespace

EtaEstimate eta_evaluate(const fol::PolyVectorField& X, const CPoint& p, geo::DomainPtr D,
                         std::int64_t budget, std::uint64_t seed) {
    fol::SingularSet E = fol::symbolic_singular_guess(X);
    if (E.has_template() && E.contains(p, 1e-12)) return eta_on_E(E, p);
    try {
        LeafModel L = fol::leaf_through_catalog(X, p, D);
        return eta_exact(L);
    } catch (const math_error&) {
    }
    EtaEstimate e = eta_mc_lower(X, p, D, budget, seed);
    e.upper = eta_upper_polydisc_hull(p, *D);
    if (auto flow = eta61_flow_sandwich(X, p, *D)) {
        e.lower = std::max(e.lower, flow->first);
        e.upper = std::min(e.upper, flow->second);
        e.starved = (e.lower == 0);
    }
    e.check();
    return e;
}

} // namespace folmet::eta
