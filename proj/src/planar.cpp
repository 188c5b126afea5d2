#include "folmet/planar.hpp"

#include <algorithm>
#include <cmath>

namespace folmet::planar {

HyperbolicDensity density_disc(cplx q, double R) {
    if (!(R > 0)) throw input_error("density_disc: R must be positive");
    double a = std::abs(q);
    if (a >= R - kEdgeGuard) throw math_error("density_disc: point not interior");
    return {2 * R / (R * R - a * a), HyperbolicDensity::Source::ClosedForm};
}

HyperbolicDensity density_punctured_disc(cplx q, double R) {
    if (!(R > 0)) throw input_error("density_punctured_disc: R must be positive");
    double a = std::abs(q);
    if (a <= kEdgeGuard) throw math_error("density_punctured_disc: at the puncture");
    if (a >= R - kEdgeGuard) throw math_error("density_punctured_disc: point not interior");
    return {2.0 / (a * std::abs(std::log((a * a) / (R * R)))),
            HyperbolicDensity::Source::ClosedForm};
}

HyperbolicDensity density_annulus(cplx q, double r, double R) {
    if (!(0 < r && r < R)) throw input_error("density_annulus: need 0 < r < R");
    double a = std::abs(q);
    if (a <= r + kEdgeGuard || a >= R - kEdgeGuard)
        throw math_error("density_annulus: point not interior");
    // strip {0 < Im z < pi} covers the annulus via phi(z) = r exp(-i z m / pi),
    // m = log(R/r); pull the strip density 1/sin(Im z) back through phi
    double m = std::log(R / r);
    double y = M_PI * std::log(a / r) / m;   // Im of a preimage
    double lambda_strip = 1.0 / std::sin(y);
    double dphi = (m / M_PI) * a;            // |phi'(z)| = (m/pi) |phi(z)|
    return {lambda_strip / dphi, HyperbolicDensity::Source::Oracle};
}

HyperbolicDensity density_halfplane(cplx t, double c) {
    if (!(c - t.real() > kEdgeGuard)) throw math_error("density_halfplane: point not interior");
    return {1.0 / (c - t.real()), HyperbolicDensity::Source::ClosedForm};
}

PlanarDomain PlanarDomain::disc(double R) {
    if (!(R > 0)) throw input_error("PlanarDomain::disc: R must be positive");
    PlanarDomain d;
    d.kind = Kind::Disc;
    d.R = R;
    return d;
}

PlanarDomain PlanarDomain::punctured_disc(double R) {
    if (!(R > 0)) throw input_error("PlanarDomain::punctured_disc: R must be positive");
    PlanarDomain d;
    d.kind = Kind::PuncturedDisc;
    d.R = R;
    return d;
}

PlanarDomain PlanarDomain::annulus(double r, double R) {
    if (!(0 < r && r < R)) throw input_error("PlanarDomain::annulus: need 0 < r < R");
    PlanarDomain d;
    d.kind = Kind::Annulus;
    d.r = r;
    d.R = R;
    return d;
}

PlanarDomain PlanarDomain::sampled(std::function<bool(cplx)> pred, double re_lo, double re_hi,
                                   double im_lo, double im_hi) {
    PlanarDomain d;
    d.kind = Kind::Sampled;
    d.pred = std::move(pred);
    d.bb_re_lo = re_lo;
    d.bb_re_hi = re_hi;
    d.bb_im_lo = im_lo;
    d.bb_im_hi = im_hi;
    return d;
}

bool PlanarDomain::member(cplx q) const {
    switch (kind) {
    case Kind::Disc: return std::abs(q) < R;
    case Kind::PuncturedDisc: return q != cplx(0, 0) && std::abs(q) < R;
    case Kind::Annulus: return r < std::abs(q) && std::abs(q) < R;
    case Kind::Sampled: return pred(q);
    }
    return false;
}

HyperbolicDensity PlanarDomain::density(cplx q) const {
    switch (kind) {
    case Kind::Disc: return density_disc(q, R);
    case Kind::PuncturedDisc: return density_punctured_disc(q, R);
    case Kind::Annulus: return density_annulus(q, r, R);
    case Kind::Sampled: throw math_error("sampled planar domain has no closed-form density");
    }
    throw math_error("unreachable");
}

DensityBounds density_bounds(const PlanarDomain& dom, cplx q, int rays) {
    if (dom.kind != PlanarDomain::Kind::Sampled)
        throw input_error("density_bounds: expects a sampled domain");
    if (!dom.pred(q)) throw math_error("density_bounds: point not in the domain");

    DensityBounds out;
    double span = std::max(dom.bb_re_hi - dom.bb_re_lo, dom.bb_im_hi - dom.bb_im_lo);
    out.probe_resolution = span * 1e-7;

    // upper bound: inscribed disc around q with radius = probed distance to
    // the boundary (bisected along rays until the first non-member)
    double dist = 1e300;
    for (int k = 0; k < rays; ++k) {
        double ang = 2 * M_PI * k / rays;
        cplx dir = std::polar(1.0, ang);
        // ray length to the bounding box edge
        double t_hi = span * 2;
        // coarse march to bracket the first exit
        double lo = 0, hi = t_hi;
        bool exited = false;
        const int steps = 128;
        for (int s = 1; s <= steps; ++s) {
            double t = t_hi * s / steps;
            if (!dom.pred(q + t * dir)) {
                hi = t;
                lo = t_hi * (s - 1) / steps;
                exited = true;
                break;
            }
        }
        if (!exited) continue;
        for (int it = 0; it < 50; ++it) {
            double mid = 0.5 * (lo + hi);
            (dom.pred(q + mid * dir) ? lo : hi) = mid;
        }
        dist = std::min(dist, lo);
    }
    if (dist < 1e300 && dist > kEdgeGuard) {
        // shrink until a polar sample of the whole disc stays inside
        double rr = dist * (1 - 1e-9);
        for (int attempt = 0; attempt < 8; ++attempt) {
            bool ok = true;
            for (int i = 1; i <= 12 && ok; ++i)
                for (int k = 0; k < 48 && ok; ++k)
                    if (!dom.pred(q + std::polar(rr * i / 12.0, 2 * M_PI * k / 48.0))) ok = false;
            if (ok) break;
            rr *= 0.9;
        }
        out.upper = 2.0 / rr;  // density of D(q, rr) at its center
    }

    // lower bound: smallest enclosing disc candidate
    cplx bb_center(0.5 * (dom.bb_re_lo + dom.bb_re_hi), 0.5 * (dom.bb_im_lo + dom.bb_im_hi));
    double bb_rad = 0.5 * std::hypot(dom.bb_re_hi - dom.bb_re_lo, dom.bb_im_hi - dom.bb_im_lo);
    double lower = 0;
    {
        // disc around the box center
        double rr = bb_rad * (1 + 1e-12);
        double a = std::abs(q - bb_center);
        if (a < rr) lower = std::max(lower, 2 * rr / (rr * rr - a * a));
    }
    {
        // disc around q itself reaching the farthest box corner
        double rr = 0;
        for (double re : {dom.bb_re_lo, dom.bb_re_hi})
            for (double im : {dom.bb_im_lo, dom.bb_im_hi})
                rr = std::max(rr, std::abs(q - cplx(re, im)));
        rr *= (1 + 1e-12);
        lower = std::max(lower, 2.0 / rr);
    }
    out.lower = lower;
    if (out.upper && *out.upper < out.lower) {
        // probing overshot the inscribed radius; keep the pair ordered
        out.upper = out.lower;
    }
    return out;
}

double pushforward_consistency_check(const CoveringMap& cover, cplx z) {
    double lt = cover.target_density(cover.map(z));
    double ls = cover.source_density(z);
    return std::abs(lt * std::abs(cover.deriv(z)) - ls);
}

namespace {

double disc_density(cplx z) { return 2.0 / (1.0 - std::norm(z)); }

cplx sample_disc(RngStream& rng) {
    double rr = std::sqrt(rng.next_double()) * 0.95;
    return std::polar(rr, rng.uniform(0, 2 * M_PI));
}

} // namespace

std::vector<CoveringMap> covering_catalog() {
    std::vector<CoveringMap> cat;

    cat.push_back({"identity D -> D",
                   [](cplx z) { return z; },
                   [](cplx) { return cplx(1, 0); },
                   disc_density,
                   disc_density,
                   sample_disc});

    double R = 2.0;
    cat.push_back({"scaling D -> D(0,2)",
                   [R](cplx z) { return R * z; },
                   [R](cplx) { return cplx(R, 0); },
                   disc_density,
                   [R](cplx w) { return density_disc(w, R).value; },
                   sample_disc});

    cplx a(0.3, -0.2);
    cat.push_back({"disc automorphism",
                   [a](cplx z) { return (z + a) / (cplx(1, 0) + std::conj(a) * z); },
                   [a](cplx z) {
                       cplx den = cplx(1, 0) + std::conj(a) * z;
                       return (cplx(1, 0) - std::norm(a)) / (den * den);
                   },
                   disc_density,
                   disc_density,
                   sample_disc});

    cat.push_back({"exponential D -> D*",
                   [](cplx z) { return std::exp((z + 1.0) / (z - 1.0)); },
                   [](cplx z) {
                       cplx w = (z + 1.0) / (z - 1.0);
                       return std::exp(w) * (-2.0) / ((z - 1.0) * (z - 1.0));
                   },
                   disc_density,
                   [](cplx w) { return density_punctured_disc(w, 1.0).value; },
                   sample_disc});

    cat.push_back({"half-plane -> D*",
                   [](cplx w) { return std::exp(cplx(0, 1) * w); },
                   [](cplx w) { return cplx(0, 1) * std::exp(cplx(0, 1) * w); },
                   [](cplx w) { return 1.0 / w.imag(); },
                   [](cplx q) { return density_punctured_disc(q, 1.0).value; },
                   [](RngStream& rng) {
                       return cplx(rng.uniform(-3, 3), rng.uniform(0.2, 4.0));
                   }});

    double rr = 0.5, RR = 2.0;
    double m = std::log(RR / rr);
    cat.push_back({"strip -> annulus(0.5,2)",
                   [rr, m](cplx z) { return rr * std::exp(cplx(0, -1) * z * (m / M_PI)); },
                   [rr, m](cplx z) {
                       return rr * std::exp(cplx(0, -1) * z * (m / M_PI)) * cplx(0, -1) *
                              (m / M_PI);
                   },
                   [](cplx z) { return 1.0 / std::sin(z.imag()); },
                   [rr, RR](cplx q) { return density_annulus(q, rr, RR).value; },
                   [](RngStream& rng) {
                       return cplx(rng.uniform(-2, 2), rng.uniform(0.15, M_PI - 0.15));
                   }});

    cat.push_back({"Cayley D -> half-plane",
                   [](cplx z) { return cplx(0, 1) * (cplx(1, 0) + z) / (cplx(1, 0) - z); },
                   [](cplx z) {
                       cplx den = cplx(1, 0) - z;
                       return cplx(0, 2) / (den * den);
                   },
                   disc_density,
                   [](cplx w) { return 1.0 / w.imag(); },
                   sample_disc});

    return cat;
}

} // namespace folmet::planar
