#include "folmet/leaf.hpp"

#include <algorithm>
#include <cmath>

namespace folmet::fol {

SingularSet symbolic_singular_guess(const PolyVectorField& X) {
    SingularSet e;
    e.dim = X.dim;
    std::vector<int> ax;
    for (int a = 0; a < X.dim; ++a)
        if (X.vanishes_on_axis(a)) ax.push_back(a);
    if (!ax.empty()) {
        e.templ = SingularSet::Template::Axes;
        e.axes = ax;
        return e;
    }
    if (X.vanishes_at_origin()) {
        e.templ = SingularSet::Template::OriginOnly;
        return e;
    }
    e.templ = SingularSet::Template::Empty;
    return e;
}

namespace {

std::vector<cplx> monomial_eval(const std::vector<cplx>& a, const std::vector<int>& k, cplx q) {
    std::vector<cplx> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        cplx v = a[i];
        for (int e = 0; e < k[i]; ++e) v *= q;
        out[i] = v;
    }
    return out;
}

std::vector<cplx> monomial_deriv(const std::vector<cplx>& a, const std::vector<int>& k, cplx q) {
    std::vector<cplx> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        if (k[i] == 0) {
            out[i] = cplx(0, 0);
            continue;
        }
        cplx v = a[i] * static_cast<double>(k[i]);
        for (int e = 0; e < k[i] - 1; ++e) v *= q;
        out[i] = v;
    }
    return out;
}

bool is_origin(const CPoint& c) {
    for (const cplx& z : c.z)
        if (z != cplx(0, 0)) return false;
    return true;
}

/// certify that the chart image of the ring R0 <= |q| <= R1 stays clear of
/// the tube's closure (sampled scan with a Lipschitz margin on the Euclidean
/// segment distance). Clearing a thin ring just outside the disc radius cuts
/// the q0-component there: any path out of the disc crosses the ring, and
/// neither the polydisc parts nor the tube cover it.
bool tube_clear_of_ring(const std::vector<cplx>& a, const std::vector<int>& k,
                        const geo::Domain& tube, double R0, double R1) {
    if (R1 <= R0) return true;
    // Euclidean Lipschitz constant of q -> phi(q) over |q| <= R1
    double lip2 = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (k[i] > 0) {
            double d = std::abs(a[i]) * k[i] * std::pow(R1, k[i] - 1);
            lip2 += d * d;
        }
    double lip = std::max(std::sqrt(lip2), 1e-12);
    const double r_tube = tube.radius();
    int nr = 12, na = 4096;
    for (int ir = 0; ir <= nr; ++ir) {
        double rr = R0 + (R1 - R0) * ir / nr;
        double pitch = std::max((R1 - R0) / nr, 2 * M_PI * rr / na);
        for (int ia = 0; ia < na; ++ia) {
            cplx q = std::polar(rr, 2 * M_PI * ia / na);
            CPoint ph(monomial_eval(a, k, q));
            if (tube.tube_segment_distance(ph) - lip * pitch <= r_tube) return false;
        }
    }
    return true;
}

struct RadiusWalk {
    const std::vector<cplx>& a;
    const std::vector<int>& k;

    std::optional<double> polydisc(const geo::Domain& d) const {
        if (!is_origin(d.center())) return std::nullopt;
        double R = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < a.size(); ++i) {
            double r = d.radii()[i];
            if (k[i] == 0) {
                if (std::abs(a[i]) >= r) return 0.0;  // constant coordinate misses
                continue;
            }
            if (std::abs(a[i]) == 0) continue;
            R = std::min(R, std::pow(r / std::abs(a[i]), 1.0 / k[i]));
        }
        return R;
    }

    std::optional<double> ball(const geo::Domain& d) const {
        if (!is_origin(d.center())) return std::nullopt;
        double r2 = d.radius() * d.radius();
        double c2 = 0;
        for (size_t i = 0; i < a.size(); ++i)
            if (k[i] == 0) c2 += std::norm(a[i]);
        if (c2 >= r2) return 0.0;
        auto inside = [&](double t) {
            double s = c2;
            for (size_t i = 0; i < a.size(); ++i)
                if (k[i] > 0) s += std::norm(a[i]) * std::pow(t, 2 * k[i]);
            return s < r2;
        };
        double lo = 0, hi = 1;
        while (inside(hi) && hi < 1e12) hi *= 2;
        for (int it = 0; it < 100; ++it) {
            double mid = 0.5 * (lo + hi);
            (inside(mid) ? lo : hi) = mid;
        }
        return lo;
    }

    std::optional<double> walk(const geo::Domain& d) const {
        using K = geo::Domain::Kind;
        switch (d.kind()) {
        case K::Polydisc: return polydisc(d);
        case K::Ball: return ball(d);
        case K::Union: {
            double R = 0;
            std::vector<const geo::Domain*> tubes;
            for (const auto& c : d.children()) {
                if (c->kind() == K::Tube) {
                    tubes.push_back(c.get());
                    continue;
                }
                auto r = walk(*c);
                if (!r) return std::nullopt;
                R = std::max(R, *r);
            }
            if (!tubes.empty()) {
                // tube arms keep the q0-component equal to the disc exactly
                // when a thin ring around radius R is free of them
                for (const geo::Domain* t : tubes)
                    if (!tube_clear_of_ring(a, k, *t, R * (1 - 1e-9), R * 1.03))
                        return std::nullopt;
            }
            return R;
        }
        case K::Intersection: {
            double R = std::numeric_limits<double>::infinity();
            for (const auto& c : d.children()) {
                auto r = walk(*c);
                if (!r) return std::nullopt;
                R = std::min(R, *r);
            }
            return R;
        }
        default:
            return std::nullopt;
        }
    }
};

} // namespace

std::optional<double> monomial_chart_disc_radius(const std::vector<cplx>& coeff,
                                                 const std::vector<int>& power,
                                                 const geo::Domain& D) {
    RadiusWalk w{coeff, power};
    return w.walk(D);
}

namespace {

LeafModel monomial_leaf(const std::vector<cplx>& a, const std::vector<int>& k, cplx q0,
                        geo::DomainPtr D, const SingularSet& E, std::string what) {
    auto radius = monomial_chart_disc_radius(a, k, *D);
    if (!radius)
        throw math_error("leaf truncation is not disc-like for this domain (" + what + ")");
    double R = *radius;
    if (!(std::abs(q0) < R))
        throw math_error("leaf: base parameter outside the truncated model (" + what + ")");

    LeafModel L;
    L.provenance = LeafModel::Provenance::CatalogExact;
    L.q0 = q0;
    L.description = std::move(what);
    L.chart = [a, k](cplx q) { return monomial_eval(a, k, q); };
    L.chart_deriv = [a, k](cplx q) { return monomial_deriv(a, k, q); };

    // the puncture: q = 0 maps into E exactly when the limit point is singular
    CPoint at0(monomial_eval(a, k, cplx(0, 0)));
    bool punctured = E.templ != SingularSet::Template::Unknown && E.contains(at0, 1e-12);
    L.omega = punctured ? planar::PlanarDomain::punctured_disc(R) : planar::PlanarDomain::disc(R);

    // validity: chart images interior to D and off E along sampled radii
    for (int ir = 1; ir <= 6; ++ir)
        for (int ia = 0; ia < 8; ++ia) {
            cplx q = std::polar(R * ir / 6.5, 2 * M_PI * ia / 8 + 0.3);
            if (punctured && std::abs(q) < 1e-9) continue;
            CPoint ph(monomial_eval(a, k, q));
            if (!D->member(ph))
                throw math_error("leaf validity: chart image left the domain");
            if (E.templ != SingularSet::Template::Unknown && E.contains(ph, 1e-9))
                throw math_error("leaf validity: chart image meets the singular set");
        }
    return L;
}

LeafModel diagonal_61_leaf(const CPoint& p, geo::DomainPtr D) {
    cplx x0 = p.z[0], v = p.z[1];
    if (p.z[1] != p.z[2] || v == cplx(0, 0) || x0 == cplx(0, 0))
        throw math_error("6.1 flow model needs y = z != 0 and x != 0");

    // flow chart t -> (x0 e^t, v/(1-vt), v/(1-vt)); per polydisc P(0,r) the
    // x-constraint is the half-plane Re t < ln(r1/|x0|) and the y/z
    // constraints remove the discs |t - 1/v| <= 1/r_i
    struct PD {
        double c;
        double excl;  // largest exclusion radius 1/min(r2,r3)
    };
    std::vector<PD> parts;
    std::function<void(const geo::Domain&)> collect = [&](const geo::Domain& d) {
        if (d.kind() == geo::Domain::Kind::Union) {
            for (const auto& ch : d.children()) collect(*ch);
            return;
        }
        if (d.kind() != geo::Domain::Kind::Polydisc || !is_origin(d.center()))
            throw math_error("6.1 flow model needs a union of centered polydiscs");
        PD pd;
        pd.c = std::log(d.radii()[0] / std::abs(x0));
        pd.excl = 1.0 / std::min(d.radii()[1], d.radii()[2]);
        parts.push_back(pd);
    };
    collect(*D);
    double c = -std::numeric_limits<double>::infinity();
    for (const PD& pd : parts) c = std::max(c, pd.c);
    if (!(c > 0)) throw math_error("6.1 flow model: base point not interior");
    // the dominating half-plane must avoid its own exclusion discs
    cplx w = cplx(1, 0) / v;
    for (const PD& pd : parts) {
        if (pd.c < c) continue;
        if (!(w.real() - pd.excl > c + 1e-9))
            throw math_error("6.1 flow model: half-plane not certified for this point");
    }

    LeafModel L;
    L.provenance = LeafModel::Provenance::CatalogExact;
    L.q0 = cplx(0, 0);
    L.description = "6.1 diagonal flow leaf (half-plane model)";
    // Cayley D -> {Re t < c} with 0 -> 0
    auto cayley = [c](cplx z) { return -2.0 * c * z / (cplx(1, 0) - z); };
    auto cayley_d = [c](cplx z) {
        cplx den = cplx(1, 0) - z;
        return cplx(-2.0 * c, 0) / (den * den);
    };
    auto flow = [x0, v](cplx t) {
        cplx y = v / (cplx(1, 0) - v * t);
        return std::vector<cplx>{x0 * std::exp(t), y, y};
    };
    auto flow_d = [x0, v](cplx t) {
        cplx den = cplx(1, 0) - v * t;
        cplx y2 = (v / den) * (v / den);
        return std::vector<cplx>{x0 * std::exp(t), y2, y2};
    };
    L.chart = [cayley, flow](cplx z) { return flow(cayley(z)); };
    L.chart_deriv = [cayley, cayley_d, flow_d](cplx z) {
        std::vector<cplx> d = flow_d(cayley(z));
        cplx cd = cayley_d(z);
        for (cplx& x : d) x *= cd;
        return d;
    };
    L.omega = planar::PlanarDomain::disc(1.0);
    return L;
}

} // namespace

LeafModel leaf_through_catalog(const PolyVectorField& X, const CPoint& p, geo::DomainPtr D) {
    if (p.dim() != X.dim || D->dim() != X.dim)
        throw input_error("leaf_through_catalog: dimension mismatch");
    SingularSet E = symbolic_singular_guess(X);
    if (E.templ != SingularSet::Template::Unknown && E.contains(p, 1e-12))
        throw math_error("leaf_through_catalog: point lies in the singular set");
    if (!D->member(p)) throw math_error("leaf_through_catalog: point not in the domain");

    switch (X.catalog()) {
    case PolyVectorField::Catalog::Radial: {
        double n2 = p.norm2();
        std::vector<cplx> u(p.dim());
        for (int i = 0; i < p.dim(); ++i) u[i] = p.z[i] / n2;
        std::vector<int> k(p.dim(), 1);
        return monomial_leaf(u, k, cplx(n2, 0), D, E, "radial line leaf");
    }
    case PolyVectorField::Catalog::DiagOneTwo: {
        cplx x0 = p.z[0], y0 = p.z[1];
        if (x0 != cplx(0, 0)) {
            cplx cc = y0 / (x0 * x0);
            return monomial_leaf({cplx(1, 0), cc}, {1, 2}, x0, D, E, "parabolic leaf x0^2 y = y0 x^2");
        }
        return monomial_leaf({cplx(0, 0), cplx(1, 0)}, {0, 1}, y0, D, E, "y-axis leaf");
    }
    case PolyVectorField::Catalog::Ex61: {
        cplx x0 = p.z[0], y0 = p.z[1], z0 = p.z[2];
        if (z0 == cplx(0, 0))
            return monomial_leaf({cplx(1, 0), y0, cplx(0, 0)}, {1, 0, 0}, x0, D, E,
                                 "6.1 leaf in {z=0}");
        if (y0 == cplx(0, 0))
            return monomial_leaf({cplx(1, 0), cplx(0, 0), z0}, {1, 0, 0}, x0, D, E,
                                 "6.1 leaf in {y=0}");
        if (y0 == z0) return diagonal_61_leaf(p, D);
        throw math_error("6.1 leaf off the catalog charts");
    }
    case PolyVectorField::Catalog::Ex62: {
        cplx x0 = p.z[0], y0 = p.z[1], z0 = p.z[2];
        if (z0 == cplx(0, 0))
            return monomial_leaf({cplx(1, 0), y0, cplx(0, 0)}, {1, 0, 0}, x0, D, E,
                                 "6.2 leaf in {z=0}");
        if (y0 == cplx(0, 0))
            return monomial_leaf({x0, cplx(0, 0), cplx(1, 0)}, {0, 0, 1}, z0, D, E,
                                 "6.2 leaf in {y=0}");
        if (x0 == cplx(0, 0))
            return monomial_leaf({cplx(0, 0), cplx(1, 0), z0}, {0, 1, 0}, y0, D, E,
                                 "6.2 leaf in {x=0}");
        throw math_error("6.2 leaf off the catalog charts");
    }
    default:
        throw math_error("field is not in the leaf catalog");
    }
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 35.0 / 384 - 5179.0 / 57600, E3 = 500.0 / 1113 - 7571.0 / 16695,
                 E4 = 125.0 / 192 - 393.0 / 640, E5 = -2187.0 / 6784 + 92097.0 / 339200,
                 E6 = 11.0 / 84 - 187.0 / 2100, E7 = -1.0 / 40;

using State = std::vector<cplx>;

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> ks) {
    State out = y;
    for (const auto& [c, k] : ks)
        for (size_t i = 0; i < out.size(); ++i) out[i] += h * c * (*k)[i];
    return out;
}

} // namespace

LeafModel trace_leaf(const PolyVectorField& X, const CPoint& p, geo::DomainPtr D,
                     TraceOptions opt) {
    SingularSet E = symbolic_singular_guess(X);
    if (E.templ != SingularSet::Template::Unknown && E.contains(p, 1e-12))
        throw math_error("trace_leaf: start point is singular");
    if (X.eval_norm(p) == 0) throw math_error("trace_leaf: field vanishes at the start point");

    LeafModel L;
    L.provenance = LeafModel::Provenance::Traced;
    L.q0 = cplx(0, 0);
    L.description = "traced leaf";
    L.points.resolution = opt.step;
    L.points.tag = geo::CloudTag::Generic;

    double field_scale = std::max(X.eval_norm(p), 1e-12);

    for (int ray = 0; ray < opt.rays; ++ray) {
        cplx dir = std::polar(1.0, 2 * M_PI * ray / opt.rays);
        State y = p.z;
        double h = opt.step;
        for (int s = 0; s < opt.max_steps; ++s) {
            auto f = [&](const State& st) {
                std::vector<cplx> v = X.eval(CPoint(st));
                for (cplx& c : v) c *= dir;
                return v;
            };
            State k1 = f(y);
            State k2 = f(axpy(y, h, {{A21, &k1}}));
            State k3 = f(axpy(y, h, {{A31, &k1}, {A32, &k2}}));
            State k4 = f(axpy(y, h, {{A41, &k1}, {A42, &k2}, {A43, &k3}}));
            State k5 = f(axpy(y, h, {{A51, &k1}, {A52, &k2}, {A53, &k3}, {A54, &k4}}));
            State k6 = f(axpy(y, h, {{A61, &k1}, {A62, &k2}, {A63, &k3}, {A64, &k4}, {A65, &k5}}));
            State y5 = axpy(y, h, {{B1, &k1}, {B3, &k3}, {B4, &k4}, {B5, &k5}, {B6, &k6}});
            State k7 = f(y5);
            double err = 0, scale = 0;
            for (size_t i = 0; i < y.size(); ++i) {
                cplx e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] +
                              E7 * k7[i]);
                err = std::max(err, std::abs(e));
                scale = std::max(scale, std::abs(y5[i]));
            }
            double tol = opt.atol + opt.rtol * std::max(scale, 1.0);
            if (err > tol) {
                h *= std::max(0.2, 0.9 * std::pow(tol / err, 0.2));
                if (h < 1e-14) {
                    L.truncated = true;  // step underflow near the singular set
                    break;
                }
                continue;
            }
            y = y5;
            CPoint q(y);
            if (!D->member(q)) break;  // left the domain
            if (E.templ != SingularSet::Template::Unknown &&
                E.distance(q) < opt.singular_guard) {
                L.truncated = true;
                break;
            }
            double xnorm = X.eval_norm(q);
            if (xnorm < 1e-9 * field_scale) {
                L.truncated = true;
                break;
            }
            L.points.points.push_back(q);
            std::vector<cplx> t = X.eval(q);
            for (cplx& c : t) c /= xnorm;
            L.tangents.push_back(std::move(t));
            if (err > 0) h *= std::min(5.0, 0.9 * std::pow(tol / err, 0.2));
        }
    }
    L.points.empty_flagged = L.points.points.empty();
    return L;
}

} // namespace folmet::fol
