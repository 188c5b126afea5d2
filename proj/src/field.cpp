#include "folmet/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>

namespace folmet::fol {

namespace {

cplx eval_monomial(const Monomial& m, const CPoint& p) {
    cplx v = m.coeff;
    for (size_t j = 0; j < m.exps.size(); ++j)
        for (int e = 0; e < m.exps[j]; ++e) v *= p.z[j];
    return v;
}

} // namespace

std::vector<cplx> PolyVectorField::eval(const CPoint& p) const {
    std::vector<cplx> out(dim, cplx(0, 0));
    for (int i = 0; i < dim; ++i)
        for (const Monomial& m : comp[i]) out[i] += eval_monomial(m, p);
    return out;
}

std::vector<cplx> PolyVectorField::jacobian(const CPoint& p) const {
    std::vector<cplx> J(dim * dim, cplx(0, 0));
    for (int i = 0; i < dim; ++i)
        for (const Monomial& m : comp[i])
            for (int j = 0; j < dim; ++j) {
                if (m.exps[j] == 0) continue;
                Monomial d = m;
                d.coeff *= static_cast<double>(m.exps[j]);
                d.exps[j] -= 1;
                J[i * dim + j] += eval_monomial(d, p);
            }
    return J;
}

double PolyVectorField::eval_norm(const CPoint& p) const {
    double s = 0;
    for (const cplx& v : eval(p)) s += std::norm(v);
    return std::sqrt(s);
}

bool PolyVectorField::vanishes_on_axis(int axis) const {
    // restriction of each component to {t e_axis}: monomials supported on
    // {axis} only, grouped by degree, must cancel
    for (int i = 0; i < dim; ++i) {
        std::map<int, cplx> by_deg;
        for (const Monomial& m : comp[i]) {
            bool on_axis = true;
            for (int j = 0; j < dim; ++j)
                if (j != axis && m.exps[j] > 0) on_axis = false;
            if (on_axis) by_deg[m.exps[axis]] += m.coeff;
        }
        for (const auto& [deg, c] : by_deg)
            if (std::abs(c) > 1e-12) return false;
    }
    return true;
}

bool PolyVectorField::vanishes_at_origin() const {
    for (int i = 0; i < dim; ++i) {
        cplx c0(0, 0);
        for (const Monomial& m : comp[i]) {
            bool constant = true;
            for (int e : m.exps)
                if (e > 0) constant = false;
            if (constant) c0 += m.coeff;
        }
        if (std::abs(c0) > 1e-12) return false;
    }
    return true;
}

cfg::Record PolyVectorField::to_config() const {
    cfg::Record out;
    cfg::Record body;
    for (int i = 0; i < dim; ++i) {
        cfg::ValueList monos;
        for (const Monomial& m : comp[i]) {
            cfg::Record mr;
            cfg::ValueList exps;
            for (int e : m.exps) exps.emplace_back(static_cast<double>(e));
            mr.set("exps", cfg::Value(std::move(exps)));
            cfg::ValueList cc;
            cc.emplace_back(m.coeff.real());
            cc.emplace_back(m.coeff.imag());
            mr.set("coeff", cfg::Value(std::move(cc)));
            monos.emplace_back(std::move(mr));
        }
        body.set("component_" + std::to_string(i + 1), cfg::Value(std::move(monos)));
    }
    out.set("field", cfg::Value(std::move(body)));
    return out;
}

PolyVectorField PolyVectorField::from_config(const cfg::Record& r) {
    const cfg::Value* f = r.find("field");
    if (!f) throw input_error("field: missing 'field' section");
    PolyVectorField X;
    X.dim = static_cast<int>(f->record().items.size());
    if (X.dim < 1) throw input_error("field: needs at least one component");
    X.comp.resize(X.dim);
    int i = 0;
    for (const auto& [key, val] : f->record().items) {
        if (key != "component_" + std::to_string(i + 1))
            throw input_error("field: expected component_" + std::to_string(i + 1) +
                              ", found '" + key + "'");
        for (const cfg::Value& mv : val.list()) {
            cfg::Binder b(mv.record(), "field.component");
            Monomial m;
            for (double e : b.numbers("exps")) m.exps.push_back(static_cast<int>(e));
            auto cc = b.numbers("coeff");
            if (cc.size() != 2) throw input_error("field: coeff must be [re, im]");
            m.coeff = cplx(cc[0], cc[1]);
            b.finish();
            if (static_cast<int>(m.exps.size()) != X.dim)
                throw input_error("field: exps length must equal dimension");
            X.comp[i].push_back(std::move(m));
        }
        ++i;
    }
    bool nonzero = false;
    for (const auto& c : X.comp)
        for (const Monomial& m : c)
            if (std::abs(m.coeff) > 0) nonzero = true;
    if (!nonzero) throw input_error("field: all components vanish identically");
    return X;
}

namespace {

Monomial mono(std::vector<int> exps, cplx c) { return {std::move(exps), c}; }

// canonical exponent map of a component for pattern matching
std::map<std::vector<int>, cplx> canon(const std::vector<Monomial>& ms) {
    std::map<std::vector<int>, cplx> out;
    for (const Monomial& m : ms) out[m.exps] += m.coeff;
    for (auto it = out.begin(); it != out.end();)
        it = (std::abs(it->second) == 0) ? out.erase(it) : std::next(it);
    return out;
}

/// does X equal s * Y for one nonzero scalar s shared by all components?
bool matches_up_to_scalar(const PolyVectorField& X, const PolyVectorField& Y) {
    if (X.dim != Y.dim) return false;
    cplx scale(0, 0);
    for (int i = 0; i < X.dim; ++i) {
        auto cx = canon(X.comp[i]);
        auto cy = canon(Y.comp[i]);
        if (cx.size() != cy.size()) return false;
        for (const auto& [e, c] : cy) {
            auto it = cx.find(e);
            if (it == cx.end()) return false;
            cplx s = it->second / c;
            if (scale == cplx(0, 0))
                scale = s;
            else if (std::abs(s - scale) > 1e-12 * std::abs(scale))
                return false;
        }
    }
    return scale != cplx(0, 0);
}

} // namespace

PolyVectorField PolyVectorField::radial(int dim) {
    PolyVectorField X;
    X.dim = dim;
    X.comp.resize(dim);
    for (int i = 0; i < dim; ++i) {
        std::vector<int> e(dim, 0);
        e[i] = 1;
        X.comp[i].push_back(mono(e, cplx(1, 0)));
    }
    return X;
}

PolyVectorField PolyVectorField::diag_one_two() {
    PolyVectorField X;
    X.dim = 2;
    X.comp.resize(2);
    X.comp[0].push_back(mono({1, 0}, cplx(1, 0)));
    X.comp[1].push_back(mono({0, 1}, cplx(2, 0)));
    return X;
}

PolyVectorField PolyVectorField::example_6_1() {
    PolyVectorField X;
    X.dim = 3;
    X.comp.resize(3);
    X.comp[0].push_back(mono({1, 0, 0}, cplx(1, 0)));
    X.comp[1].push_back(mono({0, 1, 1}, cplx(1, 0)));
    X.comp[2].push_back(mono({0, 1, 1}, cplx(1, 0)));
    return X;
}

PolyVectorField PolyVectorField::example_6_2() {
    PolyVectorField X;
    X.dim = 3;
    X.comp.resize(3);
    X.comp[0].push_back(mono({1, 1, 0}, cplx(1, 0)));
    X.comp[1].push_back(mono({0, 1, 1}, cplx(1, 0)));
    X.comp[2].push_back(mono({1, 0, 1}, cplx(1, 0)));
    return X;
}

PolyVectorField PolyVectorField::constant_dx(int dim) {
    PolyVectorField X;
    X.dim = dim;
    X.comp.resize(dim);
    X.comp[0].push_back(mono(std::vector<int>(dim, 0), cplx(1, 0)));
    return X;
}

PolyVectorField PolyVectorField::by_name(const std::string& name, int dim_hint) {
    if (name == "radial") return radial(dim_hint);
    if (name == "radial2") return radial(2);
    if (name == "radial3") return radial(3);
    if (name == "diag_one_two" || name == "example_6_3") return diag_one_two();
    if (name == "example_6_1") return example_6_1();
    if (name == "example_6_2") return example_6_2();
    if (name == "constant_dx") return constant_dx(dim_hint);
    throw input_error("unknown field name '" + name + "'");
}

PolyVectorField::Catalog PolyVectorField::catalog() const {
    if (matches_up_to_scalar(*this, radial(dim))) return Catalog::Radial;
    if (dim == 2 && matches_up_to_scalar(*this, diag_one_two())) return Catalog::DiagOneTwo;
    if (dim == 3 && matches_up_to_scalar(*this, example_6_1())) return Catalog::Ex61;
    if (dim == 3 && matches_up_to_scalar(*this, example_6_2())) return Catalog::Ex62;
    return Catalog::None;
}

double SingularSet::distance(const CPoint& p) const {
    switch (templ) {
    case Template::Empty:
        return std::numeric_limits<double>::infinity();
    case Template::OriginOnly: {
        double d = 0;
        for (const cplx& c : p.z) d = std::max(d, std::abs(c));
        return d;
    }
    case Template::Axes: {
        double best = std::numeric_limits<double>::infinity();
        for (int ax : axes) {
            double d = 0;
            for (int i = 0; i < p.dim(); ++i)
                if (i != ax) d = std::max(d, std::abs(p.z[i]));
            best = std::min(best, d);
        }
        return best;
    }
    case Template::Unknown:
        throw math_error("singular set has no symbolic template");
    }
    return 0;
}

bool SingularSet::contains(const CPoint& p, double tol) const {
    if (templ == Template::Unknown) {
        for (const CPoint& s : samples)
            if (s.dist_max(p) <= tol) return true;
        return false;
    }
    if (templ == Template::Empty) return false;
    return distance(p) <= tol;
}

SingularSet singular_set(const PolyVectorField& X, const RBox& box, double h,
                         SingularSetOptions opt) {
    SingularSet out;
    out.dim = X.dim;

    // symbolic template first
    std::vector<int> ax;
    for (int a = 0; a < X.dim; ++a)
        if (X.vanishes_on_axis(a)) ax.push_back(a);
    bool at_origin = X.vanishes_at_origin();

    // effective pitch fitted to the budget
    double pitch = h;
    auto nodes_at = [&](double hh) {
        double c = 1;
        for (int a = 0; a < box.raxes(); ++a) c *= std::floor((box.hi[a] - box.lo[a]) / hh) + 1;
        return c;
    };
    while (nodes_at(pitch) > static_cast<double>(opt.budget)) pitch *= 1.5;

    // field magnitude scale over the box corners and center
    double scale = 0;
    {
        std::vector<CPoint> probes = {box.center_point()};
        CPoint corner = box.center_point();
        for (int i = 0; i < corner.dim(); ++i)
            corner.z[i] = cplx(box.hi[2 * i], box.hi[2 * i + 1]);
        probes.push_back(corner);
        for (const CPoint& p : probes) scale = std::max(scale, X.eval_norm(p));
        scale = std::max(scale, 1.0);
    }

    // coarse scan
    std::vector<CPoint> hits;
    {
        std::vector<int> counts(box.raxes());
        for (int a = 0; a < box.raxes(); ++a)
            counts[a] = static_cast<int>(std::floor((box.hi[a] - box.lo[a]) / pitch)) + 1;
        std::vector<int> idx(box.raxes(), 0);
        for (;;) {
            std::vector<cplx> z(X.dim);
            for (int i = 0; i < X.dim; ++i)
                z[i] = cplx(box.lo[2 * i] + idx[2 * i] * pitch,
                            box.lo[2 * i + 1] + idx[2 * i + 1] * pitch);
            CPoint p(std::move(z));
            if (X.eval_norm(p) < 2 * pitch * scale) hits.push_back(p);
            int a = box.raxes() - 1;
            while (a >= 0) {
                if (++idx[a] < counts[a]) break;
                idx[a] = 0;
                --a;
            }
            if (a < 0) break;
        }
    }

    // Newton polish (complex Newton on the square system)
    auto polish = [&](CPoint p) -> std::optional<CPoint> {
        for (int it = 0; it < 60; ++it) {
            std::vector<cplx> f = X.eval(p);
            double res = 0;
            for (const cplx& v : f) res = std::max(res, std::abs(v));
            if (res < opt.tol * scale) return p;
            std::vector<cplx> J = X.jacobian(p);
            // Gaussian elimination with partial pivoting
            int n = X.dim;
            std::vector<cplx> rhs = f;
            std::vector<int> piv(n);
            for (int i = 0; i < n; ++i) piv[i] = i;
            bool singular = false;
            for (int c = 0; c < n && !singular; ++c) {
                int best = c;
                for (int r = c + 1; r < n; ++r)
                    if (std::abs(J[piv[r] * n + c]) > std::abs(J[piv[best] * n + c])) best = r;
                std::swap(piv[c], piv[best]);
                cplx d = J[piv[c] * n + c];
                if (std::abs(d) < 1e-14) { singular = true; break; }
                for (int r = c + 1; r < n; ++r) {
                    cplx f2 = J[piv[r] * n + c] / d;
                    for (int cc = c; cc < n; ++cc) J[piv[r] * n + cc] -= f2 * J[piv[c] * n + cc];
                    rhs[piv[r]] -= f2 * rhs[piv[c]];
                }
            }
            if (singular) return std::nullopt;  // degenerate Jacobian, not an isolated zero
            std::vector<cplx> delta(n);
            for (int c = n - 1; c >= 0; --c) {
                cplx s = rhs[piv[c]];
                for (int cc = c + 1; cc < n; ++cc) s -= J[piv[c] * n + cc] * delta[cc];
                delta[c] = s / J[piv[c] * n + c];
            }
            double step = 0;
            for (int i = 0; i < n; ++i) {
                p.z[i] -= delta[i];
                step = std::max(step, std::abs(delta[i]));
            }
            if (!box.contains(p)) return std::nullopt;
            if (step < 1e-15) break;
        }
        double res = X.eval_norm(p);
        if (res < opt.tol * scale) return p;
        return std::nullopt;
    };

    std::vector<CPoint> zeros;
    for (const CPoint& hcand : hits) {
        std::optional<CPoint> z = polish(hcand);
        if (!z) {
            // degenerate loci (axes, origin) have singular Jacobians; snap the
            // hit onto the nearest symbolically vanishing template point
            CPoint best = hcand;
            double best_d = std::numeric_limits<double>::infinity();
            for (int a : ax) {
                CPoint proj = hcand;
                double d = 0;
                for (int i = 0; i < X.dim; ++i)
                    if (i != a) {
                        d = std::max(d, std::abs(proj.z[i]));
                        proj.z[i] = cplx(0, 0);
                    }
                if (d < best_d) { best_d = d; best = proj; }
            }
            if (at_origin) {
                double d = 0;
                for (const cplx& c : hcand.z) d = std::max(d, std::abs(c));
                if (d < best_d) {
                    best_d = d;
                    best = CPoint(std::vector<cplx>(X.dim, cplx(0, 0)));
                }
            }
            if (best_d <= 4 * pitch && X.eval_norm(best) < opt.tol * scale) z = best;
        }
        if (!z) continue;
        bool dup = false;
        for (const CPoint& q : zeros)
            if (q.dist_max(*z) < 2 * pitch) dup = true;
        if (!dup) zeros.push_back(*z);
    }
    out.samples = zeros;

    // accept the template if it covers every numeric zero
    auto covered_by_axes = [&](const CPoint& p) {
        for (int a : ax) {
            double d = 0;
            for (int i = 0; i < X.dim; ++i)
                if (i != a) d = std::max(d, std::abs(p.z[i]));
            if (d < 4 * pitch) return true;
        }
        return false;
    };

    if (!ax.empty()) {
        bool all = true;
        for (const CPoint& zp : zeros)
            if (!covered_by_axes(zp)) all = false;
        if (all) {
            out.templ = SingularSet::Template::Axes;
            out.axes = ax;
            return out;
        }
    }
    if (at_origin) {
        bool all = true;
        for (const CPoint& zp : zeros) {
            double d = 0;
            for (const cplx& c : zp.z) d = std::max(d, std::abs(c));
            if (d > 4 * pitch) all = false;
        }
        if (all) {
            out.templ = SingularSet::Template::OriginOnly;
            return out;
        }
    }
    if (zeros.empty() && !at_origin && ax.empty()) {
        out.templ = SingularSet::Template::Empty;
        return out;
    }
    out.templ = SingularSet::Template::Unknown;
    return out;
}

} // namespace folmet::fol
