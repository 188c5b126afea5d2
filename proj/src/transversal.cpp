#include "folmet/transversal.hpp"

#include <algorithm>
#include <cmath>

namespace folmet::fol {

double projective_angle(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    cplx ip(0, 0);
    double nu = 0, nv = 0;
    for (size_t i = 0; i < u.size(); ++i) {
        ip += u[i] * std::conj(v[i]);
        nu += std::norm(u[i]);
        nv += std::norm(v[i]);
    }
    double c = std::abs(ip) / std::sqrt(nu * nv);
    return std::acos(std::min(1.0, std::max(0.0, c)));
}

namespace {

/// tangent-cone generator lines of the axis/origin templates at e_point
std::vector<std::vector<cplx>> cone_lines(const SingularSet& E, const CPoint& p, double tol) {
    std::vector<std::vector<cplx>> lines;
    auto axis_dir = [&](int a) {
        std::vector<cplx> e(p.dim(), cplx(0, 0));
        e[a] = cplx(1, 0);
        return e;
    };
    if (E.templ == SingularSet::Template::OriginOnly) {
        // C_0{0} = {0}: no nonzero cone directions
        return lines;
    }
    if (E.templ == SingularSet::Template::Axes) {
        // at a nonzero axis point the cone is that axis line; at the origin it
        // is the union of all template axis lines
        bool at_origin = true;
        for (const cplx& c : p.z)
            if (std::abs(c) > tol) at_origin = false;
        for (int a : E.axes) {
            if (at_origin) {
                lines.push_back(axis_dir(a));
                continue;
            }
            double off = 0;
            for (int i = 0; i < p.dim(); ++i)
                if (i != a) off = std::max(off, std::abs(p.z[i]));
            if (off <= tol) lines.push_back(axis_dir(a));
        }
        return lines;
    }
    return lines;
}

} // namespace

TransversalResult transversal_type_check(const PolyVectorField& X, const SingularSet& E,
                                         const CPoint& e_point, double radius, int samples,
                                         double tol, std::uint64_t seed) {
    TransversalResult out;
    if (!E.has_template()) {
        out.note = "singular set lacks a symbolic description";
        return out;
    }
    if (!E.contains(e_point, std::max(tol, 1e-9))) throw math_error("point is not on E");

    std::vector<std::vector<cplx>> cone = cone_lines(E, e_point, tol);

    const int dim = X.dim;
    // approach directions: coordinate lines, pair combinations with phases,
    // then seeded random fill up to `samples`
    std::vector<std::vector<cplx>> dirs;
    for (int i = 0; i < dim; ++i)
        for (cplx ph : {cplx(1, 0), cplx(0, 1)}) {
            std::vector<cplx> v(dim, cplx(0, 0));
            v[i] = ph;
            dirs.push_back(v);
        }
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            for (double sgn : {1.0, -1.0})
                for (cplx ph : {cplx(1, 0), cplx(0, 1)}) {
                    std::vector<cplx> v(dim, cplx(0, 0));
                    v[i] = cplx(M_SQRT1_2, 0);
                    v[j] = sgn * M_SQRT1_2 * ph;
                    dirs.push_back(v);
                }
    RngStream rng(seed, "transversal-dirs");
    while (static_cast<int>(dirs.size()) < samples) {
        std::vector<cplx> v(dim);
        double n2 = 0;
        for (int i = 0; i < dim; ++i) {
            v[i] = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
            n2 += std::norm(v[i]);
        }
        if (n2 < 1e-6) continue;
        for (cplx& c : v) c /= std::sqrt(n2);
        dirs.push_back(std::move(v));
    }

    double min_angle = M_PI;
    std::vector<cplx> witness;
    const int scale_count = 8;
    bool any_sample = false;
    for (const auto& v : dirs) {
        // limit direction along this approach: take the finest usable scale
        std::vector<cplx> dir;
        for (int s = scale_count - 1; s >= 0; --s) {
            double delta = radius * std::pow(0.5, s);  // finest first
            CPoint q = e_point;
            for (int i = 0; i < dim; ++i) q.z[i] += delta * v[i];
            if (E.contains(q, 1e-14)) continue;  // approach stayed inside E
            std::vector<cplx> f = X.eval(q);
            double n = 0;
            for (const cplx& c : f) n += std::norm(c);
            if (n < 1e-300) continue;
            for (cplx& c : f) c /= std::sqrt(n);
            dir = std::move(f);
            break;
        }
        if (dir.empty()) continue;
        any_sample = true;
        if (cone.empty()) continue;  // cone is {0}: every direction clears it
        for (const auto& line : cone) {
            double a = projective_angle(dir, line);
            if (a < min_angle) {
                min_angle = a;
                witness = dir;
            }
        }
    }

    if (!any_sample) {
        out.note = "no regular points sampled near the singular point";
        return out;
    }
    if (cone.empty()) {
        // tangent cone of E degenerates to the origin; nothing to collide with
        out.verdict = TransversalVerdict::Transversal;
        out.min_angle = M_PI;
        return out;
    }
    out.min_angle = min_angle;
    out.witness = witness;
    if (min_angle < tol) {
        out.verdict = TransversalVerdict::NotTransversal;
        return out;
    }
    if (min_angle > 10 * tol) {
        out.verdict = TransversalVerdict::Transversal;
        return out;
    }
    out.note = "angular gap between tol and 10 tol";
    return out;
}

} // namespace folmet::fol
