#include "folmet/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace folmet::geo {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw input_error(msg);
}

RBox box_union(const RBox& a, const RBox& b) {
    RBox out = a;
    for (int i = 0; i < a.raxes(); ++i) {
        out.lo[i] = std::min(a.lo[i], b.lo[i]);
        out.hi[i] = std::max(a.hi[i], b.hi[i]);
    }
    return out;
}

RBox box_pad(RBox b, double pad) {
    for (auto& x : b.lo) x -= pad;
    for (auto& x : b.hi) x += pad;
    return b;
}

} // namespace

DomainPtr Domain::polydisc(CPoint center, std::vector<double> radii) {
    require(static_cast<int>(radii.size()) == center.dim(), "polydisc: radii/center dim mismatch");
    for (double r : radii) require(r > 0 && std::isfinite(r), "polydisc: radii must be positive");
    auto d = std::shared_ptr<Domain>(new Domain());
    d->kind_ = Kind::Polydisc;
    d->dim_ = center.dim();
    d->center_ = std::move(center);
    d->radii_ = std::move(radii);
    return d;
}

DomainPtr Domain::ball(CPoint center, double radius) {
    require(radius > 0 && std::isfinite(radius), "ball: radius must be positive");
    auto d = std::shared_ptr<Domain>(new Domain());
    d->kind_ = Kind::Ball;
    d->dim_ = center.dim();
    d->center_ = std::move(center);
    d->radii_ = {radius};
    return d;
}

DomainPtr Domain::tube(CPoint a, CPoint b, double radius) {
    require(a.dim() == b.dim(), "tube: endpoint dim mismatch");
    require(radius > 0 && std::isfinite(radius), "tube: radius must be positive");
    bool distinct = false;
    for (int i = 0; i < a.dim(); ++i)
        if (a.z[i] != b.z[i]) distinct = true;
    require(distinct, "tube: endpoints coincide");
    auto d = std::shared_ptr<Domain>(new Domain());
    d->kind_ = Kind::Tube;
    d->dim_ = a.dim();
    d->center_ = std::move(a);
    d->b_ = std::move(b);
    d->radii_ = {radius};
    return d;
}

DomainPtr Domain::unite(std::vector<DomainPtr> children) {
    require(!children.empty(), "union: no children");
    auto d = std::shared_ptr<Domain>(new Domain());
    d->kind_ = Kind::Union;
    d->dim_ = children[0]->dim();
    for (const auto& c : children) require(c->dim() == d->dim_, "union: dim mismatch");
    d->children_ = std::move(children);
    return d;
}

DomainPtr Domain::intersect(std::vector<DomainPtr> children) {
    require(!children.empty(), "intersection: no children");
    auto d = std::shared_ptr<Domain>(new Domain());
    d->kind_ = Kind::Intersection;
    d->dim_ = children[0]->dim();
    for (const auto& c : children) require(c->dim() == d->dim_, "intersection: dim mismatch");
    d->children_ = std::move(children);
    return d;
}

DomainPtr Domain::difference(DomainPtr left, DomainPtr right) {
    require(left && right && left->dim() == right->dim(), "difference: dim mismatch");
    auto d = std::shared_ptr<Domain>(new Domain());
    d->kind_ = Kind::Difference;
    d->dim_ = left->dim();
    d->children_ = {std::move(left), std::move(right)};
    return d;
}

DomainPtr Domain::thicken(DomainPtr child, double eps) {
    require(child != nullptr, "thickening: null child");
    require(eps > 0 && std::isfinite(eps), "thickening: eps must be positive");
    require(child->dist_closure_fast(child->bounding_box().center_point()).has_value(),
            "thickening: child must support closed-form distance");
    auto d = std::shared_ptr<Domain>(new Domain());
    d->kind_ = Kind::Thickening;
    d->dim_ = child->dim();
    d->children_ = {std::move(child)};
    d->eps_ = eps;
    return d;
}

double Domain::tube_seg_dist2(const CPoint& p) const {
    // segment disc { a + z*d : |z - 1/2| <= 1/2 }, d = b - a
    cplx zeta(0, 0);
    double dd = 0;
    for (int i = 0; i < dim_; ++i) {
        cplx di = b_.z[i] - center_.z[i];
        zeta += (p.z[i] - center_.z[i]) * std::conj(di);
        dd += std::norm(di);
    }
    zeta /= dd;
    cplx zc = zeta - cplx(0.5, 0);
    cplx clamped = (std::abs(zc) <= 0.5) ? zeta : cplx(0.5, 0) + 0.5 * zc / std::abs(zc);
    double ortho2 = 0;
    for (int i = 0; i < dim_; ++i) {
        cplx di = b_.z[i] - center_.z[i];
        ortho2 += std::norm(p.z[i] - center_.z[i] - zeta * di);
    }
    return ortho2 + std::norm(zeta - clamped) * dd;
}

bool Domain::member(const CPoint& p) const {
    switch (kind_) {
    case Kind::Polydisc:
        for (int i = 0; i < dim_; ++i)
            if (std::norm(p.z[i] - center_.z[i]) >= radii_[i] * radii_[i]) return false;
        return true;
    case Kind::Ball: {
        double s = 0;
        for (int i = 0; i < dim_; ++i) s += std::norm(p.z[i] - center_.z[i]);
        return s < radii_[0] * radii_[0];
    }
    case Kind::Tube:
        return tube_seg_dist2(p) < radii_[0] * radii_[0];
    case Kind::Union:
        for (const auto& c : children_)
            if (c->member(p)) return true;
        return false;
    case Kind::Intersection:
        for (const auto& c : children_)
            if (!c->member(p)) return false;
        return true;
    case Kind::Difference:
        return children_[0]->member(p) && !children_[1]->closure_member(p);
    case Kind::Thickening:
        return *children_[0]->dist_closure_fast(p) < eps_;
    }
    return false;
}

bool Domain::closure_member(const CPoint& p) const {
    switch (kind_) {
    case Kind::Polydisc:
        for (int i = 0; i < dim_; ++i)
            if (std::norm(p.z[i] - center_.z[i]) > radii_[i] * radii_[i]) return false;
        return true;
    case Kind::Ball: {
        double s = 0;
        for (int i = 0; i < dim_; ++i) s += std::norm(p.z[i] - center_.z[i]);
        return s <= radii_[0] * radii_[0];
    }
    case Kind::Tube:
        return tube_seg_dist2(p) <= radii_[0] * radii_[0];
    case Kind::Union:
        for (const auto& c : children_)
            if (c->closure_member(p)) return true;
        return false;
    case Kind::Intersection:
        // over-approximation: closure(A cap B) subset closure(A) cap closure(B)
        for (const auto& c : children_)
            if (!c->closure_member(p)) return false;
        return true;
    case Kind::Difference:
        // over-approximation: closure(A \ clB) subset clA \ B
        return children_[0]->closure_member(p) && !children_[1]->member(p);
    case Kind::Thickening:
        return *children_[0]->dist_closure_fast(p) <= eps_;
    }
    return false;
}

BoxClass Domain::classify(const RBox& box) const {
    switch (kind_) {
    case Kind::Polydisc: {
        bool in = true;
        for (int i = 0; i < dim_; ++i) {
            double lo, hi;
            abs_interval(box.lo[2 * i], box.hi[2 * i], box.lo[2 * i + 1], box.hi[2 * i + 1],
                         center_.z[i], lo, hi);
            if (lo > radii_[i]) return BoxClass::Outside;
            if (hi >= radii_[i]) in = false;
        }
        return in ? BoxClass::Inside : BoxClass::Straddles;
    }
    case Kind::Ball: {
        double lo2 = 0, hi2 = 0;
        for (int i = 0; i < dim_; ++i) {
            double lo, hi;
            abs_interval(box.lo[2 * i], box.hi[2 * i], box.lo[2 * i + 1], box.hi[2 * i + 1],
                         center_.z[i], lo, hi);
            lo2 += lo * lo;
            hi2 += hi * hi;
        }
        double r2 = radii_[0] * radii_[0];
        if (lo2 > r2) return BoxClass::Outside;
        if (hi2 < r2) return BoxClass::Inside;
        return BoxClass::Straddles;
    }
    case Kind::Tube: {
        double dc = std::sqrt(tube_seg_dist2(box.center_point()));
        double rad2 = 0;  // Euclidean half-diagonal
        for (int a = 0; a < box.raxes(); ++a) rad2 += box.halfwidth(a) * box.halfwidth(a);
        double rad = std::sqrt(rad2);
        if (dc - rad > radii_[0]) return BoxClass::Outside;
        if (dc + rad < radii_[0]) return BoxClass::Inside;
        return BoxClass::Straddles;
    }
    case Kind::Union: {
        bool all_out = true;
        for (const auto& c : children_) {
            BoxClass b = c->classify(box);
            if (b == BoxClass::Inside) return BoxClass::Inside;
            if (b != BoxClass::Outside) all_out = false;
        }
        return all_out ? BoxClass::Outside : BoxClass::Straddles;
    }
    case Kind::Intersection: {
        bool all_in = true;
        for (const auto& c : children_) {
            BoxClass b = c->classify(box);
            if (b == BoxClass::Outside) return BoxClass::Outside;
            if (b != BoxClass::Inside) all_in = false;
        }
        return all_in ? BoxClass::Inside : BoxClass::Straddles;
    }
    case Kind::Difference: {
        BoxClass a = children_[0]->classify(box);
        BoxClass b = children_[1]->classify(box);
        if (a == BoxClass::Outside || b == BoxClass::Inside) return BoxClass::Outside;
        if (a == BoxClass::Inside && b == BoxClass::Outside) return BoxClass::Inside;
        return BoxClass::Straddles;
    }
    case Kind::Thickening: {
        double dc = *children_[0]->dist_closure_fast(box.center_point());
        double rad = box.radius_max();
        if (dc - rad > eps_) return BoxClass::Outside;
        if (dc + rad < eps_) return BoxClass::Inside;
        return BoxClass::Straddles;
    }
    }
    return BoxClass::Straddles;
}

BoxClass Domain::classify_maxball(const CPoint& c, double t) const {
    switch (kind_) {
    case Kind::Polydisc: {
        bool in = true;
        for (int i = 0; i < dim_; ++i) {
            double d = std::abs(c.z[i] - center_.z[i]);
            if (d - t > radii_[i]) return BoxClass::Outside;
            if (d + t >= radii_[i]) in = false;
        }
        return in ? BoxClass::Inside : BoxClass::Straddles;
    }
    case Kind::Ball: {
        double lo2 = 0, hi2 = 0;
        for (int i = 0; i < dim_; ++i) {
            double d = std::abs(c.z[i] - center_.z[i]);
            double near = std::max(d - t, 0.0), far = d + t;
            lo2 += near * near;
            hi2 += far * far;
        }
        double r2 = radii_[0] * radii_[0];
        if (lo2 > r2) return BoxClass::Outside;
        if (hi2 < r2) return BoxClass::Inside;
        return BoxClass::Straddles;
    }
    case Kind::Tube: {
        double dc = std::sqrt(tube_seg_dist2(c));
        double rad = t * std::sqrt(static_cast<double>(dim_));  // Euclidean circumradius
        if (dc - rad > radii_[0]) return BoxClass::Outside;
        if (dc + rad < radii_[0]) return BoxClass::Inside;
        return BoxClass::Straddles;
    }
    case Kind::Union: {
        bool all_out = true;
        for (const auto& ch : children_) {
            BoxClass b = ch->classify_maxball(c, t);
            if (b == BoxClass::Inside) return BoxClass::Inside;
            if (b != BoxClass::Outside) all_out = false;
        }
        return all_out ? BoxClass::Outside : BoxClass::Straddles;
    }
    case Kind::Intersection: {
        bool all_in = true;
        for (const auto& ch : children_) {
            BoxClass b = ch->classify_maxball(c, t);
            if (b == BoxClass::Outside) return BoxClass::Outside;
            if (b != BoxClass::Inside) all_in = false;
        }
        return all_in ? BoxClass::Inside : BoxClass::Straddles;
    }
    case Kind::Difference: {
        BoxClass a = children_[0]->classify_maxball(c, t);
        BoxClass b = children_[1]->classify_maxball(c, t);
        if (a == BoxClass::Outside || b == BoxClass::Inside) return BoxClass::Outside;
        if (a == BoxClass::Inside && b == BoxClass::Outside) return BoxClass::Inside;
        return BoxClass::Straddles;
    }
    case Kind::Thickening: {
        double dc = *children_[0]->dist_closure_fast(c);
        if (dc - t > eps_) return BoxClass::Outside;
        if (dc + t < eps_) return BoxClass::Inside;
        return BoxClass::Straddles;
    }
    }
    return BoxClass::Straddles;
}

std::optional<double> Domain::dist_closure_fast(const CPoint& p) const {
    switch (kind_) {
    case Kind::Polydisc: {
        double d = 0;
        for (int i = 0; i < dim_; ++i)
            d = std::max(d, std::abs(p.z[i] - center_.z[i]) - radii_[i]);
        return std::max(d, 0.0);
    }
    case Kind::Ball: {
        // smallest t with the polydisc P(p,t) meeting the ball:
        // sqrt(sum max(|p_i - c_i| - t, 0)^2) <= r, monotone in t.
        std::vector<double> di(dim_);
        double t_hi = 0;
        for (int i = 0; i < dim_; ++i) {
            di[i] = std::abs(p.z[i] - center_.z[i]);
            t_hi = std::max(t_hi, di[i]);
        }
        auto reach = [&](double t) {
            double s = 0;
            for (double d : di) {
                double e = std::max(d - t, 0.0);
                s += e * e;
            }
            return std::sqrt(s) <= radii_[0];
        };
        if (reach(0)) return 0.0;
        double lo = 0, hi = t_hi;
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            (reach(mid) ? hi : lo) = mid;
        }
        return hi;
    }
    case Kind::Tube: {
        // min over the segment disc of the per-point formula above; the
        // objective is convex in the segment parameter, minimized by a
        // coarse polar scan plus local refinement.
        double dd = 0;
        for (int i = 0; i < dim_; ++i) dd += std::norm(b_.z[i] - center_.z[i]);
        auto polydisc_dist_to_seg_point = [&](const cplx& zeta, double t) {
            double s = 0;
            for (int i = 0; i < dim_; ++i) {
                cplx si = center_.z[i] + zeta * (b_.z[i] - center_.z[i]);
                double e = std::max(std::abs(p.z[i] - si) - t, 0.0);
                s += e * e;
            }
            return std::sqrt(s);
        };
        auto reachable = [&](double t) {
            double best = polydisc_dist_to_seg_point(cplx(0.5, 0), t);
            cplx best_z(0.5, 0);
            for (int ring = 1; ring <= 4 && best > radii_[0]; ++ring)
                for (int k = 0; k < 16; ++k) {
                    double ang = 2 * M_PI * k / 16;
                    cplx z = cplx(0.5, 0) + (0.125 * ring) * std::polar(1.0, ang);
                    double v = polydisc_dist_to_seg_point(z, t);
                    if (v < best) { best = v; best_z = z; }
                }
            double step = 0.1;
            for (int it = 0; it < 60 && best > radii_[0]; ++it) {
                bool improved = false;
                for (int k = 0; k < 8; ++k) {
                    cplx z = best_z + step * std::polar(1.0, 2 * M_PI * k / 8);
                    if (std::abs(z - cplx(0.5, 0)) > 0.5)
                        z = cplx(0.5, 0) + 0.5 * (z - cplx(0.5, 0)) / std::abs(z - cplx(0.5, 0));
                    double v = polydisc_dist_to_seg_point(z, t);
                    if (v < best) { best = v; best_z = z; improved = true; }
                }
                if (!improved) step *= 0.5;
            }
            return best <= radii_[0];
        };
        (void)dd;
        if (reachable(0)) return 0.0;
        double hi = 0;
        for (int i = 0; i < dim_; ++i) hi = std::max(hi, std::abs(p.z[i] - center_.z[i]) +
                                                             std::abs(p.z[i] - b_.z[i]));
        double lo = 0;
        for (int it = 0; it < 50; ++it) {
            double mid = 0.5 * (lo + hi);
            (reachable(mid) ? hi : lo) = mid;
        }
        return hi;
    }
    case Kind::Union: {
        double best = 0;
        bool first = true;
        for (const auto& c : children_) {
            auto d = c->dist_closure_fast(p);
            if (!d) return std::nullopt;
            best = first ? *d : std::min(best, *d);
            first = false;
        }
        return best;
    }
    case Kind::Thickening: {
        return std::max(*children_[0]->dist_closure_fast(p) - eps_, 0.0);
    }
    default:
        return std::nullopt;
    }
}

double Domain::dist_closure(const CPoint& p, double tol) const {
    if (auto d = dist_closure_fast(p)) return *d;
    if (closure_member(p)) return 0.0;
    // grow the max-metric ball around p while it classifies Outside
    RBox bb = bounding_box();
    double hi = 0;
    for (int i = 0; i < dim_; ++i) {
        double far_re = std::max(std::abs(p.z[i].real() - bb.lo[2 * i]),
                                 std::abs(p.z[i].real() - bb.hi[2 * i]));
        double far_im = std::max(std::abs(p.z[i].imag() - bb.lo[2 * i + 1]),
                                 std::abs(p.z[i].imag() - bb.hi[2 * i + 1]));
        hi = std::max(hi, std::hypot(far_re, far_im));
    }
    double lo = 0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (classify_maxball(p, mid) == BoxClass::Outside)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

double Domain::dist_boundary(const CPoint& p, double tol) const {
    if (kind_ == Kind::Polydisc) {
        // exact in the max metric: inside, the smallest radial slack; outside,
        // the distance to the closure
        double out_d = 0, in_d = std::numeric_limits<double>::infinity();
        bool inside = true;
        for (int i = 0; i < dim_; ++i) {
            double d = std::abs(p.z[i] - center_.z[i]);
            out_d = std::max(out_d, d - radii_[i]);
            if (d >= radii_[i]) inside = false;
            in_d = std::min(in_d, radii_[i] - d);
        }
        return inside ? in_d : std::max(out_d, 0.0);
    }
    RBox bb = bounding_box();
    double hi = 0;
    for (int a = 0; a < bb.raxes(); ++a)
        hi = std::max(hi, bb.hi[a] - bb.lo[a]);
    double lo = 0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        BoxClass c = classify_maxball(p, mid);
        if (c == BoxClass::Inside || c == BoxClass::Outside)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

RBox Domain::bounding_box(double pad) const {
    switch (kind_) {
    case Kind::Polydisc: {
        std::vector<double> lo, hi;
        for (int i = 0; i < dim_; ++i) {
            lo.push_back(center_.z[i].real() - radii_[i]);
            lo.push_back(center_.z[i].imag() - radii_[i]);
            hi.push_back(center_.z[i].real() + radii_[i]);
            hi.push_back(center_.z[i].imag() + radii_[i]);
        }
        return box_pad(RBox(lo, hi), pad);
    }
    case Kind::Ball: {
        std::vector<double> lo, hi;
        for (int i = 0; i < dim_; ++i) {
            lo.push_back(center_.z[i].real() - radii_[0]);
            lo.push_back(center_.z[i].imag() - radii_[0]);
            hi.push_back(center_.z[i].real() + radii_[0]);
            hi.push_back(center_.z[i].imag() + radii_[0]);
        }
        return box_pad(RBox(lo, hi), pad);
    }
    case Kind::Tube: {
        std::vector<double> lo, hi;
        for (int i = 0; i < dim_; ++i) {
            cplx mid = 0.5 * (center_.z[i] + b_.z[i]);
            double half = 0.5 * std::abs(b_.z[i] - center_.z[i]) + radii_[0];
            lo.push_back(mid.real() - half);
            lo.push_back(mid.imag() - half);
            hi.push_back(mid.real() + half);
            hi.push_back(mid.imag() + half);
        }
        return box_pad(RBox(lo, hi), pad);
    }
    case Kind::Union: {
        RBox out = children_[0]->bounding_box();
        for (size_t i = 1; i < children_.size(); ++i)
            out = box_union(out, children_[i]->bounding_box());
        return box_pad(out, pad);
    }
    case Kind::Intersection: {
        RBox out = children_[0]->bounding_box();
        for (size_t i = 1; i < children_.size(); ++i) {
            RBox b = children_[i]->bounding_box();
            for (int a = 0; a < out.raxes(); ++a) {
                out.lo[a] = std::max(out.lo[a], b.lo[a]);
                out.hi[a] = std::min(out.hi[a], b.hi[a]);
                if (out.lo[a] > out.hi[a]) out.hi[a] = out.lo[a];
            }
        }
        return box_pad(out, pad);
    }
    case Kind::Difference:
        return box_pad(children_[0]->bounding_box(), pad);
    case Kind::Thickening:
        return box_pad(children_[0]->bounding_box(eps_), pad);
    }
    throw math_error("bounding_box: unreachable");
}

namespace {

cfg::Value point_to_cfg(const CPoint& p) {
    cfg::ValueList list;
    for (const cplx& c : p.z) {
        list.emplace_back(c.real());
        list.emplace_back(c.imag());
    }
    return cfg::Value(std::move(list));
}

CPoint point_from_cfg(const cfg::Value& v) {
    const auto& list = v.list();
    if (list.size() % 2 != 0 || list.empty())
        throw input_error("point: expected [re_1, im_1, ..., re_N, im_N]");
    std::vector<cplx> z;
    for (size_t i = 0; i < list.size(); i += 2)
        z.emplace_back(list[i].num(), list[i + 1].num());
    return CPoint(std::move(z));
}

} // namespace

cfg::Record Domain::to_config() const {
    cfg::Record body;
    switch (kind_) {
    case Kind::Polydisc: {
        body.set("center", point_to_cfg(center_));
        cfg::ValueList rs;
        for (double r : radii_) rs.emplace_back(r);
        body.set("radius", cfg::Value(std::move(rs)));
        cfg::Record out;
        out.set("polydisc", cfg::Value(std::move(body)));
        return out;
    }
    case Kind::Ball: {
        body.set("center", point_to_cfg(center_));
        body.set("radius", cfg::Value(radii_[0]));
        cfg::Record out;
        out.set("ball", cfg::Value(std::move(body)));
        return out;
    }
    case Kind::Tube: {
        body.set("a", point_to_cfg(center_));
        body.set("b", point_to_cfg(b_));
        body.set("radius", cfg::Value(radii_[0]));
        cfg::Record out;
        out.set("tube", cfg::Value(std::move(body)));
        return out;
    }
    case Kind::Union:
    case Kind::Intersection: {
        cfg::ValueList items;
        for (const auto& c : children_) items.emplace_back(c->to_config());
        body.set("items", cfg::Value(std::move(items)));
        cfg::Record out;
        out.set(kind_ == Kind::Union ? "union" : "intersection", cfg::Value(std::move(body)));
        return out;
    }
    case Kind::Difference: {
        body.set("left", cfg::Value(children_[0]->to_config()));
        body.set("right", cfg::Value(children_[1]->to_config()));
        cfg::Record out;
        out.set("difference", cfg::Value(std::move(body)));
        return out;
    }
    case Kind::Thickening: {
        body.set("child", cfg::Value(children_[0]->to_config()));
        body.set("eps", cfg::Value(eps_));
        cfg::Record out;
        out.set("thickening", cfg::Value(std::move(body)));
        return out;
    }
    }
    throw math_error("to_config: unreachable");
}

DomainPtr Domain::from_config(const cfg::Record& r) {
    if (r.items.size() != 1)
        throw input_error("domain: expected exactly one of polydisc/ball/tube/union/"
                          "intersection/difference/thickening");
    const auto& [key, val] = r.items[0];
    cfg::Binder b(val.record(), "domain." + key);
    if (key == "polydisc") {
        CPoint c = point_from_cfg(b.get("center"));
        std::vector<double> radii = b.numbers("radius");
        b.finish();
        return polydisc(std::move(c), std::move(radii));
    }
    if (key == "ball") {
        CPoint c = point_from_cfg(b.get("center"));
        double rr = b.number("radius");
        b.finish();
        return ball(std::move(c), rr);
    }
    if (key == "tube") {
        CPoint pa = point_from_cfg(b.get("a"));
        CPoint pb = point_from_cfg(b.get("b"));
        double rr = b.number("radius");
        b.finish();
        return tube(std::move(pa), std::move(pb), rr);
    }
    if (key == "union" || key == "intersection") {
        std::vector<DomainPtr> kids;
        for (const auto& item : b.get("items").list()) kids.push_back(from_config(item.record()));
        b.finish();
        return key == "union" ? unite(std::move(kids)) : intersect(std::move(kids));
    }
    if (key == "difference") {
        DomainPtr l = from_config(b.section("left"));
        DomainPtr rr = from_config(b.section("right"));
        b.finish();
        return difference(std::move(l), std::move(rr));
    }
    if (key == "thickening") {
        DomainPtr c = from_config(b.section("child"));
        double eps = b.number("eps");
        b.finish();
        return thicken(std::move(c), eps);
    }
    throw input_error("domain: unknown kind '" + key + "'");
}

double Domain::tube_segment_distance(const CPoint& p) const {
    if (kind_ != Kind::Tube) throw math_error("tube_segment_distance: not a tube");
    return std::sqrt(tube_seg_dist2(p));
}

PointClass contains(const Domain& d, const CPoint& p, double tol) {
    if (!(tol > 0)) throw input_error("contains: tol must be positive");
    p.check();
    switch (d.classify_maxball(p, tol)) {
    case BoxClass::Inside: return PointClass::Interior;
    case BoxClass::Outside: return PointClass::Exterior;
    default: return PointClass::NearBoundary;
    }
}

} // namespace folmet::geo
