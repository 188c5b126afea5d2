#include "folmet/metric.hpp"

#include "folmet/grid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace folmet::geo {

namespace {

struct BucketIndex {
    // lattice of max-metric cells over the cloud's bounding box, sized so
    // buckets hold O(1) points whether the cloud is a dense grid or sparse
    double cell;
    std::vector<double> lo;  // per real axis
    int raxes;
    std::unordered_map<std::int64_t, std::vector<int>> buckets;
    const SampleCloud* cloud;

    explicit BucketIndex(const SampleCloud& c) : cloud(&c) {
        raxes = 2 * c.dim();
        lo.assign(raxes, 1e300);
        std::vector<double> hi(raxes, -1e300);
        for (const CPoint& p : c.points)
            for (int i = 0; i < c.dim(); ++i) {
                lo[2 * i] = std::min(lo[2 * i], p.z[i].real());
                hi[2 * i] = std::max(hi[2 * i], p.z[i].real());
                lo[2 * i + 1] = std::min(lo[2 * i + 1], p.z[i].imag());
                hi[2 * i + 1] = std::max(hi[2 * i + 1], p.z[i].imag());
            }
        double span = 0;
        for (int a = 0; a < raxes; ++a) span = std::max(span, hi[a] - lo[a]);
        double per_axis = std::pow(static_cast<double>(c.points.size()), 1.0 / raxes);
        cell = std::max({span / std::max(2.0, per_axis), c.resolution, 1e-12});
        for (int k = 0; k < static_cast<int>(c.points.size()); ++k)
            buckets[key_of(c.points[k])].push_back(k);
    }

    std::int64_t key_cells(const std::int64_t* cells) const {
        std::int64_t key = 0;
        for (int a = 0; a < raxes; ++a) key = key * 73856093 + cells[a];
        return key;
    }

    std::int64_t key_of(const CPoint& p) const {
        std::int64_t cells[16];
        for (int i = 0; i < cloud->dim(); ++i) {
            cells[2 * i] = static_cast<std::int64_t>(std::floor((p.z[i].real() - lo[2 * i]) / cell));
            cells[2 * i + 1] =
                static_cast<std::int64_t>(std::floor((p.z[i].imag() - lo[2 * i + 1]) / cell));
        }
        return key_cells(cells);
    }
};

/// nearest max-metric distance from a to the cloud, searching expanding
/// Chebyshev shells of buckets in place. Stops early (returning the bound
/// found so far) once the distance is provably <= floor, since such points
/// cannot raise a running supremum.
double nearest_in_cloud(const SampleCloud& B, const BucketIndex& bi, const CPoint& a,
                        double floor_value) {
    const int dims = 2 * B.dim();
    std::int64_t center[16];
    for (int i = 0; i < B.dim(); ++i) {
        center[2 * i] = static_cast<std::int64_t>(std::floor((a.z[i].real() - bi.lo[2 * i]) / bi.cell));
        center[2 * i + 1] =
            static_cast<std::int64_t>(std::floor((a.z[i].imag() - bi.lo[2 * i + 1]) / bi.cell));
    }
    double best = 1e300;
    std::int64_t cur[16];
    auto probe = [&]() {
        auto it = bi.buckets.find(bi.key_cells(cur));
        if (it != bi.buckets.end())
            for (int k : it->second) best = std::min(best, a.dist_max(B.points[k]));
    };
    for (int r = 0; r <= (1 << 20); ++r) {
        if (best < (r - 1) * bi.cell) return best;
        if (best <= floor_value) return best;
        if (r == 0) {
            for (int a2 = 0; a2 < dims; ++a2) cur[a2] = center[a2];
            probe();
            continue;
        }
        // the shell max|delta| == r as 2*dims faces (corner duplicates are
        // harmless re-probes)
        for (int fa = 0; fa < dims; ++fa)
            for (int sign = -1; sign <= 1; sign += 2) {
                for (int a2 = 0; a2 < dims; ++a2) cur[a2] = center[a2] - r;
                cur[fa] = center[fa] + sign * r;
                for (;;) {
                    probe();
                    int a2 = dims - 1;
                    while (a2 >= 0) {
                        if (a2 == fa) { --a2; continue; }
                        if (++cur[a2] <= center[a2] + r) break;
                        cur[a2] = center[a2] - r;
                        --a2;
                    }
                    if (a2 < 0) break;
                }
            }
    }
    if (best == 1e300)
        for (const CPoint& b : B.points) best = std::min(best, a.dist_max(b));
    return best;
}

} // namespace

double directed_hausdorff_serial_ref(const SampleCloud& A, const SampleCloud& B) {
    if (A.points.empty() || B.points.empty())
        throw math_error("undefined Hausdorff distance: empty cloud");
    double sup = 0;
    for (const CPoint& a : A.points) {
        double best = 1e300;
        for (const CPoint& b : B.points) best = std::min(best, a.dist_max(b));
        sup = std::max(sup, best);
    }
    return sup;
}

double directed_hausdorff(const SampleCloud& A, const SampleCloud& B) {
    if (A.points.empty() || B.points.empty())
        throw math_error("undefined Hausdorff distance: empty cloud");
    BucketIndex bi(B);
    double sup = 0;
    const std::int64_t n = static_cast<std::int64_t>(A.points.size());
#ifdef _OPENMP
#pragma omp parallel for reduction(max : sup) schedule(dynamic, 64)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        double d = nearest_in_cloud(B, bi, A.points[i], sup);
        sup = std::max(sup, d);
    }
    return sup;
}

double hausdorff_distance(const SampleCloud& A, const SampleCloud& B) {
    return std::max(directed_hausdorff(A, B), directed_hausdorff(B, A));
}

namespace {

struct RangeBB {
    std::vector<int> lo, hi;
    double ub;  // upper bound of the objective over this range
};

struct UbLess {
    bool operator()(const RangeBB& a, const RangeBB& b) const { return a.ub < b.ub; }
};

RBox range_box(const GridSpec& g, const std::vector<int>& lo, const std::vector<int>& hi,
               double inflate = 0) {
    std::vector<double> l(g.raxes()), u(g.raxes());
    for (int a = 0; a < g.raxes(); ++a) {
        l[a] = g.coord(a, lo[a]) - inflate;
        u[a] = g.coord(a, hi[a]) + inflate;
    }
    return RBox(std::move(l), std::move(u));
}

std::int64_t range_nodes(const std::vector<int>& lo, const std::vector<int>& hi) {
    std::int64_t c = 1;
    for (size_t a = 0; a < lo.size(); ++a) c *= (hi[a] - lo[a] + 1);
    return c;
}

template <class NodeVisitor, class Pruner>
double branch_and_bound_sup(const GridSpec& g, const Pruner& prune_range,
                            const NodeVisitor& node_value) {
    // boxes that cannot beat the incumbent by more than h/2 are dropped; the
    // grid already carries an O(h) sampling error, so this stays in budget
    const double slack = g.h / 2;
    std::priority_queue<RangeBB, std::vector<RangeBB>, UbLess> heap;
    RangeBB root;
    root.lo.assign(g.raxes(), 0);
    for (int a = 0; a < g.raxes(); ++a) root.hi.push_back(g.n[a] - 1);
    root.ub = 1e300;
    heap.push(root);
    double best = 0;
    while (!heap.empty()) {
        RangeBB r = heap.top();
        heap.pop();
        if (r.ub <= best + slack) break;  // heap is ordered, nothing better remains
        double ub = prune_range(r.lo, r.hi);
        if (ub <= best + slack) continue;
        if (range_nodes(r.lo, r.hi) <= 128) {
            std::vector<int> idx = r.lo;
            for (;;) {
                best = std::max(best, node_value(idx));
                int a = g.raxes() - 1;
                while (a >= 0) {
                    if (++idx[a] <= r.hi[a]) break;
                    idx[a] = r.lo[a];
                    --a;
                }
                if (a < 0) break;
            }
            continue;
        }
        int ax = 0;
        for (int a = 1; a < g.raxes(); ++a)
            if (r.hi[a] - r.lo[a] > r.hi[ax] - r.lo[ax]) ax = a;
        int mid = (r.lo[ax] + r.hi[ax]) / 2;
        RangeBB a = r, b = r;
        a.hi[ax] = mid;
        b.lo[ax] = mid + 1;
        a.ub = b.ub = ub;
        heap.push(std::move(a));
        heap.push(std::move(b));
    }
    return best;
}

} // namespace

double directed_sup_closure(const Domain& A, const Domain& B, const RBox& box, double h) {
    GridSpec g(box, h);
    double tol = h / 8;
    CPoint scratch(std::vector<cplx>(g.cdim(), cplx(0, 0)));
    auto prune = [&](const std::vector<int>& lo, const std::vector<int>& hi) -> double {
        RBox rb = range_box(g, lo, hi);
        if (A.classify(rb) == BoxClass::Outside) return 0.0;
        if (B.classify(rb) == BoxClass::Inside) return 0.0;  // d vanishes on the box
        return B.dist_closure(rb.center_point(), tol) + rb.radius_max();
    };
    auto value = [&](const std::vector<int>& idx) -> double {
        g.point_full_into(idx, scratch);
        if (!A.closure_member(scratch)) return 0.0;
        return B.dist_closure(scratch, tol);
    };
    return branch_and_bound_sup(g, prune, value);
}

double directed_sup_boundary(const Domain& A, const Domain& B, const RBox& box, double h) {
    GridSpec g(box, h);
    double tol = h / 8;
    CPoint scratch(std::vector<cplx>(g.cdim(), cplx(0, 0)));
    auto prune = [&](const std::vector<int>& lo, const std::vector<int>& hi) -> double {
        // inflate by h: if the padded box is uniformly in or out of A, no node
        // inside the range has a mixed-sign neighborhood
        RBox rb = range_box(g, lo, hi, h);
        BoxClass c = A.classify(rb);
        if (c == BoxClass::Inside || c == BoxClass::Outside) return 0.0;
        RBox tight = range_box(g, lo, hi);
        return B.dist_boundary(tight.center_point(), tol) + tight.radius_max();
    };
    auto value = [&](const std::vector<int>& idx) -> double {
        // nodes whose h-ball straddles the surface of A sample its boundary
        // within h; one classification replaces the neighborhood scan
        g.point_full_into(idx, scratch);
        if (A.classify_maxball(scratch, h) != BoxClass::Straddles) return 0.0;
        return B.dist_boundary(scratch, tol);
    };
    return branch_and_bound_sup(g, prune, value);
}

double rho_distance(const Domain& U, const Domain& V, const RBox& box, double h) {
    double hc = std::max(directed_sup_closure(U, V, box, h), directed_sup_closure(V, U, box, h));
    double hb = std::max(directed_sup_boundary(U, V, box, h), directed_sup_boundary(V, U, box, h));
    return hc + hb;
}

} // namespace folmet::geo
