#include "folmet/sampling.hpp"

#include <algorithm>

namespace folmet::geo {

namespace {

struct Range {
    std::vector<int> lo, hi;  // inclusive node ranges per axis

    std::int64_t nodes() const {
        std::int64_t c = 1;
        for (size_t a = 0; a < lo.size(); ++a) c *= (hi[a] - lo[a] + 1);
        return c;
    }
};

RBox range_box(const GridSpec& g, const Range& r) {
    std::vector<double> lo(g.raxes()), hi(g.raxes());
    for (int a = 0; a < g.raxes(); ++a) {
        lo[a] = g.coord(a, r.lo[a]);
        hi[a] = g.coord(a, r.hi[a]);
    }
    return RBox(std::move(lo), std::move(hi));
}

int widest_range_axis(const Range& r) {
    int best = 0;
    for (size_t a = 1; a < r.lo.size(); ++a)
        if (r.hi[a] - r.lo[a] > r.hi[best] - r.lo[best]) best = static_cast<int>(a);
    return best;
}

class NodeEnumerator {
public:
    NodeEnumerator(const Domain& inc, const Domain* exc, const GridSpec& g,
                   std::int64_t budget, const std::function<void(const CPoint&)>& sink)
        : inc_(inc), exc_(exc), g_(g), budget_(budget), sink_(sink) {
        scratch_ = CPoint(std::vector<cplx>(g.cdim(), cplx(0, 0)));
    }

    bool run() {
        Range root;
        root.lo.assign(g_.raxes(), 0);
        for (int a = 0; a < g_.raxes(); ++a) root.hi.push_back(g_.n[a] - 1);
        return descend(root);
    }

private:
    // returns false once the budget is exhausted
    bool descend(const Range& r) {
        RBox box = range_box(g_, r);
        BoxClass ci = inc_.classify(box);
        if (ci == BoxClass::Outside) return true;
        BoxClass ce = exc_ ? exc_->classify(box) : BoxClass::Outside;
        if (ce == BoxClass::Inside) return true;  // box inside the excluded open set
        if (ci == BoxClass::Inside && ce == BoxClass::Outside) return emit_all(r);
        if (r.nodes() <= 32) return emit_checked(r);
        Range a = r, b = r;
        int ax = widest_range_axis(r);
        int mid = (r.lo[ax] + r.hi[ax]) / 2;
        a.hi[ax] = mid;
        b.lo[ax] = mid + 1;
        return descend(a) && descend(b);
    }

    bool emit_all(const Range& r) {
        return visit(r, [this](const CPoint& p) { sink_(p); });
    }

    bool emit_checked(const Range& r) {
        return visit(r, [this](const CPoint& p) {
            if (inc_.member(p) && !(exc_ && exc_->closure_member(p))) sink_(p);
        });
    }

    template <class Fn>
    bool visit(const Range& r, Fn&& fn) {
        std::vector<int> idx = r.lo;
        for (;;) {
            if (emitted_ >= budget_) return false;
            g_.point_full_into(idx, scratch_);
            fn(scratch_);
            ++emitted_;
            int a = g_.raxes() - 1;
            while (a >= 0) {
                if (++idx[a] <= r.hi[a]) break;
                idx[a] = r.lo[a];
                --a;
            }
            if (a < 0) return true;
        }
    }

    const Domain& inc_;
    const Domain* exc_;
    const GridSpec& g_;
    std::int64_t budget_;
    std::int64_t emitted_ = 0;
    const std::function<void(const CPoint&)>& sink_;
    CPoint scratch_{std::vector<cplx>(1, cplx(0, 0))};
};

} // namespace

bool for_each_node(const Domain& include, const Domain* exclude_closure,
                   const RBox& box, double h, std::int64_t budget,
                   const std::function<void(const CPoint&)>& sink) {
    GridSpec g(box, h);
    NodeEnumerator e(include, exclude_closure, g, budget, sink);
    return e.run();
}

SampleCloud sample(const Domain& d, const RBox& box, double h, SampleOptions opt) {
    SampleCloud out;
    out.resolution = h;
    out.tag = CloudTag::Interior;
    bool complete = for_each_node(d, nullptr, box, h, opt.budget,
                                  [&](const CPoint& p) { out.points.push_back(p); });
    out.truncated = !complete;
    out.empty_flagged = out.points.empty();
    return out;
}

SampleCloud boundary_sample(const Domain& d, const RBox& box, double h, SampleOptions opt) {
    GridSpec g(box, h);
    if (g.node_count() > opt.grid_cap)
        throw input_error("boundary_sample: grid larger than grid_cap at this pitch");

    // full membership bit-grid, filled bulk for Inside ranges and per-node in
    // straddling leaves (the enumerator never visits Outside ranges)
    BitGrid member(g);
    std::vector<int> idx(g.raxes() - 1);
    int j = 0;
    for_each_node(d, nullptr, box, h, g.node_count() + 1, [&](const CPoint& p) {
        if (g.locate(p, idx, j)) member.set(g.encode_row(idx.data()), j);
    });

    SampleCloud out;
    out.resolution = h;
    out.tag = CloudTag::Boundary;

    const int axes = g.raxes();
    std::vector<std::int64_t> stride(axes - 1, 1);
    for (int a = axes - 3; a >= 0; --a) stride[a] = stride[a + 1] * g.n[a + 1];

    std::vector<int> ridx(axes - 1);
    const int cols = g.n[g.last()];
    for (std::int64_t row = 0; row < member.rows(); ++row) {
        g.decode_row(row, ridx.data());
        for (int c = 0; c < cols; ++c) {
            bool self = member.get(row, c);
            bool mixed = false;
            if (c > 0 && member.get(row, c - 1) != self) mixed = true;
            if (!mixed && c + 1 < cols && member.get(row, c + 1) != self) mixed = true;
            for (int a = 0; a < axes - 1 && !mixed; ++a) {
                if (ridx[a] > 0 && member.get(row - stride[a], c) != self) mixed = true;
                if (!mixed && ridx[a] + 1 < g.n[a] && member.get(row + stride[a], c) != self)
                    mixed = true;
            }
            if (mixed) {
                out.points.push_back(g.point(ridx.data(), c));
                if (static_cast<std::int64_t>(out.points.size()) > opt.budget) {
                    out.truncated = true;
                    out.empty_flagged = false;
                    return out;
                }
            }
        }
    }
    out.empty_flagged = out.points.empty();
    return out;
}

} // namespace folmet::geo
