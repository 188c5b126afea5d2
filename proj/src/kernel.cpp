#include "folmet/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "folmet/rng.hpp"

namespace folmet::geo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// exact max-metric distance between two nodes of the same grid
double node_dist(const GridSpec& g, const std::vector<int>& ia, int ja,
                 const std::vector<int>& ib, int jb) {
    double d = 0;
    for (int i = 0; i < g.cdim(); ++i) {
        double dre, dim;
        if (2 * i == g.last())
            dre = (ja - jb) * g.h;
        else
            dre = (ia[2 * i] - ib[2 * i]) * g.h;
        if (2 * i + 1 == g.last())
            dim = (ja - jb) * g.h;
        else
            dim = (ia[2 * i + 1] - ib[2 * i + 1]) * g.h;
        d = std::max(d, std::hypot(dre, dim));
    }
    return d;
}

/// max-metric distance from a grid node to the nearest set bit, by expanding
/// Chebyshev index shells (enumerated as faces); +inf once the index radius
/// exceeds cap/h.
double ring_search(const GridSpec& g, const BitGrid& bits, const std::vector<int>& idx, int j,
                   double cap) {
    const int axes = g.raxes();
    const int rcap = static_cast<int>(std::ceil(cap / g.h)) + 1;
    double best = kInf;
    int found_r = -1;
    int cur[16];
    int nidx[16];
    auto center_of = [&](int a) { return (a == axes - 1) ? j : idx[a]; };
    auto probe = [&](int r) {
        for (int a = 0; a < axes; ++a)
            if (cur[a] < 0 || cur[a] >= g.n[a]) return;
        for (int a = 0; a < axes - 1; ++a) nidx[a] = cur[a];
        std::int64_t row = g.encode_row(nidx);
        if (bits.get(row, cur[axes - 1])) {
            std::vector<int> ni(nidx, nidx + axes - 1);
            double d = node_dist(g, ni, cur[axes - 1], idx, j);
            if (d < best) {
                best = d;
                if (found_r < 0) found_r = r;
            }
        }
    };
    for (int r = 0; r <= rcap; ++r) {
        if (found_r >= 0 && r > static_cast<int>(std::ceil(found_r * std::sqrt(2.0))) + 1) break;
        if (r == 0) {
            for (int a = 0; a < axes; ++a) cur[a] = center_of(a);
            probe(0);
            continue;
        }
        for (int fa = 0; fa < axes; ++fa)
            for (int sign = -1; sign <= 1; sign += 2) {
                for (int a = 0; a < axes; ++a) cur[a] = center_of(a) - r;
                cur[fa] = center_of(fa) + sign * r;
                for (;;) {
                    probe(r);
                    int a = axes - 1;
                    while (a >= 0) {
                        if (a == fa) { --a; continue; }
                        if (++cur[a] <= center_of(a) + r) break;
                        cur[a] = center_of(a) - r;
                        --a;
                    }
                    if (a < 0) break;
                }
            }
    }
    return (best <= cap) ? best : kInf;
}

} // namespace

SampleCloud KernelResult::boundary_cloud(std::int64_t max_points) const {
    SampleCloud out;
    out.resolution = grid.h;
    out.tag = CloudTag::Boundary;
    if (degenerate) {
        out.empty_flagged = true;
        return out;
    }
    BitGrid layer = boundary_layer(grid, region);
    std::vector<int> idx(grid.raxes() - 1);
    layer.for_each_set([&](std::int64_t row, int j) {
        if (static_cast<std::int64_t>(out.points.size()) >= max_points) {
            out.truncated = true;
            return;
        }
        grid.decode_row(row, idx.data());
        out.points.push_back(grid.point(idx.data(), j));
    });
    out.empty_flagged = out.points.empty();
    return out;
}

SampleCloud KernelResult::skeleton_cloud(std::int64_t max_points) const {
    SampleCloud out;
    out.resolution = grid.h;
    out.tag = CloudTag::Interior;
    if (degenerate) {
        out.empty_flagged = true;
        return out;
    }
    std::int64_t stride = std::max<std::int64_t>(1, cells / std::max<std::int64_t>(max_points, 1));
    std::int64_t seen = 0;
    std::vector<int> idx(grid.raxes() - 1);
    region.for_each_set([&](std::int64_t row, int j) {
        if (seen++ % stride) return;
        if (static_cast<std::int64_t>(out.points.size()) >= max_points) return;
        grid.decode_row(row, idx.data());
        out.points.push_back(grid.point(idx.data(), j));
    });
    return out;
}

KernelResult kernel_of_subsequence(const DomainSequence& seq, const std::vector<int>& indices,
                                   const RBox& box, double h, KernelOptions opt) {
    if (indices.empty()) throw input_error("kernel: empty index set");
    GridSpec g(box, h);

    // three live bit grids inside flood_fill plus the erosion output
    std::int64_t grid_bytes = (g.row_count() * ((g.n[g.last()] + 63) / 64)) * 8;
    if (4 * grid_bytes > opt.memory_cap)
        throw input_error("kernel: grid exceeds memory cap at this pitch; coarsen h");

    int cap_pos = (opt.n_cap >= 1)
                      ? opt.n_cap - 1
                      : std::max<int>(0, static_cast<int>(indices.size()) / 2 - 1);
    cap_pos = std::min<int>(cap_pos, static_cast<int>(indices.size()) - 1);

    std::vector<DomainPtr> tail;
    for (size_t i = cap_pos; i < indices.size(); ++i) tail.push_back(seq.at(indices[i]));
    const Domain* core = seq.eventual_core.get();

    KernelResult out;
    out.grid = g;

    std::vector<int> base_idx;
    int base_j = 0;
    if (!g.locate(seq.base_point, base_idx, base_j))
        throw input_error("kernel: base point outside the grid box");
    out.base_idx = base_idx;
    out.base_j = base_j;

    auto member_tail = [&](const CPoint& p) {
        if (core && core->member(p)) return true;
        for (const auto& w : tail)
            if (!w->member(p)) return false;
        return true;
    };

    CPoint scratch(std::vector<cplx>(g.cdim(), cplx(0, 0)));
    BitGrid comp1 = flood_fill(
        g,
        [&](const int* ridx, int j) {
            g.point_into(ridx, j, scratch);
            return member_tail(scratch);
        },
        base_idx, base_j);

    if (comp1.popcount() == 0) {
        out.degenerate = true;
        // distinguish the honest {0} marker from a grid artifact
        if (member_tail(seq.base_point)) {
            out.inconclusive = true;
            out.note = "base node not captured at this resolution";
        } else {
            out.note = "tail intersection empty at the base point";
        }
        out.region = BitGrid(g);
        return out;
    }

    BitGrid eroded = erode(g, comp1);
    std::int64_t base_row = g.encode_row(base_idx.data());
    if (!eroded.get(base_row, base_j)) {
        out.degenerate = true;
        out.region = BitGrid(g);
        if (eroded.popcount() > 0) {
            // base point sits on the boundary of the grid interior: the
            // definition gives no answer here, so report inconclusive
            out.inconclusive = true;
            out.note = "base node on the boundary of the eroded interior";
        } else {
            out.note = "interior empty after erosion";
        }
        return out;
    }

    out.region = flood_fill_bits(g, eroded, base_idx, base_j);
    out.cells = out.region.popcount();
    out.degenerate = (out.cells == 0);
    return out;
}

KernelResult kernel_of_sequence(const DomainSequence& seq, int n_max, const RBox& box, double h,
                                KernelOptions opt) {
    if (n_max < 1) throw input_error("kernel: n_max must be >= 1");
    std::vector<int> idx(n_max);
    for (int i = 0; i < n_max; ++i) idx[i] = i + 1;
    return kernel_of_subsequence(seq, idx, box, h, opt);
}

namespace {

double region_rho_bits(const GridSpec& g, const BitGrid& A, const BitGrid& B, double cap) {
    auto directed = [&](const BitGrid& X, const BitGrid& Y) -> double {
        double sup = 0;
        std::vector<int> idx(g.raxes() - 1);
        for (std::int64_t row = 0; row < X.rows(); ++row) {
            const std::uint64_t* rx = X.row_ptr(row);
            const std::uint64_t* ry = Y.row_ptr(row);
            for (std::int64_t w = 0; w < X.row_words(); ++w) {
                std::uint64_t diff = rx[w] & ~ry[w];
                while (diff) {
                    int bit = std::countr_zero(diff);
                    diff &= diff - 1;
                    g.decode_row(row, idx.data());
                    double dcell = ring_search(g, Y, idx, static_cast<int>(w * 64 + bit),
                                               std::max(cap, sup));
                    if (dcell == kInf) return kInf;
                    sup = std::max(sup, dcell);
                }
            }
        }
        return sup;
    };
    double hc = std::max(directed(A, B), directed(B, A));
    if (hc == kInf) return kInf;
    BitGrid ba = boundary_layer(g, A);
    BitGrid bb = boundary_layer(g, B);
    double hb = std::max(directed(ba, bb), directed(bb, ba));
    if (hb == kInf) return kInf;
    return hc + hb;
}

} // namespace

double region_rho_to_domain(const KernelResult& k, const Domain& d, double cap) {
    const GridSpec& g = k.grid;
    // discretize d with the kernel conventions (member nodes, one-cell
    // erosion, base-point component) and compare bit regions
    CPoint scratch(std::vector<cplx>(g.cdim(), cplx(0, 0)));
    BitGrid comp1 = flood_fill(
        g,
        [&](const int* ridx, int j) {
            g.point_into(ridx, j, scratch);
            return d.member(scratch);
        },
        k.base_idx, k.base_j);
    bool d_degenerate = comp1.popcount() == 0;
    BitGrid dreg(g);
    if (!d_degenerate) {
        BitGrid eroded = erode(g, comp1);
        std::int64_t base_row = g.encode_row(k.base_idx.data());
        if (!eroded.get(base_row, k.base_j))
            d_degenerate = true;
        else
            dreg = flood_fill_bits(g, eroded, k.base_idx, k.base_j);
    }
    if (k.degenerate && d_degenerate) return 0.0;
    if (k.degenerate || d_degenerate) return kInf;
    return region_rho_bits(g, k.region, dreg, cap);
}

double region_rho(const KernelResult& a, const KernelResult& b, double cap) {
    if (a.degenerate && b.degenerate) return 0.0;
    if (a.degenerate || b.degenerate) return kInf;
    if (a.grid.n != b.grid.n) throw input_error("region_rho: grids differ");
    return region_rho_bits(a.grid, a.region, b.region, cap);
}

ConvergenceReport check_kernel_convergence(const DomainSequence& seq, int subsequence_count,
                                           int n_max, const RBox& box, double h,
                                           std::uint64_t seed, KernelOptions opt) {
    ConvergenceReport rep;
    rep.tolerance = 2 * h;
    rep.full = kernel_of_sequence(seq, n_max, box, h, opt);

    std::vector<std::vector<int>> subs;
    std::vector<int> even, odd;
    for (int n = 1; n <= n_max; ++n) (n % 2 == 0 ? even : odd).push_back(n);
    subs.push_back(even);
    subs.push_back(odd);
    for (int s = 0; s < subsequence_count; ++s) {
        RngStream rng(seed, "kernel-subsequence", static_cast<std::uint64_t>(s));
        std::vector<int> pick;
        for (int n = 1; n <= n_max; ++n)
            if (rng.next_double() < 0.5) pick.push_back(n);
        if (static_cast<int>(pick.size()) < 2) pick = {1, n_max};
        subs.push_back(std::move(pick));
    }

    bool any_inconclusive = rep.full.inconclusive;
    for (size_t s = 0; s < subs.size(); ++s) {
        KernelResult k = kernel_of_subsequence(seq, subs[s], box, h, opt);
        any_inconclusive = any_inconclusive || k.inconclusive;
        double r;
        if (k.degenerate && rep.full.degenerate)
            r = 0.0;
        else if (k.degenerate != rep.full.degenerate)
            r = kInf;
        else
            r = region_rho(k, rep.full, 4 * rep.tolerance);
        rep.subseq_rho.push_back(r);
        if (!(r <= rep.tolerance)) {
            rep.verdict = ConvergenceVerdict::Fails;
            rep.witness = "subsequence " + std::to_string(s) + " kernel differs (rho=" +
                          (r == kInf ? std::string("inf") : std::to_string(r)) + ")";
            return rep;
        }
    }
    if (any_inconclusive) {
        rep.verdict = ConvergenceVerdict::Inconclusive;
        rep.witness = "grid artifacts while computing kernels";
        return rep;
    }
    rep.verdict = ConvergenceVerdict::Converges;
    return rep;
}

AbsorptionResult compact_absorption_index(const DomainSequence& seq, const SampleCloud& K,
                                          int n_max) {
    if (K.points.empty()) throw input_error("compact_absorption_index: empty compact");
    AbsorptionResult out;
    int n0 = -1;
    for (int n = n_max; n >= 1; --n) {
        DomainPtr w = seq.at(n);
        bool all_in = true;
        for (const CPoint& p : K.points)
            if (!w->member(p)) { all_in = false; break; }
        if (!all_in) break;
        n0 = n;
    }
    if (n0 < 0) return out;  // not absorbed by n_max
    out.absorbed = true;
    out.n0 = n0;
    return out;
}

} // namespace folmet::geo
