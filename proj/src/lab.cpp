#include "folmet/lab.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "folmet/sampling.hpp"

namespace folmet::lab {

using fol::PolyVectorField;
using geo::Domain;
using geo::GridSpec;

namespace {

struct NodeKey {
    std::int64_t row;
    int j;
    bool operator==(const NodeKey& o) const { return row == o.row && j == o.j; }
};

struct NodeKeyHash {
    size_t operator()(const NodeKey& k) const {
        return std::hash<std::int64_t>()(k.row * 131071 + k.j);
    }
};

struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(int n) : up(n) {
        for (int i = 0; i < n; ++i) up[i] = i;
    }
    int find(int a) {
        while (up[a] != a) a = up[a] = up[up[a]];
        return a;
    }
    void join(int a, int b) { up[find(a)] = find(b); }
};

std::string point_str(const CPoint& p) {
    std::string s = "(";
    for (int i = 0; i < p.dim(); ++i) {
        if (i) s += ", ";
        s += fmt_cplx(p.z[i]);
    }
    return s + ")";
}

} // namespace

FDetection detect_F(const DomainSequence& seq, DomainPtr W, const RBox& box, double h,
                    int n_max, FDetectOptions opt) {
    FDetection out;
    out.samples.resolution = h;
    out.samples.tag = geo::CloudTag::Generic;

    GridSpec g(box, h);

    std::vector<int> indices = opt.indices;
    if (indices.empty())
        for (int n = 1; n <= n_max; ++n) indices.push_back(n);
    std::vector<int> tail(indices.begin() + indices.size() / 2, indices.end());
    out.tested_indices = tail;

    std::vector<int> probes;
    {
        int count = std::min<int>(opt.probe_count, static_cast<int>(tail.size()));
        for (int i = 0; i < count; ++i)
            probes.push_back(tail[(tail.size() - 1) * i / std::max<size_t>(1, count - 1)]);
    }

    std::unordered_set<NodeKey, NodeKeyHash> seen;
    std::vector<CPoint> candidates;
    std::vector<int> vidx(g.raxes() - 1);
    int vj = 0;
    for (int n : probes) {
        DomainPtr wn = seq.at(n);
        geo::for_each_node(*wn, W.get(), box, h, opt.budget, [&](const CPoint& p) {
            if (!g.locate(p, vidx, vj)) return;
            NodeKey key{g.encode_row(vidx.data()), vj};
            if (seen.insert(key).second) candidates.push_back(p);
        });
    }

    // persistence over the tested tail: candidates are outside cl(W) already,
    // so only membership in W_n varies
    std::vector<DomainPtr> ws;
    for (int n : tail) ws.push_back(seq.at(n));
    const double need = opt.persistence * static_cast<double>(tail.size());
    std::vector<char> keep(candidates.size(), 0);
    const std::int64_t nc = static_cast<std::int64_t>(candidates.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 256)
#endif
    for (std::int64_t i = 0; i < nc; ++i) {
        int hits = 0;
        for (const auto& wn : ws)
            if (wn->member(candidates[i])) ++hits;
        keep[i] = (hits >= need) ? 1 : 0;
    }
    for (std::int64_t i = 0; i < nc; ++i)
        if (keep[i]) out.samples.points.push_back(candidates[i]);
    out.samples.empty_flagged = out.samples.points.empty();

    // cluster at radius 2h
    int m = static_cast<int>(out.samples.points.size());
    UnionFind uf(m);
    for (int i = 0; i < m; ++i)
        for (int k = i + 1; k < m; ++k)
            if (out.samples.points[i].dist_max(out.samples.points[k]) <= 2 * h) uf.join(i, k);
    out.cluster_of.assign(m, -1);
    std::unordered_map<int, int> remap;
    for (int i = 0; i < m; ++i) {
        int r = uf.find(i);
        auto it = remap.find(r);
        if (it == remap.end()) it = remap.emplace(r, static_cast<int>(remap.size())).first;
        out.cluster_of[i] = it->second;
    }
    out.cluster_count = static_cast<int>(remap.size());
    return out;
}

namespace {

/// nearest leaf parameter and ambient max-metric distance from f to the
/// catalog leaf through p; nullopt when the field/point has no catalog chart
std::optional<std::pair<cplx, double>> leaf_nearest(const fol::LeafModel& L, const CPoint& f) {
    double R = (L.omega.kind == planar::PlanarDomain::Kind::Sampled) ? 1.0 : L.omega.R;

    // Gauss-Newton for min |chart(q) - f|^2 (charts are holomorphic in q)
    auto gn_num_den = [&](cplx q) {
        std::vector<cplx> v = L.chart(q);
        std::vector<cplx> d = L.chart_deriv(q);
        cplx num(0, 0);
        double den = 0;
        for (size_t i = 0; i < v.size(); ++i) {
            num += (v[i] - f.z[i]) * std::conj(d[i]);
            den += std::norm(d[i]);
        }
        return std::pair<cplx, double>(num, den);
    };

    // seeds: the base parameter plus the inverse of a linear chart coordinate
    std::vector<cplx> seeds = {L.q0};
    {
        double probe = 0.7 * std::min(1.0, R);
        std::vector<cplx> at1 = L.chart(cplx(probe, 0));
        std::vector<cplx> at2 = L.chart(cplx(probe / 2, 0));
        for (size_t i = 0; i < at1.size(); ++i) {
            if (!std::isfinite(std::abs(at1[i])) || !std::isfinite(std::abs(at2[i]))) continue;
            cplx slope = at1[i] - at2[i];
            if (std::abs(slope) < 1e-14) continue;
            // linear coordinate iff chart_i(probe) = 2 chart_i(probe/2) - chart_i(0)
            cplx lin_check = at1[i] - 2.0 * at2[i];
            std::vector<cplx> at0 = L.chart(cplx(0, 0));
            if (std::abs(lin_check + at0[i]) < 1e-9 * std::max(1.0, std::abs(at1[i]))) {
                cplx a = (at1[i] - at0[i]) / probe;
                if (std::abs(a) > 1e-14) seeds.push_back((f.z[i] - at0[i]) / a);
                break;
            }
        }
    }

    cplx best_q = L.q0;
    double best_d = std::numeric_limits<double>::infinity();
    for (cplx q : seeds) {
        if (!std::isfinite(q.real()) || !std::isfinite(q.imag())) continue;
        for (int it = 0; it < 40; ++it) {
            auto [num, den] = gn_num_den(q);
            if (den < 1e-30) break;
            cplx step = num / den;
            q -= step;
            if (std::abs(step) < 1e-14) break;
        }
        if (std::abs(q) >= R) q *= (R * (1 - 1e-9)) / std::abs(q);
        if (L.omega.kind == planar::PlanarDomain::Kind::PuncturedDisc && std::abs(q) < 1e-12)
            q = cplx(1e-12, 0);
        CPoint on_leaf(L.chart(q));
        double d = on_leaf.dist_max(f);
        if (d < best_d) {
            best_d = d;
            best_q = q;
        }
    }
    if (!std::isfinite(best_d)) return std::nullopt;
    return std::make_pair(best_q, best_d);
}

std::optional<fol::LeafModel> try_catalog_leaf(const PolyVectorField& X, const CPoint& p,
                                               DomainPtr U) {
    try {
        return fol::leaf_through_catalog(X, p, U);
    } catch (const math_error&) {
        return std::nullopt;
    }
}

} // namespace

DefectiveAnswer defective_membership(const PolyVectorField& X, const FDetection& F,
                                     const CPoint& p, DomainPtr U, double h) {
    DefectiveAnswer ans;
    if (F.samples.points.empty()) return ans;  // empty union of leaves

    if (auto L = try_catalog_leaf(X, p, U)) {
        for (const CPoint& f : F.samples.points) {
            auto near = leaf_nearest(*L, f);
            if (near && near->second <= 1.2 * h) {
                ans.value = true;
                return ans;
            }
        }
        return ans;
    }

    // traced fallback, flagged lower-confidence when truncated
    fol::LeafModel T = fol::trace_leaf(X, p, U);
    for (const CPoint& f : F.samples.points)
        for (const CPoint& t : T.points.points)
            if (t.dist_max(f) <= 2 * h) {
                ans.value = true;
                ans.confident = !T.truncated;
                return ans;
            }
    ans.confident = !T.truncated;
    return ans;
}

Removability removability_check(const PolyVectorField& X, const FDetection& F, const CPoint& p,
                                DomainPtr U, double h) {
    if (F.samples.points.empty()) return Removability::Removable;  // vacuous

    auto L = try_catalog_leaf(X, p, U);
    if (!L) return Removability::Inconclusive;

    // F-cloud points on the leaf; the cloud is h-dense in F, so genuine
    // intersection points sit within ~0.75h of a sample
    const double on_leaf_tol = 0.75 * h;
    std::vector<CPoint> on_leaf;
    std::vector<cplx> params;
    for (const CPoint& f : F.samples.points) {
        auto near = leaf_nearest(*L, f);
        if (near && near->second <= on_leaf_tol) {
            on_leaf.push_back(f);
            params.push_back(near->first);
        }
    }
    if (on_leaf.empty()) return Removability::Removable;

    int m = static_cast<int>(on_leaf.size());
    UnionFind uf(m);
    for (int i = 0; i < m; ++i)
        for (int k = i + 1; k < m; ++k)
            if (on_leaf[i].dist_max(on_leaf[k]) <= 2.5 * h) uf.join(i, k);
    std::unordered_map<int, std::vector<int>> clusters;
    for (int i = 0; i < m; ++i) clusters[uf.find(i)].push_back(i);

    // rasterize each cluster's leaf parameters at the chart-scaled pitch;
    // surviving k-fold erosion means the cluster contains a leafwise disc of
    // radius about k*h, the computational reading of int(L_p cap F) != empty
    bool all_pointlike = true;
    for (const auto& [root, members] : clusters) {
        double diam = 0;
        for (size_t a2 = 0; a2 < members.size(); ++a2)
            for (size_t b2 = a2 + 1; b2 < members.size(); ++b2)
                diam = std::max(diam, on_leaf[members[a2]].dist_max(on_leaf[members[b2]]));
        if (diam <= 2 * h) continue;  // point-like

        cplx qc(0, 0);
        for (int i : members) qc += params[i];
        qc /= static_cast<double>(members.size());
        double scale = std::max(L->chart_deriv_norm(qc), 1e-9);
        double hq = h / scale;
        double qlo_re = 1e300, qhi_re = -1e300, qlo_im = 1e300, qhi_im = -1e300;
        for (int i : members) {
            qlo_re = std::min(qlo_re, params[i].real());
            qhi_re = std::max(qhi_re, params[i].real());
            qlo_im = std::min(qlo_im, params[i].imag());
            qhi_im = std::max(qhi_im, params[i].imag());
        }
        int nx = static_cast<int>((qhi_re - qlo_re) / hq) + 3;
        int ny = static_cast<int>((qhi_im - qlo_im) / hq) + 3;
        if (static_cast<std::int64_t>(nx) * ny > 64'000'000) return Removability::Inconclusive;
        std::vector<char> bmp(static_cast<size_t>(nx) * ny, 0);
        for (int i : members) {
            int ix = static_cast<int>(std::lround((params[i].real() - qlo_re) / hq)) + 1;
            int iy = static_cast<int>(std::lround((params[i].imag() - qlo_im) / hq)) + 1;
            ix = std::min(std::max(ix, 0), nx - 1);
            iy = std::min(std::max(iy, 0), ny - 1);
            bmp[static_cast<size_t>(iy) * nx + ix] = 1;
        }
        auto erode_n = [&](int times) {
            std::vector<char> cur = bmp;
            for (int e = 0; e < times; ++e) {
                std::vector<char> nb(cur.size(), 0);
                for (int y = 1; y + 1 < ny; ++y)
                    for (int x = 1; x + 1 < nx; ++x) {
                        size_t at = static_cast<size_t>(y) * nx + x;
                        nb[at] =
                            cur[at] && cur[at - 1] && cur[at + 1] && cur[at - nx] && cur[at + nx];
                    }
                cur.swap(nb);
            }
            for (char c : cur)
                if (c) return true;
            return false;
        };
        if (erode_n(4)) return Removability::NotRemovable;
        if (erode_n(2)) {
            all_pointlike = false;  // thicker than the resolution floor, thinner than 4h
            continue;
        }
        // no leafwise disc of radius 2h: empty interior at this resolution
    }
    return all_pointlike ? Removability::Removable : Removability::Inconclusive;
}

void ExperimentReport::recompute_verdicts() {
    pointwise_ok = true;
    uniform_ok = true;
    liminf_ok = true;
    if (rows.empty() || schedule.empty()) return;
    int n_last = schedule.back();

    std::map<std::string, std::vector<const ExperimentRow*>> per_point;
    for (const auto& r : rows) per_point[point_str(r.p)].push_back(&r);

    double supg = 0;
    for (auto& [key, rs] : per_point) {
        const ExperimentRow* base = rs.front();
        double w_val = base->eta_W.exact ? *base->eta_W.exact : base->eta_W.lower;
        double tail_min = std::numeric_limits<double>::infinity();
        for (const auto* r : rs) {
            if (2 * r->n < n_last) continue;
            double v = r->eta_n.exact ? *r->eta_n.exact : r->eta_n.lower;
            tail_min = std::min(tail_min, v);
        }
        if (!base->in_E && tail_min < w_val - tol) liminf_ok = false;

        for (const auto* r : rs) {
            if (r->n != n_last || r->in_S || r->in_E) continue;
            if (r->exact_pair) {
                if (!(r->gap < tol)) pointwise_ok = false;
                supg = std::max(supg, r->gap);
            } else {
                double width = r->eta_n.upper - r->eta_n.lower;
                double rel = width / std::max(r->eta_n.upper, 1e-12);
                if (r->starved || !(rel < 0.05)) pointwise_ok = false;
            }
        }
    }
    sup_gap_final = supg;
    uniform_ok = pointwise_ok && (supg < tol);
}

namespace {

ExperimentReport run_experiment(const ExperimentSpec& spec, const char* name) {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.name = name;
    rep.schedule = spec.schedule;
    rep.tol = spec.tol;

    DomainPtr W = spec.W ? spec.W : spec.seq.declared_kernel;
    if (!W) throw input_error("experiment: no limit domain (W) available");

    fol::SingularSet E = fol::symbolic_singular_guess(spec.X);

    for (const CPoint& p : spec.points) {
        bool in_E = E.has_template() && E.contains(p, 1e-12);
        bool in_S = false;
        if (!in_E && spec.F != nullptr && spec.U)
            in_S = defective_membership(spec.X, *spec.F, p, spec.U, spec.h).value;

        eta::EtaEstimate ew = in_E ? eta::eta_on_E(E, p)
                                   : eta::eta_evaluate(spec.X, p, W, spec.budget, spec.seed);
        for (int n : spec.schedule) {
            ExperimentRow row;
            row.p = p;
            row.n = n;
            row.in_E = in_E;
            row.in_S = in_S;
            row.eta_W = ew;
            row.eta_n = in_E ? eta::eta_on_E(E, p)
                             : eta::eta_evaluate(spec.X, p, spec.seq.at(n), spec.budget,
                                                 spec.seed);
            row.exact_pair = row.eta_n.exact.has_value() && row.eta_W.exact.has_value();
            if (row.exact_pair) row.gap = std::abs(*row.eta_n.exact - *row.eta_W.exact);
            row.starved = row.eta_n.starved;
            rep.rows.push_back(std::move(row));
        }
    }
    rep.recompute_verdicts();
    rep.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace

ExperimentReport pointwise_convergence_experiment(const ExperimentSpec& spec) {
    return run_experiment(spec, "pointwise_convergence");
}

ExperimentReport uniform_convergence_experiment(const ExperimentSpec& spec, bool allow_E_in_K) {
    fol::SingularSet E = fol::symbolic_singular_guess(spec.X);
    std::string offenders;
    for (const CPoint& p : spec.points) {
        if (!allow_E_in_K && E.has_template() && E.contains(p, 1e-12))
            offenders += " E:" + point_str(p);
        else if (spec.F != nullptr && spec.U &&
                 defective_membership(spec.X, *spec.F, p, spec.U, spec.h).value)
            offenders += " S:" + point_str(p);
    }
    if (!offenders.empty())
        throw math_error("uniform_convergence_experiment: K meets S or E at" + offenders);
    return run_experiment(spec, "uniform_convergence");
}

HausdorffKernelReport hausdorff_to_kernel_check(const DomainSequence& seq, const RBox& box,
                                                double h, const std::vector<int>& schedule,
                                                int n_max) {
    if (!seq.declared_kernel) throw input_error("hausdorff_to_kernel_check: declared limit needed");
    HausdorffKernelReport rep;

    for (int n : schedule) {
        double r = geo::rho_distance(*seq.at(n), *seq.declared_kernel, box, h);
        rep.rho_series.emplace_back(n, r);
    }
    double rho_first = rep.rho_series.front().second;
    double rho_last = rep.rho_series.back().second;
    rep.rho_converges = (rho_last <= 6 * h) && (rho_last <= 0.5 * rho_first + 2 * h);
    if (!rep.rho_converges) {
        rep.first_fail_stage = 1;
        return rep;
    }

    geo::KernelResult k = geo::kernel_of_sequence(seq, n_max, box, h);
    rep.kernel_rho = geo::region_rho_to_domain(k, *seq.declared_kernel, 8 * h);
    rep.kernel_matches = (rep.kernel_rho <= 2 * h);
    if (!rep.kernel_matches) {
        rep.first_fail_stage = 2;
        return rep;
    }

    FDetection f = detect_F(seq, seq.declared_kernel, box, h, n_max);
    rep.f_empty = f.samples.points.empty();
    if (!rep.f_empty) {
        rep.first_fail_stage = 3;
        return rep;
    }
    rep.first_fail_stage = 0;
    return rep;
}

DenseDefectiveReport dense_defective_experiment(int j_max, int m_max, std::uint64_t seed,
                                                double h, double ball_radius, int grid_side) {
    DenseDefectiveReport rep;
    rep.ball_radius = ball_radius;

    DomainSequence seq = geo::family_dense_defective(seed);
    DomainPtr W = seq.declared_kernel;

    // per-j subsequences of the boustrophedon enumeration (Def. 1.4 allows
    // exactly this); collect the detected escape samples of each
    int n_hull = 1;
    while (true) {
        auto [j, mm] = geo::dense_defective_jm(n_hull);
        if (j + mm > j_max + m_max) break;
        ++n_hull;
    }
    std::vector<CPoint> f_all;
    RBox box = RBox::centered({5.2, 5.2});
    for (int j = 1; j <= j_max; ++j) {
        FDetectOptions opt;
        opt.budget = 3'000'000;
        for (int n = 1; n <= n_hull; ++n) {
            auto [jj, mm] = geo::dense_defective_jm(n);
            if (jj == j && mm <= m_max) opt.indices.push_back(n);
        }
        if (opt.indices.size() < 2) continue;
        FDetection fj = detect_F(seq, W, box, h, n_hull, opt);
        for (const CPoint& f : fj.samples.points) f_all.push_back(f);
    }

    // S samples: saturate the detected escape points through the radial
    // foliation (leaf of f = the complex line through 0 and f), clipped to W
    rep.S_samples.resolution = h;
    rep.S_samples.tag = geo::CloudTag::Generic;
    {
        // thin the F list for the exported cloud
        size_t stride = std::max<size_t>(1, f_all.size() / 4000);
        for (size_t i = 0; i < f_all.size(); i += stride) {
            const CPoint& f = f_all[i];
            double fn = std::max(std::abs(f.z[0]), std::abs(f.z[1]));
            double R = 1.0 / fn;  // |zeta| < R keeps zeta*f inside P(0,(1,1))
            for (int ir = 1; ir <= 6; ++ir)
                for (int ia = 0; ia < 16; ++ia) {
                    cplx zeta = std::polar(R * ir / 6.5, 2 * M_PI * ia / 16);
                    rep.S_samples.points.push_back(CPoint({zeta * f.z[0], zeta * f.z[1]}));
                }
        }
    }

    // fixed planar test grid in the real-real slice of W
    double span = 0.6;
    for (int a = 0; a < grid_side; ++a)
        for (int b = 0; b < grid_side; ++b) {
            double s = -span + 2 * span * a / (grid_side - 1);
            double t = -span + 2 * span * b / (grid_side - 1);
            rep.test_grid.push_back(CPoint({cplx(s, 0), cplx(t, 0)}));
        }

    rep.covered = !f_all.empty();
    double worst_oracle = 0;
    for (const CPoint& gpt : rep.test_grid) {
        // pipeline distance: nearest point of any saturated leaf L_f cap W
        double best = std::numeric_limits<double>::infinity();
        for (const CPoint& f : f_all) {
            double fn2 = std::norm(f.z[0]) + std::norm(f.z[1]);
            cplx zeta = (gpt.z[0] * std::conj(f.z[0]) + gpt.z[1] * std::conj(f.z[1])) / fn2;
            CPoint proj({zeta * f.z[0], zeta * f.z[1]});
            if (std::max(std::abs(proj.z[0]), std::abs(proj.z[1])) >= 1.0) continue;
            best = std::min(best, gpt.dist_max(proj));
        }
        rep.grid_distance.push_back(best);
        if (!(best <= ball_radius)) rep.covered = false;

        // oracle: exact Euclidean distance to the union of the true lines
        double oracle = std::numeric_limits<double>::infinity();
        for (int j = 1; j <= j_max; ++j) {
            CPoint q = geo::dense_defective_boundary_point(j, seed);
            double qn2 = std::norm(q.z[0]) + std::norm(q.z[1]);
            cplx ip = gpt.z[0] * std::conj(q.z[0]) + gpt.z[1] * std::conj(q.z[1]);
            double g2 = std::norm(gpt.z[0]) + std::norm(gpt.z[1]);
            oracle = std::min(oracle, std::sqrt(std::max(0.0, g2 - std::norm(ip) / qn2)));
        }
        worst_oracle = std::max(worst_oracle, oracle);
    }
    rep.oracle_max_line_distance = worst_oracle;
    return rep;
}

} // namespace folmet::lab
