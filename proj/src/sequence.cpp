#include "folmet/sequence.hpp"

#include <cmath>

#include "folmet/rng.hpp"

namespace folmet::geo {

namespace {

CPoint origin(int dim) { return CPoint(std::vector<cplx>(dim, cplx(0, 0))); }

DomainPtr pd(int dim, std::vector<double> radii) {
    return Domain::polydisc(origin(dim), std::move(radii));
}

} // namespace

DomainSequence family_example_1_3() {
    DomainSequence s;
    s.name = "example_1_3";
    s.base_point = origin(2);
    s.declared_kernel = pd(2, {1, 1});
    s.eventual_core = s.declared_kernel;
    s.declared_F = "{(x,0) : 1 <= |x| < 2}";
    s.generator = [](int n) {
        return Domain::unite({pd(2, {1, 1}), pd(2, {2, 1.0 / n})});
    };
    return s;
}

DomainSequence family_example_6_1_domains() {
    DomainSequence s;
    s.name = "example_6_1";
    s.base_point = origin(3);
    s.declared_kernel = pd(3, {1, 1, 1});
    s.eventual_core = s.declared_kernel;
    s.declared_F = "{(0,y,0) : 1 < |y| < 2}";
    s.generator = [](int n) {
        return Domain::unite({pd(3, {1, 1, 1}), pd(3, {1.0 / n, 2, 1.0 / n})});
    };
    return s;
}

DomainSequence family_example_6_3_domains() {
    DomainSequence s;
    s.name = "example_6_3";
    s.base_point = origin(2);
    s.declared_kernel = pd(2, {1, 1});
    s.eventual_core = s.declared_kernel;
    s.declared_F = "{(x,x) : 1 < |x| < 3}";
    s.generator = [](int n) {
        CPoint a({cplx(-3, 0), cplx(-3, 0)});
        CPoint b({cplx(3, 0), cplx(3, 0)});
        return Domain::unite({pd(2, {1, 1}), Domain::tube(a, b, 1.0 / n)});
    };
    return s;
}

DomainSequence family_constant(DomainPtr d, CPoint base) {
    DomainSequence s;
    s.name = "constant";
    s.base_point = std::move(base);
    s.declared_kernel = d;
    s.eventual_core = d;
    s.generator = [d](int) { return d; };
    return s;
}

DomainSequence family_monotone_exhaustion(int dim) {
    DomainSequence s;
    s.name = "monotone_exhaustion";
    s.base_point = origin(dim);
    s.declared_kernel = pd(dim, std::vector<double>(dim, 1.0));
    s.generator = [dim](int n) {
        double r = std::max(1.0 - 1.0 / n, 0.02);
        return pd(dim, std::vector<double>(dim, r));
    };
    return s;
}

DomainSequence family_concentric_growing(int dim) {
    DomainSequence s;
    s.name = "concentric_growing";
    s.base_point = origin(dim);
    s.declared_kernel = pd(dim, std::vector<double>(dim, 1.0));
    s.eventual_core = s.declared_kernel;
    s.declared_F = "{}";
    s.generator = [dim](int n) {
        return pd(dim, std::vector<double>(dim, 1.0 + 1.0 / n));
    };
    return s;
}

DomainSequence family_alternating() {
    DomainSequence s;
    s.name = "alternating";
    s.base_point = origin(2);
    s.eventual_core = pd(2, {1, 1});
    s.generator = [](int n) {
        return (n % 2 == 0) ? pd(2, {1, 1}) : pd(2, {2, 2});
    };
    return s;
}

DomainSequence family_shrinking() {
    DomainSequence s;
    s.name = "shrinking";
    s.base_point = origin(2);
    s.generator = [](int n) { return pd(2, {1.0 / n, 1.0 / n}); };
    return s;
}

CPoint dense_defective_boundary_point(int j, std::uint64_t seed) {
    if (j < 1) throw input_error("dense_defective: j must be >= 1");
    if (j <= 8) {
        // real-direction fan: boundary points of P(0,(1,1)) with real coords
        double beta = (j - 1) * M_PI / 8.0;
        double c = std::cos(beta), sn = std::sin(beta);
        double m = std::max(std::abs(c), std::abs(sn));
        return CPoint({cplx(c / m, 0), cplx(sn / m, 0)});
    }
    // quasi-uniform fill of the boundary torus: pick the face |x_i| = 1 by
    // parity, Halton-like angles from the seeded stream of index j
    RngStream rng(seed, "dense-defective-boundary", static_cast<std::uint64_t>(j));
    double t1 = rng.next_double() * 2 * M_PI;
    double t2 = rng.next_double() * 2 * M_PI;
    double r = std::sqrt(rng.next_double());
    if (j % 2 == 0)
        return CPoint({std::polar(1.0, t1), std::polar(r, t2)});
    return CPoint({std::polar(r, t2), std::polar(1.0, t1)});
}

std::pair<int, int> dense_defective_jm(int n) {
    if (n < 1) throw input_error("dense_defective: n must be >= 1");
    // antidiagonals d = j + m = 2, 3, ...; direction alternates per diagonal:
    // (1,1); (1,2),(2,1); (3,1),(2,2),(1,3); (1,4),(2,3),(3,2),(4,1); ...
    int d = 2;
    int k = n;
    while (k > d - 1) {
        k -= d - 1;
        ++d;
    }
    // k-th entry (1-based) on diagonal d
    bool j_ascending = (d % 2 == 1);  // d=3: j = 1,2; d=4: j = 3,2,1
    int j = j_ascending ? k : (d - 1) - k + 1;
    return {j, d - j};
}

DomainSequence family_dense_defective(std::uint64_t seed) {
    DomainSequence s;
    s.name = "dense_defective";
    s.base_point = origin(2);
    s.declared_kernel = pd(2, {1, 1});
    s.eventual_core = s.declared_kernel;
    s.declared_F = "union over j of (L_j minus cl P(0,(1,1)))";
    s.generator = [seed](int n) {
        auto [j, m] = dense_defective_jm(n);
        CPoint q = dense_defective_boundary_point(j, seed);
        // complex line through 0 and q, long enough to cross U = P(0,(5,5))
        CPoint a({-5.0 * q.z[0], -5.0 * q.z[1]});
        CPoint b({5.0 * q.z[0], 5.0 * q.z[1]});
        return Domain::unite({pd(2, {1, 1}), Domain::tube(a, b, 1.0 / m)});
    };
    return s;
}

DomainSequence family_by_name(const std::string& name, std::uint64_t seed) {
    if (name == "example_1_3") return family_example_1_3();
    if (name == "example_6_1" || name == "example_6_2") return family_example_6_1_domains();
    if (name == "example_6_3") return family_example_6_3_domains();
    if (name == "monotone_exhaustion") return family_monotone_exhaustion(2);
    if (name == "concentric_growing") return family_concentric_growing(2);
    if (name == "concentric_growing_3") return family_concentric_growing(3);
    if (name == "alternating") return family_alternating();
    if (name == "shrinking") return family_shrinking();
    if (name == "dense_defective") return family_dense_defective(seed);
    throw input_error("unknown domain-sequence family '" + name + "'");
}

} // namespace folmet::geo
