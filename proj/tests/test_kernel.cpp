#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "folmet/kernel.hpp"
#include "folmet/sampling.hpp"

using namespace folmet;
using geo::Domain;

namespace {

CPoint zero2() { return CPoint({cplx(0, 0), cplx(0, 0)}); }

} // namespace

TEST_CASE("kernel of a constant sequence is the domain itself") {
    auto w = Domain::polydisc(zero2(), {1, 1});
    geo::DomainSequence seq = geo::family_constant(w, zero2());
    double h = 0.05;
    geo::KernelResult k = geo::kernel_of_sequence(seq, 16, RBox::centered({1.2, 1.2}), h);
    CHECK(!k.degenerate);
    CHECK(geo::region_rho_to_domain(k, *w, 8 * h) <= 2 * h);
}

TEST_CASE("example 1.3 kernel recovers P(0,(1,1))") {
    geo::DomainSequence seq = geo::family_example_1_3();
    double h = 0.04;
    geo::KernelResult k = geo::kernel_of_sequence(seq, 64, RBox::centered({2.1, 1.06}), h);
    CHECK(!k.degenerate);
    double rho = geo::region_rho_to_domain(k, *seq.declared_kernel, 8 * h);
    CHECK(rho <= 2 * h);
}

TEST_CASE("shrinking polydiscs degenerate to the {0} marker") {
    geo::DomainSequence seq = geo::family_shrinking();
    geo::KernelResult k = geo::kernel_of_sequence(seq, 64, RBox::centered({1.1, 1.1}), 0.05);
    CHECK(k.degenerate);
    CHECK(!k.inconclusive);  // the interior is honestly empty, not a grid artifact
}

TEST_CASE("monotone exhaustion converges to the union") {
    geo::DomainSequence seq = geo::family_monotone_exhaustion(2);
    double h = 0.05;
    geo::ConvergenceReport rep =
        geo::check_kernel_convergence(seq, 3, 64, RBox::centered({1.2, 1.2}), h, 99);
    CHECK(rep.verdict == geo::ConvergenceVerdict::Converges);
    double rho = geo::region_rho_to_domain(rep.full, *seq.declared_kernel, 8 * h);
    // truncated tails reach radius 1 - 1/n_cap; the tolerance reflects that
    CHECK(rho <= 2.0 / 32 + 4 * h);
}

TEST_CASE("alternating sequence fails kernel convergence") {
    geo::DomainSequence seq = geo::family_alternating();
    geo::ConvergenceReport rep =
        geo::check_kernel_convergence(seq, 3, 32, RBox::centered({2.2, 2.2}), 0.05, 7);
    CHECK(rep.verdict == geo::ConvergenceVerdict::Fails);
    CHECK(!rep.witness.empty());
}

TEST_CASE("subsequence kernels contain the full kernel") {
    // Def. 1.1: a subsequence intersects fewer sets, so its kernel region can
    // only grow. Checked cellwise on the alternating family.
    geo::DomainSequence seq = geo::family_alternating();
    RBox box = RBox::centered({2.2, 2.2});
    double h = 0.05;
    geo::KernelResult full = geo::kernel_of_sequence(seq, 32, box, h);
    std::vector<int> odd;
    for (int n = 1; n <= 32; n += 2) odd.push_back(n);
    geo::KernelResult sub = geo::kernel_of_subsequence(seq, odd, box, h);
    REQUIRE(full.region.words() == sub.region.words());
    for (std::int64_t w = 0; w < full.region.words(); ++w)
        REQUIRE((full.region.raw()[w] & ~sub.region.raw()[w]) == 0);
    CHECK(sub.cells > full.cells);
}

TEST_CASE("base point violations raise the sequence invariant error") {
    geo::DomainSequence seq = geo::family_example_1_3();
    seq.base_point = CPoint({cplx(3, 0), cplx(0, 0)});
    seq.eventual_core = nullptr;
    CHECK_THROWS_AS(geo::kernel_of_sequence(seq, 8, RBox::centered({2.2, 1.2}), 0.1),
                    math_error);
}

TEST_CASE("absorption indices") {
    geo::DomainSequence ex13 = geo::family_example_1_3();
    geo::SampleCloud K;
    K.resolution = 0.01;
    K.points.push_back(CPoint({cplx(0.5, 0), cplx(0, 0)}));
    auto r = geo::compact_absorption_index(ex13, K, 64);
    CHECK(r.absorbed);
    CHECK(r.n0 == 1);

    // closure cloud of P(0,(0.9,0.9)) against the exhaustion P(0,(1-1/n,...)):
    // first index with 1 - 1/n > 0.9 is n = 11
    geo::DomainSequence mono = geo::family_monotone_exhaustion(2);
    auto w9 = Domain::polydisc(zero2(), {0.9, 0.9});
    geo::SampleCloud K2 = geo::sample(*w9, RBox::centered({0.95, 0.95}), 0.15);
    // include an exact extreme point of the closure
    K2.points.push_back(CPoint({cplx(0.9, 0), cplx(0, 0)}));
    auto r2 = geo::compact_absorption_index(mono, K2, 64);
    CHECK(r2.absorbed);
    CHECK(r2.n0 == 11);

    geo::SampleCloud K3 = K;
    K3.points.push_back(CPoint({cplx(4, 0), cplx(0, 0)}));  // never absorbed
    auto r3 = geo::compact_absorption_index(ex13, K3, 32);
    CHECK(!r3.absorbed);
}

TEST_CASE("inconclusive when the base point sits on the interior boundary") {
    // W_n = P(0,(1,1)) shifted so the base point lies on the grid boundary of
    // the eroded interior: use a polydisc touching the base point
    geo::DomainSequence seq;
    seq.name = "touching";
    seq.base_point = CPoint({cplx(0.999, 0), cplx(0, 0)});
    auto w = Domain::polydisc(zero2(), {1, 1});
    seq.generator = [w](int) { return w; };
    geo::KernelResult k = geo::kernel_of_sequence(seq, 8, RBox::centered({1.1, 1.1}), 0.1);
    // the base node is member but erosion removes it at this resolution
    CHECK(k.degenerate);
    CHECK(k.inconclusive);
}
