#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "folmet/lab.hpp"

using namespace folmet;
using fol::PolyVectorField;

namespace {

CPoint pt2(double a, double b) { return CPoint({cplx(a, 0), cplx(b, 0)}); }

geo::DomainPtr U55() {
    return geo::Domain::polydisc(CPoint({cplx(0, 0), cplx(0, 0)}), {5, 5});
}

} // namespace

TEST_CASE("detect_F on example 1.3 recovers the escaping arm limit") {
    geo::DomainSequence fam = geo::family_example_1_3();
    double h = 0.02;
    lab::FDetection F =
        lab::detect_F(fam, fam.declared_kernel, RBox::centered({2.1, 1.06}), h, 96);
    REQUIRE(!F.samples.points.empty());
    // every sample within h of {(x,0): 1 <= |x| < 2}
    for (const CPoint& f : F.samples.points) {
        CHECK(std::abs(f.z[1]) <= h + 1e-12);
        double ax = std::abs(f.z[0]);
        CHECK(ax >= 1.0 - 1e-12);
        CHECK(ax <= 2.0 + h + 1e-12);
    }
    // and the set is h-dense along the arm: witnesses near several radii
    for (double r : {1.1, 1.5, 1.9}) {
        double best = 1e300;
        CPoint ref = pt2(r, 0);
        for (const CPoint& f : F.samples.points) best = std::min(best, f.dist_max(ref));
        CHECK(best <= 1.5 * h);
    }
}

TEST_CASE("Hausdorff-convergent families have empty F") {
    geo::DomainSequence fam = geo::family_concentric_growing(2);
    lab::FDetection F =
        lab::detect_F(fam, fam.declared_kernel, RBox::centered({2.2, 2.2}), 0.02, 96);
    CHECK(F.samples.points.empty());
    CHECK(F.samples.empty_flagged);
}

TEST_CASE("defective membership matches the 6.3 leaf geometry") {
    geo::DomainSequence fam = geo::family_example_6_3_domains();
    PolyVectorField X = PolyVectorField::diag_one_two();
    double h = 0.02;
    lab::FDetection F =
        lab::detect_F(fam, fam.declared_kernel, RBox::centered({3.3, 3.3}), h, 128);
    REQUIRE(!F.samples.points.empty());

    CHECK(lab::defective_membership(X, F, pt2(0.5, 0.2), U55(), h).value);
    CHECK(!lab::defective_membership(X, F, pt2(0.5, 0.3), U55(), h).value);

    lab::FDetection empty;
    CHECK(!lab::defective_membership(X, empty, pt2(0.5, 0.2), U55(), h).value);
}

TEST_CASE("removability: 6.3 singletons are removable, the 1.3 annulus is not") {
    double h = 0.02;
    {
        geo::DomainSequence fam = geo::family_example_6_3_domains();
        PolyVectorField X = PolyVectorField::diag_one_two();
        lab::FDetection F =
            lab::detect_F(fam, fam.declared_kernel, RBox::centered({3.3, 3.3}), h, 128);
        CHECK(lab::removability_check(X, F, pt2(0.5, 0.2), U55(), h) ==
              lab::Removability::Removable);
    }
    {
        geo::DomainSequence fam = geo::family_example_1_3();
        PolyVectorField X = PolyVectorField::radial(2);
        lab::FDetection F =
            lab::detect_F(fam, fam.declared_kernel, RBox::centered({2.1, 1.06}), h, 96);
        CHECK(lab::removability_check(X, F, pt2(0.5, 0), U55(), h) ==
              lab::Removability::NotRemovable);
    }
    {
        PolyVectorField X = PolyVectorField::radial(2);
        lab::FDetection empty;
        CHECK(lab::removability_check(X, empty, pt2(0.5, 0), U55(), h) ==
              lab::Removability::Removable);
    }
}

TEST_CASE("example 1.3 pointwise experiment shows the persistent gap") {
    lab::ExperimentSpec spec;
    spec.X = PolyVectorField::radial(2);
    spec.seq = geo::family_example_1_3();
    spec.U = U55();
    spec.points = {pt2(0.5, 0)};
    spec.schedule = {1, 2, 4, 8, 16, 32};
    spec.tol = 1e-6;

    lab::FDetection F =
        lab::detect_F(spec.seq, spec.seq.declared_kernel, RBox::centered({2.1, 1.06}), 0.02, 96);
    spec.F = &F;

    lab::ExperimentReport rep = lab::pointwise_convergence_experiment(spec);
    REQUIRE(rep.rows.size() == spec.schedule.size());
    const double gap_expected = std::log(16.0) / 4 - std::log(4.0) / 4;
    for (const auto& r : rep.rows) {
        CHECK(r.in_S);
        CHECK(!r.in_E);
        CHECK(r.exact_pair);
        CHECK(std::abs(r.gap - gap_expected) < 1e-9);
    }
    // the S-point gap is reported separately: it must not fail the verdicts
    CHECK(rep.pointwise_ok);
    CHECK(rep.liminf_ok);  // eta_n = log16/4 > eta_W always
}

TEST_CASE("monotone exhaustion: eta_n increases to eta_W") {
    lab::ExperimentSpec spec;
    spec.X = PolyVectorField::radial(2);
    spec.seq = geo::family_monotone_exhaustion(2);
    spec.U = U55();
    spec.points = {pt2(0.5, 0)};
    spec.schedule = {4, 8, 16, 32, 64, 128, 256, 512};
    spec.tol = 5e-3;
    lab::ExperimentReport rep = lab::pointwise_convergence_experiment(spec);
    double prev = 0;
    for (const auto& r : rep.rows) {
        REQUIRE(r.exact_pair);
        CHECK(*r.eta_n.exact >= prev - 1e-15);
        CHECK(*r.eta_n.exact <= *r.eta_W.exact + 1e-15);
        prev = *r.eta_n.exact;
    }
    CHECK(rep.pointwise_ok);
    CHECK(rep.liminf_ok);
}

TEST_CASE("uniform experiment rejects K meeting S or E") {
    lab::ExperimentSpec spec;
    spec.X = PolyVectorField::radial(2);
    spec.seq = geo::family_example_1_3();
    spec.U = U55();
    spec.schedule = {2, 4};
    lab::FDetection F =
        lab::detect_F(spec.seq, spec.seq.declared_kernel, RBox::centered({2.1, 1.06}), 0.02, 96);
    spec.F = &F;
    spec.points = {pt2(0.5, 0)};  // defective point
    CHECK_THROWS_AS(lab::uniform_convergence_experiment(spec), math_error);
    spec.points = {pt2(0, 0)};  // singular point
    CHECK_THROWS_AS(lab::uniform_convergence_experiment(spec), math_error);
}

TEST_CASE("hausdorff to kernel stages") {
    double h = 0.04;
    {
        geo::DomainSequence fam = geo::family_concentric_growing(2);
        auto rep = lab::hausdorff_to_kernel_check(fam, RBox::centered({2.2, 2.2}), h,
                                                  {1, 2, 4, 8, 16, 32, 64}, 64);
        CHECK(rep.first_fail_stage == 0);
        CHECK(rep.rho_converges);
        CHECK(rep.kernel_matches);
        CHECK(rep.f_empty);
        // oracle: rho(W_n, W) = 2/n exactly for the concentric family
        for (auto [n, r] : rep.rho_series) CHECK(std::abs(r - 2.0 / n) <= 4 * h);
    }
}

TEST_CASE("hausdorff to kernel: example 1.3 fails at stage one") {
    geo::DomainSequence fam = geo::family_example_1_3();
    auto rep = lab::hausdorff_to_kernel_check(fam, RBox::centered({2.2, 1.2}), 0.04,
                                              {1, 2, 4, 8, 16}, 32);
    CHECK(rep.first_fail_stage == 1);
    CHECK(!rep.rho_converges);
}

TEST_CASE("hausdorff to kernel: constant sequences pass trivially") {
    auto w = geo::Domain::polydisc(CPoint({cplx(0, 0), cplx(0, 0)}), {1, 1});
    geo::DomainSequence fam = geo::family_constant(w, CPoint({cplx(0, 0), cplx(0, 0)}));
    auto rep =
        lab::hausdorff_to_kernel_check(fam, RBox::centered({1.2, 1.2}), 0.05, {1, 2, 4}, 16);
    CHECK(rep.first_fail_stage == 0);
}

TEST_CASE("dense defective: one line saturates onto itself") {
    // with j_max = 1 the S samples stay near the single line L_1
    lab::DenseDefectiveReport rep = lab::dense_defective_experiment(1, 6, 5, 0.08, 0.25, 5);
    REQUIRE(!rep.S_samples.points.empty());
    CPoint q1 = geo::dense_defective_boundary_point(1, 5);
    for (const CPoint& s : rep.S_samples.points) {
        // distance to the line through q1
        double qn2 = std::norm(q1.z[0]) + std::norm(q1.z[1]);
        cplx ip = s.z[0] * std::conj(q1.z[0]) + s.z[1] * std::conj(q1.z[1]);
        double g2 = std::norm(s.z[0]) + std::norm(s.z[1]);
        double d = std::sqrt(std::max(0.0, g2 - std::norm(ip) / qn2));
        CHECK(d <= 0.3);  // line thickness at the coarse detection pitch
    }
}

TEST_CASE("dense defective coverage at the stated scale") {
    lab::DenseDefectiveReport rep = lab::dense_defective_experiment(8, 8, 5, 0.08, 0.25, 9);
    CHECK(rep.covered);
    CHECK(rep.oracle_max_line_distance <= 0.25);
}
