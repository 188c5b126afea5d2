#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "folmet/leaf.hpp"
#include "folmet/sequence.hpp"
#include "folmet/transversal.hpp"

using namespace folmet;
using fol::PolyVectorField;
using fol::SingularSet;

namespace {

CPoint pt2(double a, double b) { return CPoint({cplx(a, 0), cplx(b, 0)}); }
CPoint pt3(double a, double b, double c) {
    return CPoint({cplx(a, 0), cplx(b, 0), cplx(c, 0)});
}

} // namespace

TEST_CASE("field catalog recognition and serialization") {
    CHECK(PolyVectorField::radial(2).catalog() == PolyVectorField::Catalog::Radial);
    CHECK(PolyVectorField::diag_one_two().catalog() == PolyVectorField::Catalog::DiagOneTwo);
    CHECK(PolyVectorField::example_6_1().catalog() == PolyVectorField::Catalog::Ex61);
    CHECK(PolyVectorField::example_6_2().catalog() == PolyVectorField::Catalog::Ex62);
    CHECK(PolyVectorField::constant_dx(2).catalog() == PolyVectorField::Catalog::None);

    PolyVectorField X = PolyVectorField::example_6_2();
    cfg::Record r = X.to_config();
    PolyVectorField back = PolyVectorField::from_config(cfg::parse(cfg::serialize(r)));
    CHECK(back.catalog() == PolyVectorField::Catalog::Ex62);
}

TEST_CASE("singular sets of the catalog fields") {
    RBox box2 = RBox::centered({2, 2});
    RBox box3 = RBox::centered({2, 2, 2});

    SingularSet e1 = fol::singular_set(PolyVectorField::radial(2), box2, 0.25);
    CHECK(e1.templ == SingularSet::Template::OriginOnly);

    SingularSet e2 = fol::singular_set(PolyVectorField::example_6_2(), box3, 0.4);
    REQUIRE(e2.templ == SingularSet::Template::Axes);
    CHECK(e2.axes == std::vector<int>{0, 1, 2});

    SingularSet e3 = fol::singular_set(PolyVectorField::example_6_1(), box3, 0.4);
    REQUIRE(e3.templ == SingularSet::Template::Axes);
    CHECK(e3.axes == std::vector<int>{1, 2});

    SingularSet e4 = fol::singular_set(PolyVectorField::constant_dx(2), box2, 0.25);
    CHECK(e4.templ == SingularSet::Template::Empty);
    CHECK(e4.samples.empty());
}

TEST_CASE("numeric zeros satisfy the residual invariant") {
    RBox box = RBox::centered({2, 2});
    SingularSet e = fol::singular_set(PolyVectorField::diag_one_two(), box, 0.2);
    REQUIRE(e.templ == SingularSet::Template::OriginOnly);
    PolyVectorField X = PolyVectorField::diag_one_two();
    for (const CPoint& z : e.samples) CHECK(X.eval_norm(z) < 1e-12);
}

TEST_CASE("example 1.3 leaves") {
    geo::DomainSequence fam = geo::family_example_1_3();
    PolyVectorField X = PolyVectorField::radial(2);
    CPoint p = pt2(0.5, 0);

    fol::LeafModel LW = fol::leaf_through_catalog(X, p, fam.declared_kernel);
    CHECK(LW.omega.kind == planar::PlanarDomain::Kind::PuncturedDisc);
    CHECK(LW.omega.R == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(LW.q0 == cplx(0.5, 0));
    CHECK(LW.chart_point(LW.q0).dist_max(p) < 1e-14);

    fol::LeafModel Ln = fol::leaf_through_catalog(X, p, fam.at(5));
    CHECK(Ln.omega.kind == planar::PlanarDomain::Kind::PuncturedDisc);
    CHECK(Ln.omega.R == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("example 6.3 parabolic leaf") {
    // oracle: membership of the chart image in the polydisc pins the radius
    PolyVectorField X = PolyVectorField::diag_one_two();
    auto W = geo::Domain::polydisc(CPoint({cplx(0, 0), cplx(0, 0)}), {1, 1});
    CPoint p = pt2(0.5, 0.25);
    fol::LeafModel L = fol::leaf_through_catalog(X, p, W);
    CHECK(L.omega.kind == planar::PlanarDomain::Kind::PuncturedDisc);
    CHECK(L.omega.R == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(L.q0 == cplx(0.5, 0));
    // chart is (q, q^2) here since y0/x0^2 = 1
    CHECK(L.chart_point(cplx(0.3, 0)).dist_max(pt2(0.3, 0.09)) < 1e-14);
    // boundary witness: radius is cut by the first coordinate
    CHECK(W->member(L.chart_point(cplx(0.999, 0))));
    CHECK(!W->member(L.chart_point(cplx(1.001, 0))));
}

TEST_CASE("example 6.2 invariant-plane leaf carries the paper's chart") {
    PolyVectorField X = PolyVectorField::example_6_2();
    auto W = geo::Domain::polydisc(CPoint({cplx(0, 0), cplx(0, 0), cplx(0, 0)}), {1, 1, 1});
    CPoint p = pt3(0.7, 1.0 / 3, 0);
    fol::LeafModel L = fol::leaf_through_catalog(X, p, W);
    CHECK(L.omega.kind == planar::PlanarDomain::Kind::PuncturedDisc);
    CHECK(L.omega.R == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(L.chart_point(cplx(0.2, 0)).dist_max(pt3(0.2, 1.0 / 3, 0)) < 1e-14);
}

TEST_CASE("leaf models are immersed and stay inside the domain, off E") {
    geo::DomainSequence fam = geo::family_example_1_3();
    PolyVectorField X = PolyVectorField::radial(2);
    fol::LeafModel L = fol::leaf_through_catalog(X, pt2(0.5, 0), fam.at(3));
    fol::SingularSet E = fol::symbolic_singular_guess(X);
    for (int ir = 1; ir <= 10; ++ir)
        for (int ia = 0; ia < 12; ++ia) {
            cplx q = std::polar(L.omega.R * ir / 10.5, 2 * M_PI * ia / 12);
            CPoint img = L.chart_point(q);
            CHECK(fam.at(3)->member(img));
            CHECK(E.distance(img) > 1e-9);
            CHECK(L.chart_deriv_norm(q) > 0);
        }
}

TEST_CASE("errors: singular points and off-catalog positions") {
    PolyVectorField X61 = PolyVectorField::example_6_1();
    auto W3 = geo::Domain::polydisc(CPoint({cplx(0, 0), cplx(0, 0), cplx(0, 0)}), {1, 1, 1});
    CHECK_THROWS_AS(fol::leaf_through_catalog(X61, pt3(0, 0.5, 0), W3), math_error);
    CHECK_THROWS_AS(fol::leaf_through_catalog(X61, pt3(0.5, 0.3, 0.7), W3), math_error);
}

TEST_CASE("traced radial leaves are collinear with the origin") {
    // oracle: orbits of X(z) = z are lines through 0; the residual is the
    // norm of the component orthogonal to the initial direction
    PolyVectorField X = PolyVectorField::radial(2);
    auto U = geo::Domain::polydisc(CPoint({cplx(0, 0), cplx(0, 0)}), {5, 5});
    CPoint p = pt2(0.5, 0);
    fol::LeafModel T = fol::trace_leaf(X, p, U);
    REQUIRE(T.points.points.size() > 100);
    for (const CPoint& z : T.points.points) {
        cplx along = z.z[0];  // direction (1,0): the second coordinate must stay 0
        (void)along;
        CHECK(std::abs(z.z[1]) < 1e-9);
    }
}

TEST_CASE("traced 6.3 leaves satisfy the leaf equation") {
    PolyVectorField X = PolyVectorField::diag_one_two();
    auto U = geo::Domain::polydisc(CPoint({cplx(0, 0), cplx(0, 0)}), {5, 5});
    double x0 = 0.5, y0 = 0.25;
    fol::LeafModel T = fol::trace_leaf(X, pt2(x0, y0), U);
    REQUIRE(T.points.points.size() > 100);
    for (const CPoint& z : T.points.points)
        CHECK(std::abs(x0 * x0 * z.z[1] - y0 * z.z[0] * z.z[0]) < 1e-8);
}

TEST_CASE("constant field traces the x-axis segment") {
    PolyVectorField X = PolyVectorField::constant_dx(2);
    auto D = geo::Domain::polydisc(CPoint({cplx(0, 0), cplx(0, 0)}), {1, 1});
    fol::TraceOptions opt;
    opt.rays = 2;  // +x and -x complex time directions
    fol::LeafModel T = fol::trace_leaf(X, pt2(0, 0), D, opt);
    REQUIRE(!T.points.points.empty());
    for (const CPoint& z : T.points.points) {
        CHECK(std::abs(z.z[1]) < 1e-12);
        CHECK(std::abs(z.z[0]) < 1.0);
    }
}

TEST_CASE("transversal verdicts of the worked examples") {
    // 6.2 at (0.5,0,0): not transversal with witness e1
    {
        PolyVectorField X = PolyVectorField::example_6_2();
        fol::SingularSet E = fol::symbolic_singular_guess(X);
        auto r = fol::transversal_type_check(X, E, pt3(0.5, 0, 0), 0.1, 64, 1e-3, 7);
        CHECK(r.verdict == fol::TransversalVerdict::NotTransversal);
        REQUIRE(r.witness.size() == 3);
        std::vector<cplx> e1 = {cplx(1, 0), cplx(0, 0), cplx(0, 0)};
        CHECK(fol::projective_angle(r.witness, e1) < 1e-3);
    }
    // 6.1 on sampled E points near 0: transversal
    {
        PolyVectorField X = PolyVectorField::example_6_1();
        fol::SingularSet E = fol::symbolic_singular_guess(X);
        for (double t : {0.4, 0.15, -0.3}) {
            auto ry = fol::transversal_type_check(X, E, pt3(0, t, 0), 0.05, 64, 1e-3, 7);
            CHECK(ry.verdict == fol::TransversalVerdict::Transversal);
            auto rz = fol::transversal_type_check(X, E, pt3(0, 0, t), 0.05, 64, 1e-3, 7);
            CHECK(rz.verdict == fol::TransversalVerdict::Transversal);
        }
        auto r0 = fol::transversal_type_check(X, E, pt3(0, 0, 0), 0.05, 64, 1e-3, 7);
        CHECK(r0.verdict == fol::TransversalVerdict::Transversal);
    }
    // 6.3 at the origin: the cone of E = {0} is trivial
    {
        PolyVectorField X = PolyVectorField::diag_one_two();
        fol::SingularSet E = fol::symbolic_singular_guess(X);
        auto r = fol::transversal_type_check(X, E, pt2(0, 0), 0.1, 64, 1e-3, 7);
        CHECK(r.verdict == fol::TransversalVerdict::Transversal);
    }
}
