#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "folmet/planar.hpp"

using namespace folmet;
using namespace folmet::planar;

TEST_CASE("disc density values") {
    CHECK(density_disc(cplx(0, 0), 1).value == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(density_disc(cplx(0, 0), 2).value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(density_disc(cplx(0.5, 0), 1).value == doctest::Approx(8.0 / 3).epsilon(1e-15));
    CHECK_THROWS_AS(density_disc(cplx(1, 0), 1), math_error);
}

TEST_CASE("punctured disc density values from the worked example") {
    CHECK(density_punctured_disc(cplx(0.5, 0), 1).value ==
          doctest::Approx(2.0 / (0.5 * std::log(4.0))).epsilon(1e-15));
    CHECK(density_punctured_disc(cplx(0.5, 0), 1).value ==
          doctest::Approx(2.885390081777927).epsilon(1e-12));
    CHECK(density_punctured_disc(cplx(0.5, 0), 2).value ==
          doctest::Approx(2.0 / (0.5 * std::log(16.0))).epsilon(1e-15));
    CHECK(density_punctured_disc(cplx(0.5, 0), 2).value ==
          doctest::Approx(1.4426950408889634).epsilon(1e-12));
    CHECK_THROWS_AS(density_punctured_disc(cplx(0, 0), 1), math_error);
    CHECK_THROWS_AS(density_punctured_disc(cplx(1, 0), 1), math_error);
}

TEST_CASE("density blows up monotonically at the puncture") {
    double prev = 0;
    for (int k = 2; k <= 30; ++k) {
        double v = density_punctured_disc(cplx(std::pow(2.0, -k), 0), 1).value;
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("scaling law of the punctured disc density") {
    for (double R : {0.5, 1.0, 2.0, 7.0})
        for (double a : {0.1, 0.35, 0.8}) {
            cplx q(a * R / 1.3, a * R / 2.9);
            double lhs = density_punctured_disc(q, R).value;
            double rhs = density_punctured_disc(q / R, 1.0).value / R;
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
}

TEST_CASE("rotation invariance of the catalog densities") {
    for (double ang : {0.3, 1.1, 2.9}) {
        cplx q = std::polar(0.6, ang);
        CHECK(density_disc(q, 1).value == doctest::Approx(density_disc(cplx(0.6, 0), 1).value));
        CHECK(density_punctured_disc(q, 1).value ==
              doctest::Approx(density_punctured_disc(cplx(0.6, 0), 1).value));
        CHECK(density_annulus(q, 0.2, 1).value ==
              doctest::Approx(density_annulus(cplx(0.6, 0), 0.2, 1).value));
    }
}

TEST_CASE("annulus reflection symmetry and the core circle") {
    // reflection q -> rR/conj(q) is an isometry; pointwise it reads
    // lambda(rR/|q|) rR/|q|^2 = lambda(|q|), and the invariant profile
    // lambda(q)|q| is minimal exactly on |q| = sqrt(rR)
    double r = 0.25, R = 1.0;
    double mid = std::sqrt(r * R);
    for (double a : {0.3, 0.45, 0.6, 0.9}) {
        double lhs = density_annulus(cplx(r * R / a, 0), r, R).value * r * R / (a * a);
        double rhs = density_annulus(cplx(a, 0), r, R).value;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
    double at_mid = density_annulus(cplx(mid, 0), r, R).value * mid;
    for (double a : {mid * 0.7, mid * 0.85, mid * 1.2, mid * 1.4})
        CHECK(density_annulus(cplx(a, 0), r, R).value * a > at_mid);
}

TEST_CASE("annulus degenerates to the punctured disc as r -> 0") {
    // the gap decays like (pi log|q| / log r)^2 / 6, so the 1e-4 window
    // needs log(1/r) of order 1.5e2
    double prev = 1e300;
    for (double r : {1e-8, 1e-20, 1e-80}) {
        double v = density_annulus(cplx(0.5, 0), r, 1.0).value;
        double gap = std::abs(v - density_punctured_disc(cplx(0.5, 0), 1.0).value);
        CHECK(gap < prev);
        prev = gap;
    }
    double v = density_annulus(cplx(0.5, 0), 1e-80, 1.0).value;
    CHECK(std::abs(v - density_punctured_disc(cplx(0.5, 0), 1.0).value) < 1e-4);
}

TEST_CASE("Schwarz-Pick: the annulus dominates its disc") {
    CHECK(density_annulus(cplx(0.5, 0), 0.1, 1).value > density_disc(cplx(0.5, 0), 1).value);
}

TEST_CASE("Schwarz-Pick monotonicity over seeded catalog pairs") {
    RngStream rng(77, "schwarz-pick");
    for (int t = 0; t < 1000; ++t) {
        double R2 = rng.uniform(0.5, 3.0);
        double R1 = rng.uniform(0.2 * R2, 0.95 * R2);
        cplx q = std::polar(rng.uniform(0.05, 0.9) * R1, rng.uniform(0, 2 * M_PI));
        // inner domain has the larger density
        REQUIRE(density_disc(q, R1).value >= density_disc(q, R2).value);
        REQUIRE(density_punctured_disc(q, R1).value >= density_punctured_disc(q, R2).value);
        REQUIRE(density_punctured_disc(q, R1).value >= density_disc(q, R1).value);
        double r_in = rng.uniform(0.01 * std::abs(q), 0.9 * std::abs(q));
        REQUIRE(density_annulus(q, r_in, R1).value >= density_punctured_disc(q, R1).value);
    }
}

TEST_CASE("pushforward consistency across the covering catalog") {
    auto cat = covering_catalog();
    REQUIRE(cat.size() >= 6);
    for (const CoveringMap& cover : cat) {
        RngStream rng(101, "cover-" + cover.name);
        for (int t = 0; t < 100; ++t) {
            cplx z = cover.sample_source(rng);
            double res = pushforward_consistency_check(cover, z);
            REQUIRE_MESSAGE(res < 1e-10, cover.name);
        }
    }
}

TEST_CASE("named covers at pinned points") {
    auto cat = covering_catalog();
    const CoveringMap* identity = nullptr;
    const CoveringMap* exp_cover = nullptr;
    const CoveringMap* scaled = nullptr;
    for (const auto& c : cat) {
        if (c.name == "identity D -> D") identity = &c;
        if (c.name == "exponential D -> D*") exp_cover = &c;
        if (c.name == "scaling D -> D(0,2)") scaled = &c;
    }
    REQUIRE(identity);
    REQUIRE(exp_cover);
    REQUIRE(scaled);
    CHECK(pushforward_consistency_check(*identity, cplx(0.4, 0.1)) == 0.0);
    CHECK(pushforward_consistency_check(*exp_cover, cplx(0, 0)) < 1e-12);
    CHECK(pushforward_consistency_check(*scaled, cplx(0.3, 0)) < 1e-12);
}

TEST_CASE("inclusion bounds bracket the closed forms") {
    // the unit disc presented as a sampled domain
    PlanarDomain disc = PlanarDomain::sampled([](cplx q) { return std::abs(q) < 1.0; },
                                              -1, 1, -1, 1);
    DensityBounds b0 = density_bounds(disc, cplx(0, 0));
    REQUIRE(b0.upper.has_value());
    CHECK(b0.lower <= 2.0 + 1e-9);
    CHECK(*b0.upper >= 2.0 - 1e-9);

    // the punctured unit disc; the closed form at 0.5 must sit in the bracket
    PlanarDomain punct = PlanarDomain::sampled(
        [](cplx q) { return q != cplx(0, 0) && std::abs(q) < 1.0; }, -1, 1, -1, 1);
    DensityBounds b1 = density_bounds(punct, cplx(0.5, 0));
    REQUIRE(b1.upper.has_value());
    double truth = density_punctured_disc(cplx(0.5, 0), 1).value;
    CHECK(b1.lower <= truth);
    CHECK(*b1.upper >= truth);
}

TEST_CASE("bounds for nested sampled discs are monotone") {
    PlanarDomain small = PlanarDomain::sampled([](cplx q) { return std::abs(q) < 0.7; },
                                               -0.7, 0.7, -0.7, 0.7);
    PlanarDomain big = PlanarDomain::sampled([](cplx q) { return std::abs(q) < 1.0; },
                                             -1, 1, -1, 1);
    cplx q(0.2, 0.1);
    DensityBounds bs = density_bounds(small, q);
    DensityBounds bb = density_bounds(big, q);
    REQUIRE(bs.upper.has_value());
    REQUIRE(bb.upper.has_value());
    CHECK(bs.lower >= bb.lower);
    CHECK(*bs.upper >= *bb.upper);
}
