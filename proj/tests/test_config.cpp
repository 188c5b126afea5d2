#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "folmet/config.hpp"
#include "folmet/domain.hpp"
#include "folmet/rng.hpp"

using namespace folmet;

TEST_CASE("nested sections and key=value parse") {
    std::string text = R"(
        polydisc { center = [0,0, 0,0]; radius = [1.0, 1.0]; }
        run {
            tol = 1e-3;
            name = "hello world";
            list = [1, 2, [3, 4], { a = 5 }];
        }
    )";
    cfg::Record r = cfg::parse(text);
    CHECK(r.items.size() == 2);
    CHECK(r.find("polydisc") != nullptr);
    const cfg::Record& run = r.find("run")->record();
    CHECK(run.find("tol")->num() == doctest::Approx(1e-3));
    CHECK(run.find("name")->str() == "hello world");
    CHECK(run.find("list")->list().size() == 4);
}

TEST_CASE("parse errors carry position info") {
    CHECK_THROWS_WITH_AS(cfg::parse("a = [1, 2", "bad.cfg"),
                         doctest::Contains("bad.cfg"), input_error);
    CHECK_THROWS_AS(cfg::parse("a ="), input_error);
    CHECK_THROWS_AS(cfg::parse("{}"), input_error);
}

TEST_CASE("parse . serialize . parse == parse") {
    std::string text = R"(
        experiment {
            kind = pointwise; seed = 7;
            points = [[0.5, 0, 0, 0]];
            nested { deep = [1, { x = 2 }]; }
        }
    )";
    cfg::Record once = cfg::parse(text);
    cfg::Record twice = cfg::parse(cfg::serialize(once));
    CHECK(once == twice);
    CHECK(cfg::serialize(once) == cfg::serialize(twice));
}

namespace {

cfg::Value random_value(RngStream& rng, int depth) {
    double pick = rng.next_double();
    if (depth >= 3 || pick < 0.45) return cfg::Value(rng.uniform(-100, 100));
    if (pick < 0.6) return cfg::Value(std::string("w") + std::to_string(rng.below(1000)));
    if (pick < 0.85) {
        cfg::ValueList list;
        for (std::uint64_t i = 0; i < rng.below(4); ++i)
            list.push_back(random_value(rng, depth + 1));
        return cfg::Value(std::move(list));
    }
    cfg::Record rec;
    for (std::uint64_t i = 0; i < 1 + rng.below(3); ++i)
        rec.set("k" + std::to_string(i), random_value(rng, depth + 1));
    return cfg::Value(std::move(rec));
}

} // namespace

TEST_CASE("round-trip holds on random configs") {
    for (int trial = 0; trial < 200; ++trial) {
        RngStream rng(991, "cfg-roundtrip", trial);
        cfg::Record rec;
        for (std::uint64_t i = 0; i < 1 + rng.below(5); ++i)
            rec.set("key" + std::to_string(i), random_value(rng, 0));
        cfg::Record back = cfg::parse(cfg::serialize(rec));
        REQUIRE(rec == back);
    }
}

TEST_CASE("strict binder rejects unknown keys") {
    cfg::Record r = cfg::parse("a = 1; b = 2;");
    cfg::Binder bind(r, "test");
    CHECK(bind.number("a") == 1);
    CHECK_THROWS_WITH_AS(bind.finish(), doctest::Contains("'b'"), input_error);
}

TEST_CASE("domain expressions round-trip through the config syntax") {
    CPoint zero2({cplx(0, 0), cplx(0, 0)});
    auto d = geo::Domain::unite(
        {geo::Domain::polydisc(zero2, {1, 1}),
         geo::Domain::difference(
             geo::Domain::ball(zero2, 2.0),
             geo::Domain::tube(CPoint({cplx(-3, 0), cplx(-3, 0)}),
                               CPoint({cplx(3, 0), cplx(3, 0)}), 0.25))});
    cfg::Record r = d->to_config();
    geo::DomainPtr back = geo::Domain::from_config(cfg::parse(cfg::serialize(r)));
    CHECK(back->to_config() == r);

    RngStream rng(5, "domain-roundtrip");
    for (int t = 0; t < 100; ++t) {
        CPoint p({cplx(rng.uniform(-2, 2), rng.uniform(-2, 2)),
                  cplx(rng.uniform(-2, 2), rng.uniform(-2, 2))});
        CHECK(d->member(p) == back->member(p));
    }
}
