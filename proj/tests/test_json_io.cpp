#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "idem/json_io.hpp"
#include "idem/monad.hpp"
#include "idem/sampling.hpp"

using namespace idem;
using io::json;

TEST_CASE("scalar serialization forms") {
    CHECK(io::scalar_to_json(ext_scalar(5)) == json(5));
    CHECK(io::scalar_to_json(ext_scalar(rat(1, 2))) == json("1/2"));
    CHECK(io::scalar_to_json(ext_scalar::pos_inf()) == json("inf"));
    CHECK(io::scalar_to_json(ext_scalar::neg_inf()) == json("-inf"));

    CHECK(io::scalar_from_json(json(5), "$") == ext_scalar(5));
    CHECK(io::scalar_from_json(json("2/6"), "$") == ext_scalar(rat(1, 3)));
    CHECK(io::scalar_from_json(json("inf"), "$") == ext_scalar::pos_inf());
    CHECK_THROWS_AS(io::scalar_from_json(json("inf "), "$"), error);
    CHECK_THROWS_AS(io::scalar_from_json(json(0.5), "$"), error);
    try {
        io::scalar_from_json(json("inf "), "$");
    } catch (const error& e) {
        CHECK(e.code() == errc::schema_error);
    }
}

TEST_CASE("measure round trip, including nested points") {
    auto s = finite_space::make_atoms({"a", "b"});
    auto mu = max_min_measure::make(
        s, {{label("a"), ext_scalar::pos_inf()}, {label("b"), ext_scalar(rat(2, 3))}});
    auto j = io::measure_to_json(mu);
    auto back = io::measure_from_json(j, "$");
    CHECK(std::get<max_min_measure>(back) == mu);

    // nested: a measure over measure-points
    auto da = max_min_measure::dirac(s, label("a"));
    auto outer_space = finite_space::make({da.as_label(), mu.as_label()});
    auto outer = max_min_measure::make(
        outer_space, {{da.as_label(), ext_scalar::pos_inf()}, {mu.as_label(), ext_scalar(1)}});
    auto jn = io::measure_to_json(outer);
    CHECK(std::get<max_min_measure>(io::measure_from_json(jn, "$")) == outer);
}

TEST_CASE("non-canonical atom lists canonicalize with a notice") {
    json j = {{"kind", "max-min"},
              {"space", {{"points", {"a", "b"}}}},
              {"atoms",
               {{{"point", "b"}, {"weight", 1}},
                {{"point", "a"}, {"weight", "inf"}},
                {{"point", "b"}, {"weight", 0}},
                {{"point", "a"}, {"weight", "-inf"}}}}};
    std::ostringstream diag;
    auto m = std::get<max_min_measure>(io::measure_from_json(j, "$", &diag));
    CHECK(m.atom_count() == 2);
    CHECK(m.weight(label("a")) == ext_scalar::pos_inf());
    CHECK(m.weight(label("b")) == ext_scalar(1));
    CHECK(diag.str().find("notice") != std::string::npos);

    // canonical input produces no notice
    std::ostringstream quiet;
    io::measure_from_json(io::measure_to_json(m), "$", &quiet);
    CHECK(quiet.str().empty());
}

TEST_CASE("schema errors carry the JSON path") {
    json bad = {{"kind", "max-min"},
                {"space", {{"points", {"a"}}}},
                {"atoms", {{{"point", "a"}, {"weight", "oops"}}}}};
    try {
        io::measure_from_json(bad, "$");
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::schema_error);
        CHECK(std::string(e.what()).find("$.atoms[0].weight") != std::string::npos);
    }
}

TEST_CASE("function and map round trips") {
    auto s = finite_space::make_atoms({"a", "b"});
    auto f = test_function(s, {rat(1, 2), rat(-3)});
    CHECK(io::function_from_json(io::function_to_json(f), "$") == f);

    auto t = finite_space::make_atoms({"u"});
    auto m = finite_map::make(s, t, {{label("a"), label("u")}, {label("b"), label("u")}});
    CHECK(io::map_from_json(io::map_to_json(m), "$") == m);
}

TEST_CASE("metric and threshold round trips") {
    auto s = finite_space::make_atoms({"a", "b", "c"});
    sampler gen(5);
    auto d = gen.metric(s);
    auto dj = io::metric_to_json(d);
    CHECK(io::metric_from_json(dj, s, "$") == d);

    auto t = gen.threshold(d);
    auto tj = io::threshold_to_json(t);
    CHECK(io::threshold_from_json(tj, "$") == t);

    // omitted pairs are an error
    json missing = {{"d", {{"a", "b", "1/2"}}}};
    CHECK_THROWS_AS(io::metric_from_json(missing, s, "$"), error);
}

TEST_CASE("section round trip") {
    auto z = finite_space::make_atoms({"z0", "z1", "z2"});
    auto x = finite_space::make_atoms({"x", "y"});
    auto f = finite_map::make(z, x, {{label("z0"), label("x")},
                                     {label("z1"), label("x")},
                                     {label("z2"), label("y")}});
    auto sx = max_min_measure::make(z, {{label("z0"), ext_scalar::pos_inf()},
                                        {label("z1"), ext_scalar(1)}});
    auto sy = max_min_measure::dirac(z, label("z2"));
    auto s = measure_section::make(f, {{label("x"), sx}, {label("y"), sy}});
    auto sj = io::section_to_json(s);
    auto back = io::section_from_json(sj, "$");
    CHECK(back.map() == s.map());
    CHECK(back.at(label("x")) == sx);
    CHECK(back.at(label("y")) == sy);
}

TEST_CASE("coordinate point round trip") {
    coord_point p{{rat(0), rat(1, 2), rat(3)}};
    CHECK(io::point_from_json(io::point_to_json(p), "$") == p);
    CHECK_THROWS_AS(io::point_from_json(json("a"), "$"), error);
}

TEST_CASE("serialize-parse identity on random objects") {
    sampler gen(20240622);
    for (int i = 0; i < 300; ++i) {
        auto s = gen.atom_space(1 + gen.rng().below(5));
        auto mu = gen.measure_max_min(s);
        CHECK(std::get<max_min_measure>(
                  io::measure_from_json(io::measure_to_json(mu), "$")) == mu);
        auto nu = gen.measure_max_plus(s);
        CHECK(std::get<max_plus_measure>(
                  io::measure_from_json(io::measure_to_json(nu), "$")) == nu);
        auto f = gen.function(s);
        CHECK(io::function_from_json(io::function_to_json(f), "$") == f);
    }
}

TEST_CASE("parse errors on malformed text") {
    CHECK_THROWS_AS(io::parse_text("{not json"), error);
    try {
        io::parse_text("{not json");
    } catch (const error& e) {
        CHECK(e.code() == errc::parse_error);
    }
}
