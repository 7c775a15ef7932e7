#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "idem/cone.hpp"
#include "idem/functorial.hpp"
#include "idem/sampling.hpp"

using namespace idem;

namespace {
const ext_scalar inf = ext_scalar::pos_inf();
const rat tol9 = default_tolerance();             // 1e-9
const rat tol12(1, 1000000000000LL);              // 1e-12
}  // namespace

TEST_CASE("xi logit endpoints and midpoint") {
    const auto& xi = xi_map::logit();
    CHECK(xi.forward(rat(0)).is_neg_inf());
    CHECK(xi.forward(rat(1)).is_pos_inf());
    CHECK(xi.forward(rat(1, 2)) == ext_scalar(rat(0)));  // ln 1 is exact
    CHECK(xi.inverse(ext_scalar(rat(0))) == rat(1, 2));
    CHECK(xi.inverse(ext_scalar::pos_inf()) == rat(1));
    CHECK_THROWS_AS(xi.forward(rat(2)), error);
}

TEST_CASE("saturation takes per-point maxima") {
    auto s = finite_space::make_atoms({"a", "b"});
    auto m = finite_metric::discrete(s);
    auto a = threshold_function::saturate(
        m, {{label("a"), rat(1)}, {label("a"), rat(1, 2)}, {label("b"), rat(1, 4)}});
    CHECK(a.at(label("a")) == rat(1));
    CHECK(a.at(label("b")) == rat(1, 4));

    auto b = threshold_function::saturate(m, {{label("a"), rat(1)}});
    CHECK(b.at(label("b")) == rat(0));

    try {
        threshold_function::saturate(m, {{label("a"), rat(1, 2)}});
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::not_reaching_top);
    }
    CHECK_THROWS_AS(threshold_function::saturate(m, {{label("a"), rat(3, 2)}}), error);
}

TEST_CASE("h maps thresholds to max-min measures") {
    auto s = finite_space::make_atoms({"a", "b"});
    auto m = finite_metric::discrete(s);
    auto a = threshold_function::make(m, {rat(1), rat(1, 2)});
    auto mu = h(a);
    CHECK(mu.weight(label("a")) == inf);
    CHECK(mu.weight(label("b")) == ext_scalar(rat(0)));

    auto b = threshold_function::make(m, {rat(1), rat(0)});
    CHECK(h(b) == max_min_measure::dirac(s, label("a")));
}

TEST_CASE("h_inv inverts on the worked example") {
    auto s = finite_space::make_atoms({"a", "b"});
    auto mu = max_min_measure::make(s, {{label("a"), inf}, {label("b"), ext_scalar(0)}});
    auto a = h_inv(mu);
    CHECK(a.at(label("a")) == rat(1));
    CHECK(a.at(label("b")) == rat(1, 2));

    auto d = h_inv(max_min_measure::dirac(s, label("a")));
    CHECK(d.at(label("a")) == rat(1));
    CHECK(d.at(label("b")) == rat(0));
}

TEST_CASE("h round trips within 1e-9 on random measures") {
    sampler gen(20240603);
    for (int i = 0; i < 1000; ++i) {
        auto s = gen.atom_space(1 + gen.rng().below(5));
        auto mu = gen.measure_max_min(s);
        CHECK(approx_equal(h(h_inv(mu)), mu, tol9));
        auto a = gen.threshold(gen.metric(s));
        auto back = h_inv(h(a), a.metric());
        for (std::size_t p = 0; p < s.size(); ++p)
            CHECK(rat::abs(back.tau(p) - a.tau(p)) <= tol9);
    }
}

TEST_CASE("g and g_inv follow the log/exp formulas") {
    auto s = finite_space::make_atoms({"a", "b"});
    auto m = finite_metric::discrete(s);
    auto a = threshold_function::make(m, {rat(1), rat(1, 2)});
    auto nu = g(a);
    CHECK(nu.weight(label("a")) == ext_scalar(rat(0)));
    CHECK(rat::abs(nu.weight(label("b")).finite() - rat::from_double(-std::log(2.0))) <= tol12);

    auto back = g_inv(nu, m);
    CHECK(back.at(label("a")) == rat(1));
    CHECK(rat::abs(back.at(label("b")) - rat(1, 2)) <= tol12);

    CHECK(g(threshold_function::make(finite_metric::discrete(finite_space::make_atoms({"a"})),
                                     {rat(1)})) ==
          max_plus_measure::dirac(finite_space::make_atoms({"a"}), label("a")));
}

TEST_CASE("g round trips within 1e-12 on random thresholds") {
    sampler gen(20240604);
    for (int i = 0; i < 1000; ++i) {
        auto s = gen.atom_space(1 + gen.rng().below(5));
        auto a = gen.threshold(gen.metric(s));
        auto back = g_inv(g(a), a.metric());
        for (std::size_t p = 0; p < s.size(); ++p)
            CHECK(rat::abs(back.tau(p) - a.tau(p)) <= tol12);
        auto nu = gen.measure_max_plus(s);
        CHECK(approx_equal(g(g_inv(nu)), nu, tol9));
    }
}

TEST_CASE("k matches the worked example and fixes diracs") {
    auto s = finite_space::make_atoms({"a", "b"});
    auto nu = max_plus_measure::make(
        s, {{label("a"), ext_scalar(rat(0))},
            {label("b"), ext_scalar(rat::from_double(-std::log(2.0)))}});
    auto mu = k(nu);
    CHECK(mu.weight(label("a")) == inf);
    CHECK(rat::abs(mu.weight(label("b")).finite() - rat(0)) <= tol9);

    CHECK(k(max_plus_measure::dirac(s, label("b"))) == max_min_measure::dirac(s, label("b")));
    CHECK(k_inv(max_min_measure::dirac(s, label("b"))) == max_plus_measure::dirac(s, label("b")));
}

TEST_CASE("k and k_inv are mutually inverse within 1e-9") {
    sampler gen(20240605);
    for (int i = 0; i < 1000; ++i) {
        auto s = gen.atom_space(1 + gen.rng().below(5));
        auto nu = gen.measure_max_plus(s);
        CHECK(approx_equal(k_inv(k(nu)), nu, tol9));
        auto mu = gen.measure_max_min(s);
        CHECK(approx_equal(k(k_inv(mu)), mu, tol9));
    }
}

TEST_CASE("k agrees with the h-after-g_inv route") {
    sampler gen(20240606);
    for (int i = 0; i < 300; ++i) {
        auto s = gen.atom_space(1 + gen.rng().below(5));
        auto nu = gen.measure_max_plus(s);
        CHECK(approx_equal(k(nu), h(g_inv(nu)), tol9));
    }
}

TEST_CASE("naturality squares for k, h, g") {
    sampler gen(20240607);
    for (int i = 0; i < 300; ++i) {
        auto x = gen.atom_space(1 + gen.rng().below(4));
        auto y = gen.atom_space(1 + gen.rng().below(3));
        auto f = gen.map(x, y);
        auto dy = finite_metric::discrete(y);

        auto nu = gen.measure_max_plus(x);
        CHECK(approx_equal(k(pushforward(f, nu)), pushforward(f, k(nu)), tol9));

        auto a = gen.threshold(gen.metric(x));
        CHECK(approx_equal(pushforward(f, h(a)), h(threshold_pushforward(f, a, dy)), tol9));
        CHECK(approx_equal(pushforward(f, g(a)), g(threshold_pushforward(f, a, dy)), tol9));
    }
}

TEST_CASE("cone metric on examples") {
    auto s = finite_space::make_atoms({"a", "b"});
    auto d = finite_metric::discrete(s);
    CHECK(cone_dist({label("a"), rat(1)}, {label("a"), rat(1, 2)}, d) == rat(1, 2));
    CHECK(cone_dist({label("a"), rat(0)}, {label("b"), rat(0)}, d) == rat(0));
    CHECK(cone_dist({label("a"), rat(1)}, {label("b"), rat(1)}, d) == rat(1));
    CHECK_THROWS_AS(cone_dist({label("a"), rat(2)}, {label("b"), rat(1)}, d), error);
}

TEST_CASE("hausdorff distance on the worked examples") {
    auto s = finite_space::make_atoms({"a", "b"});
    auto d = finite_metric::discrete(s);
    auto a = threshold_function::make(d, {rat(1), rat(0)});
    auto b = threshold_function::make(d, {rat(1), rat(1)});
    auto c = threshold_function::make(d, {rat(1), rat(1, 2)});
    CHECK(hausdorff_dist(a, a) == rat(0));
    CHECK(hausdorff_dist(a, b) == rat(1));
    CHECK(hausdorff_dist(a, c) == rat(1, 2));
    CHECK(hausdorff_dist(c, b) == rat(1, 2));
}

TEST_CASE("hausdorff metric axioms hold exactly on random triples") {
    sampler gen(20240608);
    for (int i = 0; i < 150; ++i) {
        auto s = gen.atom_space(2 + gen.rng().below(5));
        auto d = gen.metric(s);
        auto a = gen.threshold(d);
        auto b = gen.threshold(d);
        auto c = gen.threshold(d);
        CHECK(hausdorff_dist(a, a) == rat(0));
        CHECK(hausdorff_dist(a, b) == hausdorff_dist(b, a));
        CHECK(hausdorff_dist(a, c) <= hausdorff_dist(a, b) + hausdorff_dist(b, c));
        if (!(a == b)) CHECK(hausdorff_dist(a, b) > rat(0));
    }
}

TEST_CASE("closed form agrees with the grid oracle") {
    sampler gen(20240609);
    const rat step(1, 100);
    for (int i = 0; i < 60; ++i) {
        auto s = gen.atom_space(2 + gen.rng().below(5));
        auto d = gen.metric(s);
        auto a = gen.threshold(d);
        auto b = gen.threshold(d);
        rat exact = hausdorff_dist(a, b);
        rat approx = hausdorff_oracle(a, b, step);
        CHECK(rat::abs(exact - approx) <= step + step);
    }
}

TEST_CASE("oracle error shrinks under step refinement") {
    sampler gen(20240610);
    for (int i = 0; i < 20; ++i) {
        auto s = gen.atom_space(2 + gen.rng().below(4));
        auto d = gen.metric(s);
        auto a = gen.threshold(d);
        auto b = gen.threshold(d);
        rat exact = hausdorff_dist(a, b);
        rat prev_err(2);
        for (int k = 0; k < 4; ++k) {
            rat step(1, 10 * (1 << k));  // 1/10, 1/20, 1/40, 1/80
            rat err = rat::abs(exact - hausdorff_oracle(a, b, step));
            CHECK(err <= step);
            CHECK(err <= prev_err);
            prev_err = err;
        }
    }
}

TEST_CASE("raising a target column weakly lowers the directed distance") {
    sampler gen(20240611);
    for (int i = 0; i < 200; ++i) {
        auto s = gen.atom_space(2 + gen.rng().below(4));
        auto d = gen.metric(s);
        auto a = gen.threshold(d);
        auto b = gen.threshold(d);
        // raise one height of b
        auto heights = b.heights();
        std::size_t p = gen.rng().below(heights.size());
        heights[p] = rat::min(rat(1), heights[p] + gen.unit_rat());
        auto b_up = threshold_function::make(d, heights);
        CHECK(detail::directed_hausdorff(a, b_up) <= detail::directed_hausdorff(a, b));
    }
}

TEST_CASE("measure distance between diracs is the ground distance") {
    sampler gen(20240612);
    for (int i = 0; i < 100; ++i) {
        auto s = gen.atom_space(2 + gen.rng().below(5));
        auto d = gen.metric(s);
        std::size_t p = gen.rng().below(s.size());
        std::size_t q = gen.rng().below(s.size());
        auto da = max_min_measure::dirac(s, s.point(p));
        auto db = max_min_measure::dirac(s, s.point(q));
        CHECK(measure_dist(da, db, d) == d(p, q));
    }
}

TEST_CASE("measure distance metric axioms on random triples") {
    sampler gen(20240613);
    for (int i = 0; i < 100; ++i) {
        auto s = gen.atom_space(2 + gen.rng().below(4));
        auto d = gen.metric(s);
        auto mu = gen.measure_max_min(s);
        auto nu = gen.measure_max_min(s);
        auto rho = gen.measure_max_min(s);
        CHECK(measure_dist(mu, mu, d) == rat(0));
        CHECK(measure_dist(mu, nu, d) == measure_dist(nu, mu, d));
        CHECK(measure_dist(mu, rho, d) <= measure_dist(mu, nu, d) + measure_dist(nu, rho, d));
    }
}
