#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "idem/convexity.hpp"

using namespace idem;

namespace {

const ext_scalar inf = ext_scalar::pos_inf();

coord_point pt(std::vector<rat> v) { return coord_point{std::move(v)}; }

/// Brute-force hull oracle: searches coefficient tuples over the finite
/// candidate set {coordinates of p and of the generators} + {+inf}. Each
/// coordinate of a combination equals either a coefficient or a generator
/// coordinate, so the candidate set suffices.
bool hull_oracle(const std::vector<coord_point>& gens, const coord_point& p) {
    std::vector<ext_scalar> candidates = {inf};
    auto add = [&](const rat& r) {
        for (const auto& c : candidates)
            if (c == ext_scalar(r)) return;
        candidates.push_back(ext_scalar(r));
    };
    for (const auto& c : p.coords) add(c);
    for (const auto& gpt : gens)
        for (const auto& c : gpt.coords) add(c);

    std::vector<std::size_t> pick(gens.size(), 0);
    while (true) {
        std::vector<ext_scalar> lams;
        ext_scalar total = ext_scalar::neg_inf();
        for (std::size_t i = 0; i < gens.size(); ++i) {
            lams.push_back(candidates[pick[i]]);
            total = join(total, lams.back());
        }
        if (total.is_pos_inf() && mm_combination(gens, lams) == p) return true;
        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < candidates.size()) break;
            pick[i] = 0;
        }
        if (i == pick.size()) return false;
    }
}

}  // namespace

TEST_CASE("mm_combine follows the coordinatewise formula") {
    auto x = pt({rat(0), rat(0)});
    auto y = pt({rat(3), rat(1)});
    auto r = mm_combine(x, ext_scalar(2), y);
    CHECK(r == pt({rat(2), rat(1)}));
    CHECK(mm_combine(x, ext_scalar::neg_inf(), y) == x);
    auto top = mm_combine(x, inf, y);
    CHECK(top == pt({rat(3), rat(1)}));  // x v y
    CHECK_THROWS_AS(mm_combine(x, ext_scalar(1), pt({rat(0)})), error);
}

TEST_CASE("mm_combination on the worked examples") {
    auto x = pt({rat(0), rat(1)});
    auto y = pt({rat(2), rat(0)});
    CHECK(mm_combination({x}, {inf}) == x);
    CHECK(mm_combination({x, x}, {ext_scalar(1), inf}) == x);
    CHECK(mm_combination({x, y}, {inf, ext_scalar(rat(1, 2))}) ==
          pt({rat(1, 2), rat(1)}));
    CHECK_THROWS_AS(mm_combination({x, y}, {ext_scalar(1), ext_scalar(2)}), error);
    try {
        mm_combination({x, y}, {ext_scalar(1), ext_scalar(2)});
    } catch (const error& e) {
        CHECK(e.code() == errc::not_normalized);
    }
}

TEST_CASE("combination is invariant under permutation and duplication") {
    sampler gen(20240617);
    for (int i = 0; i < 300; ++i) {
        std::size_t dim = 1 + gen.rng().below(3);
        auto x = algebra::sample_point(gen, dim);
        auto y = algebra::sample_point(gen, dim);
        auto z = algebra::sample_point(gen, dim);
        ext_scalar a = gen.scalar_any();
        ext_scalar b = gen.scalar_any();
        auto before = mm_combination({x, y, z}, {a, inf, b});
        auto permuted = mm_combination({z, x, y}, {b, a, inf});
        CHECK(before == permuted);
        auto duplicated = mm_combination({x, y, z, y}, {a, inf, b, inf});
        CHECK(duplicated == mm_combination({x, y, z}, {a, inf, b}));
    }
}

TEST_CASE("hull membership on the worked examples") {
    auto g0 = pt({rat(0), rat(0)});
    auto g1 = pt({rat(3), rat(1)});
    auto member = hull_member({g0, g1}, pt({rat(2), rat(1)}));
    CHECK(member.member);
    REQUIRE(member.coefficients.size() == 2);
    CHECK(mm_combination({g0, g1}, member.coefficients) == pt({rat(2), rat(1)}));

    // a generator is always a member, with its own coefficient +inf
    auto self = hull_member({g0, g1}, g1);
    CHECK(self.member);
    CHECK(self.coefficients[1] == inf);

    CHECK_FALSE(hull_member({g0}, pt({rat(1), rat(0)})).member);
}

TEST_CASE("hull membership agrees with the brute-force oracle, exhaustively") {
    // all generator sets of size <= 3 and probe points over a 3-value grid
    std::vector<rat> grid = {rat(0), rat(1, 2), rat(1)};
    for (std::size_t dim = 1; dim <= 3; ++dim) {
        // enumerate all points of the grid^dim cube
        std::vector<coord_point> cube;
        std::vector<std::size_t> pick(dim, 0);
        while (true) {
            coord_point p;
            for (std::size_t k = 0; k < dim; ++k) p.coords.push_back(grid[pick[k]]);
            cube.push_back(p);
            std::size_t k = 0;
            for (; k < dim; ++k) {
                if (++pick[k] < grid.size()) break;
                pick[k] = 0;
            }
            if (k == dim) break;
        }
        // generator subsets of size 1..3 by index combinations
        for (std::size_t i = 0; i < cube.size(); ++i)
            for (std::size_t j = i; j < cube.size(); ++j)
                for (std::size_t l = j; l < cube.size(); ++l) {
                    std::vector<coord_point> gens = {cube[i], cube[j], cube[l]};
                    for (const auto& p : cube) {
                        CHECK(hull_member(gens, p).member == hull_oracle(gens, p));
                    }
                }
    }
}

TEST_CASE("barycenter on the worked examples") {
    auto p0 = pt({rat(0), rat(1)});
    auto p1 = pt({rat(2), rat(0)});
    auto space = finite_space::make({p0.as_label(), p1.as_label()});
    CHECK(barycenter(max_min_measure::dirac(space, p0.as_label())) == p0);

    auto mu = max_min_measure::make(
        space, {{p0.as_label(), inf}, {p1.as_label(), ext_scalar(rat(1, 2))}});
    CHECK(barycenter(mu) == pt({rat(1, 2), rat(1)}));

    CHECK_THROWS_AS(barycenter(max_min_measure::dirac(finite_space::make_atoms({"a"}), label("a"))),
                    error);
}

TEST_CASE("barycenter preserves combinations") {
    sampler gen(20240618);
    for (int i = 0; i < 300; ++i) {
        std::size_t dim = 1 + gen.rng().below(3);
        auto space = algebra::sample_point_space(gen, dim, 4);
        auto mu = gen.measure_max_min(space);
        auto nu = gen.measure_max_min(space);
        auto lam = gen.scalar_any();
        auto lhs = barycenter(combine(mu, lam, nu));
        auto rhs = mm_combine(barycenter(mu), lam, barycenter(nu));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("barycenter is monotone in weights and coordinates") {
    sampler gen(20240619);
    for (int i = 0; i < 300; ++i) {
        std::size_t dim = 1 + gen.rng().below(3);
        auto space = algebra::sample_point_space(gen, dim, 4);
        auto mu = gen.measure_max_min(space);
        auto base = barycenter(mu);

        // raise one atom weight
        auto atoms = mu.atoms();
        std::vector<std::pair<label, ext_scalar>> raised;
        std::size_t bump = gen.rng().below(atoms.size());
        for (std::size_t j = 0; j < atoms.size(); ++j) {
            auto w = atoms[j].weight;
            if (j == bump) w = join(w, ext_scalar(rat::abs(gen.small_rat())));
            raised.emplace_back(space.point(atoms[j].point), w);
        }
        auto up = barycenter(max_min_measure::make(space, raised));
        for (std::size_t k = 0; k < dim; ++k) CHECK(base.coords[k] <= up.coords[k]);

        // raise one coordinate of one generator
        std::size_t pi = gen.rng().below(space.size());
        std::size_t ci = gen.rng().below(dim);
        std::vector<label> pts2;
        for (std::size_t j = 0; j < space.size(); ++j) {
            auto coords = space.point(j).coords();
            if (j == pi) coords[ci] += rat::abs(gen.small_rat()) + rat(1, 7);
            pts2.push_back(label::tuple(coords));
        }
        auto space2 = [&]() -> std::optional<finite_space> {
            // the raise may collide with an existing point; skip if so
            for (std::size_t a = 0; a < pts2.size(); ++a)
                for (std::size_t b = a + 1; b < pts2.size(); ++b)
                    if (pts2[a] == pts2[b]) return std::nullopt;
            return finite_space::make(pts2);
        }();
        if (space2) {
            std::vector<std::pair<label, ext_scalar>> moved;
            for (const auto& a : mu.atoms())
                moved.emplace_back(space2->point(a.point), a.weight);
            auto up2 = barycenter(max_min_measure::make(*space2, moved));
            for (std::size_t k = 0; k < dim; ++k) CHECK(base.coords[k] <= up2.coords[k]);
        }
    }
}

TEST_CASE("barycenter lands in the hull of the support") {
    sampler gen(20240620);
    for (int i = 0; i < 300; ++i) {
        std::size_t dim = 1 + gen.rng().below(3);
        auto space = algebra::sample_point_space(gen, dim, 3);
        auto mu = gen.measure_max_min(space);
        std::vector<coord_point> support_points;
        for (const auto& l : mu.support()) support_points.push_back(coord_point::from_label(l));
        CHECK(hull_member(support_points, barycenter(mu)).member);
    }
}

TEST_CASE("algebra laws hold on random nested instances") {
    auto report = algebra::check_algebra_laws(3, 200, 20240621);
    CHECK(report.ok());
    CHECK(report.cases == 400);
}
