#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "idem/errors.hpp"
#include "idem/measure.hpp"
#include "idem/monad.hpp"
#include "idem/sampling.hpp"

namespace idem {

/// A point of R^n with exact rational coordinates.
struct coord_point {
    std::vector<rat> coords;

    std::size_t dimension() const noexcept { return coords.size(); }

    label as_label() const { return label::tuple(coords); }
    static coord_point from_label(const label& l) {
        if (!l.is_tuple()) raise(errc::dimension_mismatch, "label is not a coordinate tuple");
        return coord_point{l.coords()};
    }

    friend bool operator==(const coord_point& a, const coord_point& b) {
        return a.coords == b.coords;
    }

    std::string to_string() const { return as_label().to_string(); }
};

inline void require_same_dimension(const coord_point& a, const coord_point& b) {
    if (a.dimension() != b.dimension())
        raise(errc::dimension_mismatch, "points must share a dimension");
}

/// x v (c /\ y), the basic max-min convex combination, coordinatewise.
inline coord_point mm_combine(const coord_point& x, const ext_scalar& c, const coord_point& y) {
    require_same_dimension(x, y);
    coord_point out;
    out.coords.reserve(x.dimension());
    for (std::size_t i = 0; i < x.dimension(); ++i)
        out.coords.push_back(
            join(ext_scalar(x.coords[i]), meet(c, ext_scalar(y.coords[i]))).finite());
    return out;
}

/// The general combination: join over i of (c_i /\ x_i), coordinatewise.
/// The coefficients must join to +inf.
inline coord_point mm_combination(const std::vector<coord_point>& points,
                                  const std::vector<ext_scalar>& coefficients) {
    if (points.empty() || points.size() != coefficients.size())
        raise(errc::dimension_mismatch, "combination needs matching points and coefficients");
    ext_scalar total = ext_scalar::neg_inf();
    for (const auto& c : coefficients) total = join(total, c);
    if (!total.is_pos_inf())
        raise(errc::not_normalized, "combination coefficients must join to +inf");
    const std::size_t dim = points[0].dimension();
    coord_point out;
    out.coords.reserve(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        ext_scalar acc = ext_scalar::neg_inf();
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (points[i].dimension() != dim)
                raise(errc::dimension_mismatch, "points must share a dimension");
            acc = join(acc, meet(coefficients[i], ext_scalar(points[i].coords[k])));
        }
        out.coords.push_back(acc.finite());
    }
    return out;
}

struct hull_witness {
    bool member;
    std::vector<ext_scalar> coefficients;  ///< the principal solution when member
};

/// Membership of p in the max-min convex hull of the generators, decided by
/// residuation: the greatest candidate coefficient for generator i is the
/// meet over coordinates of resid(x_ik, p_k), where resid(a,b) is +inf when
/// a <= b and b otherwise. Any solution is dominated by this one, so p is
/// in the hull iff the principal candidate reproduces p and normalizes.
inline hull_witness hull_member(const std::vector<coord_point>& generators, const coord_point& p) {
    if (generators.empty()) raise(errc::dimension_mismatch, "hull needs at least one generator");
    const std::size_t dim = p.dimension();
    std::vector<ext_scalar> principal;
    principal.reserve(generators.size());
    for (const auto& gpt : generators) {
        if (gpt.dimension() != dim)
            raise(errc::dimension_mismatch, "points must share a dimension");
        ext_scalar c = ext_scalar::pos_inf();
        for (std::size_t k = 0; k < dim; ++k)
            if (gpt.coords[k] > p.coords[k]) c = meet(c, ext_scalar(p.coords[k]));
        principal.push_back(c);
    }
    ext_scalar total = ext_scalar::neg_inf();
    for (const auto& c : principal) total = join(total, c);
    if (!total.is_pos_inf()) return {false, {}};
    if (!(mm_combination(generators, principal) == p)) return {false, {}};
    return {true, std::move(principal)};
}

/// The barycenter of a measure whose points are coordinate tuples: the
/// tuple of integrals of the coordinate projections.
inline coord_point barycenter(const max_min_measure& mu) {
    const auto& points = mu.space().points();
    if (points.empty() || !points.front().is_tuple())
        raise(errc::dimension_mismatch, "barycenter needs coordinate-tuple points");
    const std::size_t dim = points.front().coords().size();
    for (const auto& p : points)
        if (!p.is_tuple() || p.coords().size() != dim)
            raise(errc::dimension_mismatch, "all points must be tuples of one dimension");
    coord_point out;
    out.coords.reserve(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        ext_scalar acc = ext_scalar::neg_inf();
        for (const auto& a : mu.atoms())
            acc = join(acc, meet(a.weight, ext_scalar(points[a.point].coords()[k])));
        out.coords.push_back(acc.finite());
    }
    return out;
}

/// Sampling and law checks for the barycenter as the structure map of an
/// algebra over the max-min monad.
namespace algebra {

inline coord_point sample_point(sampler& gen, std::size_t dim) {
    coord_point p;
    p.coords.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) p.coords.push_back(gen.small_rat());
    return p;
}

inline finite_space sample_point_space(sampler& gen, std::size_t dim, std::size_t max_points) {
    std::size_t count = 1 + gen.rng().below(max_points);
    std::vector<label> pts;
    for (std::size_t i = 0; i < count; ++i) {
        auto l = sample_point(gen, dim).as_label();
        bool seen = false;
        for (const auto& q : pts) seen = seen || q == l;
        if (!seen) pts.push_back(l);
    }
    return finite_space::make(std::move(pts));
}

/// Verifies, exactly: barycenter(dirac(x)) = x on every point of sampled
/// spaces, and barycenter(flatten(M)) = barycenter(M pushed along
/// barycenter) on random nested instances.
inline law_report check_algebra_laws(std::size_t dim, std::size_t cases, std::uint64_t seed) {
    if (cases < 1) raise(errc::out_of_range, "law suite needs at least one case");
    sampler gen(seed);
    law_report report;
    for (std::size_t i = 0; i < cases; ++i) {
        auto space = sample_point_space(gen, dim, 3);
        ++report.cases;
        for (std::size_t j = 0; j < space.size(); ++j) {
            auto x = coord_point::from_label(space.point(j));
            if (!(barycenter(max_min_measure::dirac(space, space.point(j))) == x))
                report.failures.push_back({"dirac", x.to_string()});
        }

        auto nested = detail::sample_nested<detail::max_min_ops>(gen, space);
        ++report.cases;
        auto via_flatten = barycenter(flatten(nested));
        auto via_map = barycenter(map_nested<detail::max_min_ops>(
            [](const label& l) {
                return barycenter(max_min_measure::from_label(l)).as_label();
            },
            nested));
        if (!(via_flatten == via_map))
            report.failures.push_back({"associativity", nested.to_string()});
    }
    return report;
}

}  // namespace algebra

}  // namespace idem
