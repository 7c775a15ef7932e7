#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "idem/cone.hpp"
#include "idem/errors.hpp"
#include "idem/functorial.hpp"
#include "idem/measure.hpp"
#include "idem/sampling.hpp"

namespace idem {

/// True when every point of the measure's space is itself a measure of the
/// given kind; such measures are the nested (twice-iterated) elements.
template <class Ops>
bool is_nested(const basic_measure<Ops>& outer, measure_kind inner_kind) {
    for (const auto& p : outer.space().points())
        if (!p.is_measure() || p.measure_ptr()->kind != inner_kind) return false;
    return true;
}

namespace detail {

template <class Ops>
finite_space common_base_space(const basic_measure<Ops>& outer) {
    const auto& points = outer.space().points();
    if (points.empty() || !points.front().is_measure())
        raise(errc::kind_mismatch, "outer measure's points must be measures");
    auto base = finite_space::from_rep(points.front().measure_ptr()->space);
    for (const auto& p : points) {
        if (!p.is_measure() || p.measure_ptr()->kind != Ops::kind)
            raise(errc::kind_mismatch, "inner measures must all have kind " +
                                           std::string(kind_name(Ops::kind)));
        require_same_space(base, finite_space::from_rep(p.measure_ptr()->space),
                           "inner measures must share one base space");
    }
    return base;
}

}  // namespace detail

/// The evaluation of a fixed function, viewed as a function on a space of
/// measures: value at mu is mu(f). The flatten operations below satisfy
/// eval(flatten(M), f) = eval(M, evaluation_function(f, M.space())).
template <class Ops>
test_function evaluation_function(const test_function& f, const finite_space& measures) {
    std::vector<rat> v;
    v.reserve(measures.size());
    for (std::size_t i = 0; i < measures.size(); ++i) {
        auto inner = basic_measure<Ops>::from_label(measures.point(i));
        require_same_space(inner.space(), f.space(), "inner measures must live on the function's space");
        v.push_back(eval(inner, f));
    }
    return test_function(measures, std::move(v));
}

/// Monad multiplication for max-min: the outer weights meet the inner
/// weights atomwise and join over outer atoms.
inline max_min_measure flatten(const max_min_measure& outer) {
    auto base = detail::common_base_space<detail::max_min_ops>(outer);
    std::vector<ext_scalar> w(base.size(), ext_scalar::neg_inf());
    for (const auto& a : outer.atoms()) {
        auto inner = max_min_measure::from_label(outer.space().point(a.point));
        for (const auto& b : inner.atoms()) w[b.point] = join(w[b.point], meet(a.weight, b.weight));
    }
    return max_min_measure::from_weights(base, w);
}

/// Monad multiplication for max-plus: outer weights translate the inner
/// weights.
inline max_plus_measure flatten(const max_plus_measure& outer) {
    auto base = detail::common_base_space<detail::max_plus_ops>(outer);
    std::vector<ext_scalar> w(base.size(), ext_scalar::neg_inf());
    for (const auto& a : outer.atoms()) {
        auto inner = max_plus_measure::from_label(outer.space().point(a.point));
        for (const auto& b : inner.atoms())
            w[b.point] = join(w[b.point], translate(a.weight, b.weight));
    }
    return max_plus_measure::from_weights(base, w);
}

/// Applies a measure transform to every inner measure (the functor acting
/// on a nested measure); outer atoms whose images coincide merge by join.
/// The transform may change the inner kind.
template <class OuterOps>
basic_measure<OuterOps> map_nested(const std::function<label(const label&)>& transform,
                                   const basic_measure<OuterOps>& outer) {
    return relabel(outer, transform);
}

/// The trivial nesting J(eta): each point of mu becomes the Dirac measure
/// at that point, keeping the weights.
template <class Ops>
basic_measure<Ops> nest_via_dirac(const basic_measure<Ops>& mu) {
    return relabel<Ops>(mu, [&](const label& p) {
        return basic_measure<Ops>::dirac(mu.space(), p).as_label();
    });
}

/// The outer unit eta_{J(X)}: the Dirac measure at mu, an element of J^2.
template <class Ops>
basic_measure<Ops> outer_dirac(const basic_measure<Ops>& mu) {
    auto l = mu.as_label();
    auto space = finite_space::make({l});
    return basic_measure<Ops>::dirac(space, l);
}

/// A strictly increasing bijection [-inf, 0] -> [-inf, +inf] with exact
/// endpoint behaviour. The functor isomorphisms singled out by spaces of
/// at most three points all act atomwise through such a map.
struct order_bijection {
    std::string name;
    std::function<ext_scalar(const ext_scalar&)> map;

    /// Endpoints exact; strict monotonicity spot-checked on a probe grid.
    void validate() const {
        if (!map(ext_scalar::neg_inf()).is_neg_inf())
            raise(errc::not_strictly_increasing, "alpha(-inf) must be -inf");
        if (!map(ext_scalar(rat(0))).is_pos_inf())
            raise(errc::not_strictly_increasing, "alpha(0) must be +inf");
        ext_scalar prev = ext_scalar::neg_inf();
        for (int k = 64; k >= 1; --k) {
            ext_scalar v = map(ext_scalar(rat(-k, 8)));
            if (!(prev < v))
                raise(errc::not_strictly_increasing,
                      "alpha must be strictly increasing on the probe grid");
            prev = v;
        }
    }

    /// The default instance induced by the logit homeomorphism.
    static order_bijection logit_exp() {
        order_bijection a;
        a.name = "logit-exp";
        a.map = xi_map::logit().alpha;
        a.validate();
        return a;
    }

    /// An exact rational family: beta maps to scale*beta - recip/beta.
    /// Strictly increasing on (-inf, 0) for positive parameters, with the
    /// right endpoint limits; keeps counterexample arithmetic float-free.
    static order_bijection rational_family(const rat& scale, const rat& recip) {
        if (!scale.is_positive() || !recip.is_positive())
            raise(errc::not_strictly_increasing, "rational family needs positive parameters");
        order_bijection a;
        a.name = "rational(" + scale.to_string() + "," + recip.to_string() + ")";
        a.map = [scale, recip](const ext_scalar& b) -> ext_scalar {
            if (b.is_neg_inf()) return ext_scalar::neg_inf();
            if (b == ext_scalar(rat(0))) return ext_scalar::pos_inf();
            if (b > ext_scalar(rat(0))) raise(errc::out_of_range, "alpha input outside [-inf,0]");
            const rat& v = b.finite();
            return ext_scalar(scale * v - recip / v);
        };
        a.validate();
        return a;
    }
};

/// One law-check failure, reported as replayable data.
struct law_failure {
    std::string law;
    std::string detail;
};

struct law_report {
    std::size_t cases = 0;
    std::vector<law_failure> failures;
    bool ok() const { return failures.empty(); }
};

namespace detail {

template <class Ops>
void check_unit_laws(const basic_measure<Ops>& mu, law_report& report) {
    ++report.cases;
    if (!(flatten(outer_dirac(mu)) == mu))
        report.failures.push_back({"unit-outer", mu.to_string()});
    if (!(flatten(nest_via_dirac(mu)) == mu))
        report.failures.push_back({"unit-inner", mu.to_string()});
}

/// Associativity on a triply nested measure: flattening the outer two
/// layers first agrees with flattening inside first.
template <class Ops>
void check_associativity(const basic_measure<Ops>& triple, law_report& report) {
    ++report.cases;
    auto left = flatten(flatten(triple));
    auto right = flatten(map_nested<Ops>(
        [](const label& l) { return flatten(basic_measure<Ops>::from_label(l)).as_label(); },
        triple));
    if (!(left == right)) report.failures.push_back({"associativity", triple.to_string()});
}

template <class Ops>
basic_measure<Ops> sample_measure(sampler& gen, const finite_space& space);

template <>
inline max_min_measure sample_measure<max_min_ops>(sampler& gen, const finite_space& space) {
    return gen.measure_max_min(space);
}

template <>
inline max_plus_measure sample_measure<max_plus_ops>(sampler& gen, const finite_space& space) {
    return gen.measure_max_plus(space);
}

/// A random finite carrier inside the measure space over `base`.
template <class Ops>
finite_space sample_measure_space(sampler& gen, const finite_space& base) {
    std::size_t count = 1 + gen.rng().below(3);
    std::vector<label> inner;
    for (std::size_t i = 0; i < count; ++i) {
        auto l = sample_measure<Ops>(gen, base).as_label();
        bool seen = false;
        for (const auto& p : inner) seen = seen || p == l;
        if (!seen) inner.push_back(l);
    }
    return finite_space::make(std::move(inner));
}

/// Random element of the twice-iterated measure space over `base`.
template <class Ops>
basic_measure<Ops> sample_nested(sampler& gen, const finite_space& base) {
    return sample_measure<Ops>(gen, sample_measure_space<Ops>(gen, base));
}

/// Random element of the thrice-iterated measure space over `base`. The
/// middle-layer measures share one carrier, as elements of J^2 must.
template <class Ops>
basic_measure<Ops> sample_triple(sampler& gen, const finite_space& base) {
    auto carrier = sample_measure_space<Ops>(gen, base);
    std::size_t count = 1 + gen.rng().below(3);
    std::vector<label> mid;
    for (std::size_t i = 0; i < count; ++i) {
        auto l = sample_measure<Ops>(gen, carrier).as_label();
        bool seen = false;
        for (const auto& p : mid) seen = seen || p == l;
        if (!seen) mid.push_back(l);
    }
    auto space = finite_space::make(std::move(mid));
    return sample_measure<Ops>(gen, space);
}

template <class Ops>
law_report check_monad_laws_impl(const finite_space& base, std::size_t cases, std::uint64_t seed) {
    if (cases < 1) raise(errc::out_of_range, "law suite needs at least one case");
    sampler gen(seed);
    law_report report;
    for (std::size_t i = 0; i < cases; ++i) {
        check_unit_laws(sample_measure<Ops>(gen, base), report);
        check_associativity(sample_triple<Ops>(gen, base), report);
    }
    return report;
}

}  // namespace detail

/// Runs the two unit laws and associativity on seeded random instances.
/// Failures are data, not errors.
inline law_report check_monad_laws(measure_kind kind, const finite_space& base, std::size_t cases,
                                   std::uint64_t seed) {
    return kind == measure_kind::max_min
               ? detail::check_monad_laws_impl<detail::max_min_ops>(base, cases, seed)
               : detail::check_monad_laws_impl<detail::max_plus_ops>(base, cases, seed);
}

/// Exhaustive law check over a two-point base with a fixed weight grid
/// ({-1, 0, top}, plus "absent"): all measures for the unit laws, all
/// nestings with supports of at most two for associativity.
law_report exhaustive_monad_laws(measure_kind kind);

namespace detail {

template <class Ops>
std::vector<basic_measure<Ops>> grid_measures_over(const finite_space& space) {
    std::vector<ext_scalar> grid = {ext_scalar::neg_inf(), ext_scalar(-1), ext_scalar(0)};
    if (!(Ops::top() == ext_scalar(0))) grid.push_back(Ops::top());
    std::vector<basic_measure<Ops>> out;
    std::vector<std::size_t> pick(space.size(), 0);
    while (true) {
        std::vector<ext_scalar> w;
        ext_scalar total = ext_scalar::neg_inf();
        for (std::size_t i = 0; i < space.size(); ++i) {
            w.push_back(grid[pick[i]]);
            total = join(total, w.back());
        }
        if (total == Ops::top()) out.push_back(basic_measure<Ops>::from_weights(space, w));
        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < grid.size()) break;
            pick[i] = 0;
        }
        if (i == pick.size()) break;
    }
    return out;
}

/// Carrier spaces formed from <= 2 of the given labels.
inline std::vector<finite_space> small_carriers(const std::vector<label>& points) {
    std::vector<finite_space> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        out.push_back(finite_space::make({points[i]}));
        for (std::size_t j = i + 1; j < points.size(); ++j)
            out.push_back(finite_space::make({points[i], points[j]}));
    }
    return out;
}

/// Exhaustive unit laws over the 2-point base, and associativity over every
/// triple nesting whose carriers at both iterated levels have <= 2 points,
/// with all weights drawn from {-inf, -1, 0, top}. Within one nesting the
/// middle-layer measures share a carrier, as elements of J^2 must.
template <class Ops>
law_report exhaustive_monad_laws_impl() {
    law_report report;
    auto base = finite_space::make_atoms({"a", "b"});
    auto level1 = grid_measures_over<Ops>(base);
    std::vector<label> level1_labels;
    for (const auto& m : level1) {
        check_unit_laws(m, report);
        level1_labels.push_back(m.as_label());
    }
    for (const auto& carrier : small_carriers(level1_labels)) {
        std::vector<label> level2_labels;
        for (const auto& m : grid_measures_over<Ops>(carrier)) {
            check_unit_laws(m, report);
            level2_labels.push_back(m.as_label());
        }
        for (const auto& mid : small_carriers(level2_labels))
            for (const auto& triple : grid_measures_over<Ops>(mid))
                check_associativity(triple, report);
    }
    return report;
}

}  // namespace detail

inline law_report exhaustive_monad_laws(measure_kind kind) {
    return kind == measure_kind::max_min
               ? detail::exhaustive_monad_laws_impl<detail::max_min_ops>()
               : detail::exhaustive_monad_laws_impl<detail::max_plus_ops>();
}

/// The two sides of the monad-morphism condition for the functor
/// isomorphism induced by alpha, on the three-point witness.
struct counterexample_result {
    max_min_measure lhs;  ///< alpha applied after the max-plus multiplication
    max_min_measure rhs;  ///< max-min multiplication after alpha on both layers
    bool equal;           ///< within the float-boundary tolerance
    std::vector<label> differing;  ///< points where the sides disagree
};

/// Builds X = {a,b,c}, mu = ((-2)+d_a) v d_b, nu = ((-3)+d_b) v d_c and
/// M = ((-1)+d_mu) v d_nu, then compares alpha(zeta(M)) against
/// flatten(alpha-on-both-layers of M). The a-coordinates are alpha(-3) and
/// alpha(-2), so the sides differ for every strictly increasing alpha: no
/// functor isomorphism is a morphism of the two monads.
inline counterexample_result monad_isomorphism_counterexample(
    const order_bijection& alpha = order_bijection::logit_exp(),
    const rat& tolerance = default_tolerance()) {
    alpha.validate();
    auto x = finite_space::make_atoms({"a", "b", "c"});
    auto mu = max_plus_measure::make(x, {{label("a"), ext_scalar(-2)}, {label("b"), ext_scalar(0)}});
    auto nu = max_plus_measure::make(x, {{label("b"), ext_scalar(-3)}, {label("c"), ext_scalar(0)}});
    auto outer_space = finite_space::make({mu.as_label(), nu.as_label()});
    auto outer = max_plus_measure::make(
        outer_space, {{mu.as_label(), ext_scalar(-1)}, {nu.as_label(), ext_scalar(0)}});

    auto apply_alpha = [&](const max_plus_measure& m) {
        std::vector<ext_scalar> w(m.space().size(), ext_scalar::neg_inf());
        for (const auto& a : m.atoms()) w[a.point] = alpha.map(a.weight);
        return max_min_measure::from_weights(m.space(), w);
    };

    // one side: multiply in max-plus, then transport
    auto lhs = apply_alpha(flatten(outer));

    // other side: transport both layers, then multiply in max-min
    auto outer_transported = apply_alpha(outer);
    auto fully_transported = map_nested<detail::max_min_ops>(
        [&](const label& l) { return apply_alpha(max_plus_measure::from_label(l)).as_label(); },
        outer_transported);
    auto rhs = flatten(fully_transported);

    counterexample_result result{lhs, rhs, true, {}};
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!approx_equal(lhs.weight_at(i), rhs.weight_at(i), tolerance)) {
            result.equal = false;
            result.differing.push_back(x.point(i));
        }
    return result;
}

}  // namespace idem
