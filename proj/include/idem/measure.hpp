#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "idem/errors.hpp"
#include "idem/function.hpp"
#include "idem/label.hpp"
#include "idem/scalar.hpp"
#include "idem/space.hpp"

namespace idem {

namespace detail {

/// The max-min algebra: atoms weighted in (-inf, +inf], normalization
/// witness +inf, evaluation mixes weight and value by meet.
struct max_min_ops {
    static constexpr measure_kind kind = measure_kind::max_min;
    static ext_scalar top() { return ext_scalar::pos_inf(); }
    static void check_weight(const ext_scalar&) {}
    static ext_scalar mix(const ext_scalar& w, const ext_scalar& v) { return meet(w, v); }
};

/// The max-plus algebra: atoms weighted in (-inf, 0], normalization
/// witness 0, evaluation mixes by extended addition.
struct max_plus_ops {
    static constexpr measure_kind kind = measure_kind::max_plus;
    static ext_scalar top() { return ext_scalar(rat(0)); }
    static void check_weight(const ext_scalar& w) {
        if (w > ext_scalar(rat(0)))
            raise(errc::weight_above_zero, "max-plus weights must lie in [-inf, 0]");
    }
    static ext_scalar mix(const ext_scalar& w, const ext_scalar& v) { return translate(w, v); }
};

}  // namespace detail

/// A canonical finite-support measure. Construction merges duplicate atoms
/// by join, drops bottom (-inf) atoms, and insists on the normalization
/// join-of-weights = top. Equality is canonical structural equality, which
/// coincides with equality of the evaluation functionals.
template <class Ops>
class basic_measure {
  public:
    static constexpr measure_kind kind = Ops::kind;

    static basic_measure make(const finite_space& space,
                              const std::vector<std::pair<label, ext_scalar>>& atoms) {
        if (atoms.empty()) raise(errc::no_atoms, "a measure needs at least one atom");
        std::vector<ext_scalar> weights(space.size(), ext_scalar::neg_inf());
        for (const auto& [pt, w] : atoms) {
            Ops::check_weight(w);
            auto i = space.require(pt);
            weights[i] = join(weights[i], w);
        }
        return from_weights(space, weights);
    }

    /// Builds directly from a per-point weight vector (absent = -inf).
    static basic_measure from_weights(const finite_space& space,
                                      const std::vector<ext_scalar>& weights) {
        ext_scalar total = ext_scalar::neg_inf();
        for (const auto& w : weights) total = join(total, w);
        if (!(total == Ops::top()))
            raise(errc::not_normalized,
                  std::string("join of weights must be ") + Ops::top().to_string() + " for a " +
                      kind_name(kind) + " measure, got " + total.to_string());
        auto rep = std::make_shared<measure_rep>();
        rep->kind = kind;
        rep->space = space.rep();
        for (std::size_t i = 0; i < weights.size(); ++i) {
            Ops::check_weight(weights[i]);
            if (!weights[i].is_neg_inf())
                rep->atoms.push_back({static_cast<std::uint32_t>(i), weights[i]});
        }
        return basic_measure(space, std::move(rep));
    }

    /// The Dirac measure at x: the single atom with the top weight.
    static basic_measure dirac(const finite_space& space, const label& x) {
        return make(space, {{x, Ops::top()}});
    }

    static basic_measure from_rep(std::shared_ptr<const measure_rep> rep) {
        if (rep->kind != kind) raise(errc::kind_mismatch, "measure payload has the wrong kind");
        auto space = finite_space::from_rep(rep->space);
        return basic_measure(std::move(space), std::move(rep));
    }

    static basic_measure from_label(const label& l) {
        if (!l.is_measure()) raise(errc::kind_mismatch, "label is not a measure");
        return from_rep(l.measure_ptr());
    }

    const finite_space& space() const noexcept { return space_; }
    const std::vector<measure_atom>& atoms() const noexcept { return rep_->atoms; }
    std::size_t atom_count() const noexcept { return rep_->atoms.size(); }

    /// The weight at a point; -inf when the point carries no atom.
    ext_scalar weight(const label& l) const { return weight_at(space_.require(l)); }
    ext_scalar weight_at(std::size_t index) const {
        for (const auto& a : rep_->atoms)
            if (a.point == index) return a.weight;
        return ext_scalar::neg_inf();
    }

    /// Atom points, in space order. Equals the support.
    std::vector<label> support() const {
        std::vector<label> out;
        out.reserve(rep_->atoms.size());
        for (const auto& a : rep_->atoms) out.push_back(space_.point(a.point));
        return out;
    }

    label as_label() const { return label::measure(rep_); }
    const std::shared_ptr<const measure_rep>& rep() const noexcept { return rep_; }

    friend bool operator==(const basic_measure& a, const basic_measure& b) {
        return a.rep_ == b.rep_ || detail::compare_measure(*a.rep_, *b.rep_) == 0;
    }

    std::string to_string() const { return as_label().to_string(); }

  private:
    basic_measure(finite_space space, std::shared_ptr<const measure_rep> rep)
        : space_(std::move(space)), rep_(std::move(rep)) {}

    finite_space space_;
    std::shared_ptr<const measure_rep> rep_;
};

using max_min_measure = basic_measure<detail::max_min_ops>;
using max_plus_measure = basic_measure<detail::max_plus_ops>;

/// Integration of a test function against a measure: the join over atoms of
/// weight-mixed-with-value. Always lands in [min f, max f], hence finite.
template <class Ops>
rat eval(const basic_measure<Ops>& mu, const test_function& f) {
    require_same_space(mu.space(), f.space(), "evaluation needs the function on the measure's space");
    ext_scalar acc = ext_scalar::neg_inf();
    for (const auto& a : mu.atoms()) acc = join(acc, Ops::mix(a.weight, ext_scalar(f.value(a.point))));
    return acc.finite();
}

/// mu v (c /\ nu), the max-min convex combination inside J(X), computed
/// atomwise. The evaluation of the result equals mu(f) v (c /\ nu(f)).
inline max_min_measure combine(const max_min_measure& mu, const ext_scalar& c,
                               const max_min_measure& nu) {
    require_same_space(mu.space(), nu.space(), "combine needs measures on one space");
    std::vector<ext_scalar> w(mu.space().size(), ext_scalar::neg_inf());
    for (const auto& a : mu.atoms()) w[a.point] = a.weight;
    for (const auto& a : nu.atoms()) w[a.point] = join(w[a.point], meet(c, a.weight));
    return max_min_measure::from_weights(mu.space(), w);
}

/// Reconstructs a max-min measure from a black-box functional by probing
/// each point with the two-level function (probe_high at x, probe_low
/// elsewhere). Results equal to a bound are promoted to the matching
/// infinity; anything in between is the finite weight itself. The caller
/// guarantees the true finite weights lie strictly inside (low, high).
inline max_min_measure from_functional(
    const std::function<ext_scalar(const test_function&)>& oracle, const finite_space& space,
    const rat& probe_high, const rat& probe_low) {
    if (!(probe_low < probe_high))
        raise(errc::out_of_range, "probe bounds need low < high");
    std::vector<ext_scalar> weights;
    weights.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        std::vector<rat> vals(space.size(), probe_low);
        vals[i] = probe_high;
        ext_scalar r = oracle(test_function(space, std::move(vals)));
        if (r == ext_scalar(probe_high))
            weights.push_back(ext_scalar::pos_inf());
        else if (r == ext_scalar(probe_low))
            weights.push_back(ext_scalar::neg_inf());
        else
            weights.push_back(r);
    }
    return max_min_measure::from_weights(space, weights);
}

/// Weak* gauge: the largest evaluation gap over a finite probe set.
template <class Ops>
rat weakstar_dist(const basic_measure<Ops>& mu, const basic_measure<Ops>& nu,
                  const std::vector<test_function>& probes) {
    if (probes.empty()) raise(errc::empty_probe_set, "weak* distance needs at least one probe");
    require_same_space(mu.space(), nu.space(), "weak* distance needs measures on one space");
    rat best(0);
    bool first = true;
    for (const auto& f : probes) {
        require_same_space(mu.space(), f.space(), "probe function on the wrong space");
        rat gap = rat::abs(eval(mu, f) - eval(nu, f));
        best = first ? gap : rat::max(best, gap);
        first = false;
    }
    return best;
}

/// Weight-wise comparison up to a finite tolerance (atom sets may differ;
/// a missing atom counts as -inf and only matches -inf).
template <class Ops>
bool approx_equal(const basic_measure<Ops>& a, const basic_measure<Ops>& b, const rat& tol) {
    if (!(a.space() == b.space())) return false;
    for (std::size_t i = 0; i < a.space().size(); ++i)
        if (!approx_equal(a.weight_at(i), b.weight_at(i), tol)) return false;
    return true;
}

}  // namespace idem
