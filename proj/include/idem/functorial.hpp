#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "idem/errors.hpp"
#include "idem/function.hpp"
#include "idem/measure.hpp"
#include "idem/space.hpp"

namespace idem {

/// Image measure along a map: the weight at y is the join of the weights
/// over the fiber of y. Satisfies eval(pushforward(f, mu), g) = eval(mu, g o f).
template <class Ops>
basic_measure<Ops> pushforward(const finite_map& f, const basic_measure<Ops>& mu) {
    require_same_space(mu.space(), f.source(), "pushforward needs the measure on f's source");
    std::vector<ext_scalar> w(f.target().size(), ext_scalar::neg_inf());
    for (const auto& a : mu.atoms()) {
        auto t = f.image_index(a.point);
        w[t] = join(w[t], a.weight);
    }
    return basic_measure<Ops>::from_weights(f.target(), w);
}

/// Relabels a measure's points through an arbitrary label function and
/// join-merges collisions. The result lives on the image space, points
/// ordered by first occurrence.
template <class Ops>
basic_measure<Ops> relabel(const basic_measure<Ops>& mu,
                           const std::function<label(const label&)>& f) {
    std::vector<label> image_points;
    std::vector<ext_scalar> image_weights;
    for (const auto& a : mu.atoms()) {
        label target = f(mu.space().point(a.point));
        bool merged = false;
        for (std::size_t i = 0; i < image_points.size(); ++i)
            if (image_points[i] == target) {
                image_weights[i] = join(image_weights[i], a.weight);
                merged = true;
                break;
            }
        if (!merged) {
            image_points.push_back(std::move(target));
            image_weights.push_back(a.weight);
        }
    }
    auto space = finite_space::make(std::move(image_points));
    return basic_measure<Ops>::from_weights(space, image_weights);
}

/// Tensor product of max-min measures: the atom at (x,y) carries the meet
/// of the marginal weights. Normalization is automatic.
inline max_min_measure tensor(const max_min_measure& mu, const max_min_measure& nu,
                              const product_space& prod) {
    std::vector<ext_scalar> w(prod.space.size(), ext_scalar::neg_inf());
    for (const auto& a : mu.atoms())
        for (const auto& b : nu.atoms()) {
            auto idx = prod.space.require(
                label::pair(mu.space().point(a.point), nu.space().point(b.point)));
            w[idx] = join(w[idx], meet(a.weight, b.weight));
        }
    return max_min_measure::from_weights(prod.space, w);
}

inline max_min_measure tensor(const max_min_measure& mu, const max_min_measure& nu) {
    return tensor(mu, nu, product(mu.space(), nu.space()));
}

/// Max-plus analogue: the atom at (x,y) carries the sum of the marginal
/// weights. Mirrors the max-min construction with translation as the mix.
inline max_plus_measure tensor(const max_plus_measure& mu, const max_plus_measure& nu,
                               const product_space& prod) {
    std::vector<ext_scalar> w(prod.space.size(), ext_scalar::neg_inf());
    for (const auto& a : mu.atoms())
        for (const auto& b : nu.atoms()) {
            auto idx = prod.space.require(
                label::pair(mu.space().point(a.point), nu.space().point(b.point)));
            w[idx] = join(w[idx], translate(a.weight, b.weight));
        }
    return max_plus_measure::from_weights(prod.space, w);
}

inline max_plus_measure tensor(const max_plus_measure& mu, const max_plus_measure& nu) {
    return tensor(mu, nu, product(mu.space(), nu.space()));
}

/// A section of a surjection f: Z -> X into the max-min measures of Z:
/// each target point x gets a measure living on the fiber over x. This is
/// the finite-scale form of a Milyutin map's section.
class measure_section {
  public:
    measure_section(finite_map f, std::vector<max_min_measure> values)
        : f_(std::move(f)), values_(std::move(values)) {
        if (!f_.is_surjective())
            raise(errc::unknown_point, "a section needs a surjective map");
        if (values_.size() != f_.target().size())
            raise(errc::unknown_point, "a section needs a measure for every target point");
        for (std::size_t x = 0; x < values_.size(); ++x) {
            require_same_space(values_[x].space(), f_.source(),
                               "section measures must live on the map's source");
            for (const auto& a : values_[x].atoms())
                if (f_.image_index(a.point) != x)
                    raise(errc::unknown_point,
                          "section measure at '" + f_.target().point(x).to_string() +
                              "' has support outside the fiber");
        }
    }

    static measure_section make(const finite_map& f,
                                const std::vector<std::pair<label, max_min_measure>>& values) {
        std::vector<std::optional<max_min_measure>> v(f.target().size());
        for (const auto& [pt, m] : values) {
            auto i = f.target().require(pt);
            v[i] = m;
        }
        std::vector<max_min_measure> out;
        out.reserve(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i])
                raise(errc::unknown_point, "no section measure for target point '" +
                                               f.target().point(i).to_string() + "'");
            out.push_back(*std::move(v[i]));
        }
        return measure_section(f, std::move(out));
    }

    const finite_map& map() const noexcept { return f_; }
    const max_min_measure& at_index(std::size_t x) const { return values_[x]; }
    const max_min_measure& at(const label& x) const { return values_[f_.target().require(x)]; }

  private:
    finite_map f_;
    std::vector<max_min_measure> values_;
};

/// Averaging of a function on Z with respect to a section: the value at x
/// is the section measure's integral of the function.
inline test_function average(const measure_section& s, const test_function& f) {
    require_same_space(f.space(), s.map().source(), "average needs the function on the map's source");
    std::vector<rat> v;
    v.reserve(s.map().target().size());
    for (std::size_t x = 0; x < s.map().target().size(); ++x) v.push_back(eval(s.at_index(x), f));
    return test_function(s.map().target(), std::move(v));
}

/// Lifts a measure on X through a section into a measure on Z: the join
/// over atoms (x, c) of c /\ s(x), computed atomwise. The result pushes
/// forward to the original measure; this is verified before returning.
inline max_min_measure section_lift(const max_min_measure& mu, const measure_section& s) {
    require_same_space(mu.space(), s.map().target(), "lift needs the measure on the map's target");
    std::vector<ext_scalar> w(s.map().source().size(), ext_scalar::neg_inf());
    for (const auto& a : mu.atoms())
        for (const auto& b : s.at_index(a.point).atoms())
            w[b.point] = join(w[b.point], meet(a.weight, b.weight));
    auto lifted = max_min_measure::from_weights(s.map().source(), w);
    if (!(pushforward(s.map(), lifted) == mu))
        throw std::logic_error("section_lift postcondition failed: pushforward differs");
    return lifted;
}

}  // namespace idem
