#pragma once

#include <utility>
#include <vector>

#include "idem/errors.hpp"
#include "idem/scalar.hpp"
#include "idem/space.hpp"

namespace idem {

/// A total real-valued function on a finite space (an element of C(X)).
/// Values are exact rationals; finiteness is part of the type.
class test_function {
  public:
    test_function(finite_space space, std::vector<rat> values)
        : space_(std::move(space)), values_(std::move(values)) {
        if (values_.size() != space_.size())
            raise(errc::unknown_point, "function must assign a value to every point");
    }

    static test_function make(const finite_space& space,
                              const std::vector<std::pair<label, rat>>& values) {
        std::vector<std::optional<rat>> v(space.size());
        for (const auto& [pt, val] : values) {
            auto i = space.require(pt);
            if (v[i] && *v[i] != val)
                raise(errc::duplicate_label, "conflicting values for '" + pt.to_string() + "'");
            v[i] = val;
        }
        std::vector<rat> out;
        out.reserve(space.size());
        for (std::size_t i = 0; i < space.size(); ++i) {
            if (!v[i])
                raise(errc::unknown_point,
                      "no value for point '" + space.point(i).to_string() + "'");
            out.push_back(*v[i]);
        }
        return test_function(space, std::move(out));
    }

    static test_function constant(const finite_space& space, const rat& c) {
        return test_function(space, std::vector<rat>(space.size(), c));
    }

    const finite_space& space() const noexcept { return space_; }
    const std::vector<rat>& values() const noexcept { return values_; }
    const rat& value(std::size_t i) const { return values_[i]; }
    const rat& at(const label& l) const { return values_[space_.require(l)]; }

    rat min_value() const {
        rat m = values_[0];
        for (const auto& v : values_) m = rat::min(m, v);
        return m;
    }
    rat max_value() const {
        rat m = values_[0];
        for (const auto& v : values_) m = rat::max(m, v);
        return m;
    }

    friend bool operator==(const test_function& a, const test_function& b) {
        return a.space_ == b.space_ && a.values_ == b.values_;
    }

  private:
    finite_space space_;
    std::vector<rat> values_;
};

inline test_function join(const test_function& a, const test_function& b) {
    require_same_space(a.space(), b.space(), "pointwise join needs a common space");
    std::vector<rat> v;
    v.reserve(a.values().size());
    for (std::size_t i = 0; i < a.values().size(); ++i) v.push_back(rat::max(a.value(i), b.value(i)));
    return test_function(a.space(), std::move(v));
}

inline test_function meet(const test_function& a, const test_function& b) {
    require_same_space(a.space(), b.space(), "pointwise meet needs a common space");
    std::vector<rat> v;
    v.reserve(a.values().size());
    for (std::size_t i = 0; i < a.values().size(); ++i) v.push_back(rat::min(a.value(i), b.value(i)));
    return test_function(a.space(), std::move(v));
}

/// c /\ f, truncation from above by a constant.
inline test_function meet(const rat& c, const test_function& f) {
    std::vector<rat> v;
    v.reserve(f.values().size());
    for (const auto& x : f.values()) v.push_back(rat::min(c, x));
    return test_function(f.space(), std::move(v));
}

inline test_function join(const rat& c, const test_function& f) {
    std::vector<rat> v;
    v.reserve(f.values().size());
    for (const auto& x : f.values()) v.push_back(rat::max(c, x));
    return test_function(f.space(), std::move(v));
}

/// f + c. Translation is only defined for finite constants.
inline test_function translate(const test_function& f, const rat& c) {
    std::vector<rat> v;
    v.reserve(f.values().size());
    for (const auto& x : f.values()) v.push_back(x + c);
    return test_function(f.space(), std::move(v));
}

/// Extended-scalar entry point for translation; rejects infinite shifts.
inline test_function translate(const test_function& f, const ext_scalar& c) {
    if (!c.is_finite())
        raise(errc::non_finite_translate, "translation constant must be finite");
    return translate(f, c.finite());
}

/// f o g, precomposition along a map into f's space.
inline test_function precompose(const test_function& f, const finite_map& g) {
    require_same_space(f.space(), g.target(), "precompose needs g.target = f.space");
    std::vector<rat> v;
    v.reserve(g.source().size());
    for (std::size_t i = 0; i < g.source().size(); ++i) v.push_back(f.value(g.image_index(i)));
    return test_function(g.source(), std::move(v));
}

inline bool pointwise_leq(const test_function& a, const test_function& b) {
    require_same_space(a.space(), b.space(), "pointwise comparison needs a common space");
    for (std::size_t i = 0; i < a.values().size(); ++i)
        if (a.value(i) > b.value(i)) return false;
    return true;
}

}  // namespace idem
