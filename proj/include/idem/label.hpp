#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "idem/errors.hpp"
#include "idem/scalar.hpp"

namespace idem {

/// Which of the two measure algebras a weight vector belongs to.
enum class measure_kind { max_min, max_plus };

inline const char* kind_name(measure_kind k) {
    return k == measure_kind::max_min ? "max-min" : "max-plus";
}

class label;
struct pair_rep;
struct tuple_rep;
struct space_rep;
struct measure_rep;

/// A point of a finite space. Points are opaque comparable values: plain
/// atoms (strings), ordered pairs (product spaces), coordinate tuples
/// (subsets of R^n), or canonical measures (iterated measure spaces).
/// Immutable and cheaply copyable; the total order is structural.
class label {
  public:
    explicit label(std::string atom) : v_(std::move(atom)) {}
    explicit label(const char* atom) : v_(std::string(atom)) {}

    static label pair(label first, label second);
    static label tuple(std::vector<rat> coords);
    static label measure(std::shared_ptr<const measure_rep> m);

    bool is_atom() const noexcept { return v_.index() == 0; }
    bool is_pair() const noexcept { return v_.index() == 1; }
    bool is_tuple() const noexcept { return v_.index() == 2; }
    bool is_measure() const noexcept { return v_.index() == 3; }

    const std::string& atom() const { return std::get<0>(v_); }
    const label& first() const;
    const label& second() const;
    const std::vector<rat>& coords() const;
    const std::shared_ptr<const measure_rep>& measure_ptr() const { return std::get<3>(v_); }

    int compare(const label& other) const;
    friend bool operator==(const label& a, const label& b) { return a.compare(b) == 0; }
    friend bool operator<(const label& a, const label& b) { return a.compare(b) < 0; }

    /// Human-readable rendering, used in diagnostics.
    std::string to_string() const;

  private:
    std::variant<std::string, std::shared_ptr<const pair_rep>, std::shared_ptr<const tuple_rep>,
                 std::shared_ptr<const measure_rep>>
        v_;
};

struct pair_rep {
    label first;
    label second;
};

struct tuple_rep {
    std::vector<rat> coords;
};

/// Shared payload of a finite space: distinct points in a fixed order,
/// plus an index sorted by label for point lookup.
struct space_rep {
    std::vector<label> points;
    std::vector<std::uint32_t> order;  // point indices sorted by label

    std::optional<std::size_t> index_of(const label& l) const {
        std::size_t lo = 0, hi = order.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            int c = points[order[mid]].compare(l);
            if (c == 0) return order[mid];
            if (c < 0)
                lo = mid + 1;
            else
                hi = mid;
        }
        return std::nullopt;
    }
};

/// Atom of a canonical measure: a point index into the space plus its weight.
struct measure_atom {
    std::uint32_t point;
    ext_scalar weight;
};

/// Shared payload of a canonical measure. Atoms are sorted by point index,
/// carry no bottom (-inf) entries, and satisfy the kind's normalization
/// (join of weights = +inf for max-min, = 0 for max-plus).
struct measure_rep {
    measure_kind kind;
    std::shared_ptr<const space_rep> space;
    std::vector<measure_atom> atoms;
};

namespace detail {

inline int cmp3(int c) { return c < 0 ? -1 : (c > 0 ? 1 : 0); }

inline int compare_rat(const rat& a, const rat& b) {
    auto c = a <=> b;
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

inline int compare_scalar(const ext_scalar& a, const ext_scalar& b) {
    auto c = a <=> b;
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

int compare_space(const space_rep& a, const space_rep& b);
int compare_measure(const measure_rep& a, const measure_rep& b);

}  // namespace detail

inline label label::pair(label first, label second) {
    label l("");
    l.v_ = std::make_shared<const pair_rep>(pair_rep{std::move(first), std::move(second)});
    return l;
}

inline label label::tuple(std::vector<rat> coords) {
    label l("");
    l.v_ = std::make_shared<const tuple_rep>(tuple_rep{std::move(coords)});
    return l;
}

inline label label::measure(std::shared_ptr<const measure_rep> m) {
    label l("");
    l.v_ = std::move(m);
    return l;
}

inline const label& label::first() const { return std::get<1>(v_)->first; }
inline const label& label::second() const { return std::get<1>(v_)->second; }
inline const std::vector<rat>& label::coords() const { return std::get<2>(v_)->coords; }

inline int label::compare(const label& other) const {
    if (v_.index() != other.v_.index()) return v_.index() < other.v_.index() ? -1 : 1;
    switch (v_.index()) {
        case 0:
            return detail::cmp3(atom().compare(other.atom()));
        case 1: {
            int c = first().compare(other.first());
            return c != 0 ? c : second().compare(other.second());
        }
        case 2: {
            const auto& a = coords();
            const auto& b = other.coords();
            if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (int c = detail::compare_rat(a[i], b[i]); c != 0) return c;
            return 0;
        }
        default: {
            const auto& a = *measure_ptr();
            const auto& b = *other.measure_ptr();
            if (&a == &b) return 0;
            return detail::compare_measure(a, b);
        }
    }
}

namespace detail {

inline int compare_space(const space_rep& a, const space_rep& b) {
    if (&a == &b) return 0;
    if (a.points.size() != b.points.size()) return a.points.size() < b.points.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.points.size(); ++i)
        if (int c = a.points[i].compare(b.points[i]); c != 0) return c;
    return 0;
}

inline int compare_measure(const measure_rep& a, const measure_rep& b) {
    if (a.kind != b.kind) return int(a.kind) < int(b.kind) ? -1 : 1;
    if (int c = compare_space(*a.space, *b.space); c != 0) return c;
    if (a.atoms.size() != b.atoms.size()) return a.atoms.size() < b.atoms.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.atoms.size(); ++i) {
        if (a.atoms[i].point != b.atoms[i].point) return a.atoms[i].point < b.atoms[i].point ? -1 : 1;
        if (int c = compare_scalar(a.atoms[i].weight, b.atoms[i].weight); c != 0) return c;
    }
    return 0;
}

}  // namespace detail

inline std::string label::to_string() const {
    switch (v_.index()) {
        case 0:
            return atom();
        case 1:
            return "(" + first().to_string() + "," + second().to_string() + ")";
        case 2: {
            std::string s = "<";
            for (std::size_t i = 0; i < coords().size(); ++i) {
                if (i) s += ",";
                s += coords()[i].to_string();
            }
            return s + ">";
        }
        default: {
            const auto& m = *measure_ptr();
            std::string s = m.kind == measure_kind::max_min ? "mm{" : "mp{";
            for (std::size_t i = 0; i < m.atoms.size(); ++i) {
                if (i) s += ",";
                s += m.space->points[m.atoms[i].point].to_string() + ":" + m.atoms[i].weight.to_string();
            }
            return s + "}";
        }
    }
}

}  // namespace idem
