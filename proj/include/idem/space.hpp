#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "idem/errors.hpp"
#include "idem/label.hpp"
#include "idem/rational.hpp"

namespace idem {

/// A nonempty finite space: an ordered sequence of pairwise distinct points.
/// Value type over a shared immutable payload; equality is structural.
class finite_space {
  public:
    /// Builds a space, rejecting duplicates and the empty list.
    static finite_space make(std::vector<label> points) {
        if (points.empty()) raise(errc::empty_space, "a finite space needs at least one point");
        auto rep = std::make_shared<space_rep>();
        rep->points = std::move(points);
        rep->order.resize(rep->points.size());
        std::iota(rep->order.begin(), rep->order.end(), 0u);
        std::sort(rep->order.begin(), rep->order.end(), [&](std::uint32_t a, std::uint32_t b) {
            return rep->points[a] < rep->points[b];
        });
        for (std::size_t i = 1; i < rep->order.size(); ++i)
            if (rep->points[rep->order[i - 1]] == rep->points[rep->order[i]])
                raise(errc::duplicate_label,
                      "duplicate point '" + rep->points[rep->order[i]].to_string() + "'");
        return finite_space(std::move(rep));
    }

    static finite_space make_atoms(const std::vector<std::string>& names) {
        std::vector<label> pts;
        pts.reserve(names.size());
        for (const auto& n : names) pts.emplace_back(n);
        return make(std::move(pts));
    }

    std::size_t size() const noexcept { return rep_->points.size(); }
    const std::vector<label>& points() const noexcept { return rep_->points; }
    const label& point(std::size_t i) const { return rep_->points[i]; }
    std::optional<std::size_t> index_of(const label& l) const { return rep_->index_of(l); }
    bool contains(const label& l) const { return rep_->index_of(l).has_value(); }

    /// Index of a point that must exist; errc::unknown_point otherwise.
    std::size_t require(const label& l) const {
        auto i = rep_->index_of(l);
        if (!i) raise(errc::unknown_point, "point '" + l.to_string() + "' is not in the space");
        return *i;
    }

    const std::shared_ptr<const space_rep>& rep() const noexcept { return rep_; }

    /// Wraps an existing payload. Only reps produced by make() circulate,
    /// so the invariants are already established.
    static finite_space from_rep(std::shared_ptr<const space_rep> rep) {
        return finite_space(std::move(rep));
    }

    friend bool operator==(const finite_space& a, const finite_space& b) {
        return a.rep_ == b.rep_ || detail::compare_space(*a.rep_, *b.rep_) == 0;
    }

  private:
    explicit finite_space(std::shared_ptr<const space_rep> rep) : rep_(std::move(rep)) {}

    std::shared_ptr<const space_rep> rep_;
};

inline void require_same_space(const finite_space& a, const finite_space& b, const char* what) {
    if (!(a == b)) raise(errc::mismatched_spaces, what);
}

/// A total map between finite spaces, stored as target indices per source
/// point. Maps compose associatively and have identity units.
class finite_map {
  public:
    finite_map(finite_space source, finite_space target, std::vector<std::uint32_t> image)
        : source_(std::move(source)), target_(std::move(target)), image_(std::move(image)) {
        if (image_.size() != source_.size())
            raise(errc::unknown_point, "map must assign every source point");
        for (auto t : image_)
            if (t >= target_.size()) raise(errc::unknown_point, "map image outside target space");
    }

    /// Builds from explicit (source point, target point) assignments.
    static finite_map make(const finite_space& source, const finite_space& target,
                           const std::vector<std::pair<label, label>>& assignment) {
        std::vector<std::optional<std::uint32_t>> img(source.size());
        for (const auto& [from, to] : assignment) {
            auto si = source.require(from);
            auto ti = target.require(to);
            if (img[si] && *img[si] != ti)
                raise(errc::duplicate_label, "conflicting assignment for '" + from.to_string() + "'");
            img[si] = static_cast<std::uint32_t>(ti);
        }
        std::vector<std::uint32_t> image;
        image.reserve(source.size());
        for (std::size_t i = 0; i < source.size(); ++i) {
            if (!img[i])
                raise(errc::unknown_point,
                      "no assignment for source point '" + source.point(i).to_string() + "'");
            image.push_back(*img[i]);
        }
        return finite_map(source, target, std::move(image));
    }

    static finite_map identity(const finite_space& space) {
        std::vector<std::uint32_t> img(space.size());
        std::iota(img.begin(), img.end(), 0u);
        return finite_map(space, space, std::move(img));
    }

    const finite_space& source() const noexcept { return source_; }
    const finite_space& target() const noexcept { return target_; }
    std::uint32_t image_index(std::size_t i) const { return image_[i]; }
    const label& operator()(const label& l) const { return target_.point(image_[source_.require(l)]); }

    bool is_surjective() const {
        std::vector<bool> hit(target_.size(), false);
        for (auto t : image_) hit[t] = true;
        return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    }

    friend bool operator==(const finite_map& a, const finite_map& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.image_ == b.image_;
    }

  private:
    finite_space source_;
    finite_space target_;
    std::vector<std::uint32_t> image_;
};

/// g after f. The categorical composition used by functor law checks.
inline finite_map compose(const finite_map& f, const finite_map& g) {
    if (!(f.target() == g.source()))
        raise(errc::mismatched_spaces, "compose needs f.target = g.source");
    std::vector<std::uint32_t> img(f.source().size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = g.image_index(f.image_index(i));
    return finite_map(f.source(), g.target(), std::move(img));
}

/// Product space with its two coordinate projections.
struct product_space {
    finite_space space;
    finite_map proj_left;
    finite_map proj_right;
};

/// Cartesian product; points are pairs in lexicographic order of the inputs.
inline product_space product(const finite_space& x, const finite_space& y) {
    std::vector<label> pts;
    std::vector<std::uint32_t> to_left, to_right;
    pts.reserve(x.size() * y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) {
            pts.push_back(label::pair(x.point(i), y.point(j)));
            to_left.push_back(static_cast<std::uint32_t>(i));
            to_right.push_back(static_cast<std::uint32_t>(j));
        }
    auto space = finite_space::make(std::move(pts));
    return product_space{space, finite_map(space, x, std::move(to_left)),
                         finite_map(space, y, std::move(to_right))};
}

/// f x g acting componentwise between product spaces.
inline finite_map product_map(const finite_map& f, const finite_map& g,
                              const product_space& src, const product_space& dst) {
    std::vector<std::uint32_t> img;
    img.reserve(src.space.size());
    for (std::size_t i = 0; i < src.space.size(); ++i) {
        const auto& p = src.space.point(i);
        auto ti = dst.space.require(label::pair(f(p.first()), g(p.second())));
        img.push_back(static_cast<std::uint32_t>(ti));
    }
    return finite_map(src.space, dst.space, std::move(img));
}

/// A metric on a finite space with diameter at most 1, validated eagerly:
/// symmetry, positivity off the diagonal, the triangle inequality, and the
/// diameter bound. Distances are exact rationals.
class finite_metric {
  public:
    /// Validates a full unordered-pair table. Omitted pairs are an error.
    static finite_metric validate(const finite_space& space,
                                  const std::vector<std::tuple<label, label, rat>>& table) {
        const std::size_t n = space.size();
        std::vector<std::optional<rat>> d(n * n);
        for (std::size_t i = 0; i < n; ++i) d[i * n + i] = rat(0);
        for (const auto& [a, b, v] : table) {
            auto ia = space.require(a);
            auto ib = space.require(b);
            if (ia == ib) {
                if (!v.is_zero()) raise(errc::non_positive_distance, "d(x,x) must be 0");
                continue;
            }
            auto& fwd = d[ia * n + ib];
            auto& bwd = d[ib * n + ia];
            if ((fwd && *fwd != v) || (bwd && *bwd != v))
                raise(errc::symmetry_violation,
                      "conflicting distances for {" + a.to_string() + "," + b.to_string() + "}");
            fwd = v;
            bwd = v;
        }
        std::vector<rat> full;
        full.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (!d[i * n + j])
                    raise(errc::missing_distance, "no distance for {" + space.point(i).to_string() +
                                                      "," + space.point(j).to_string() + "}");
                full.push_back(*d[i * n + j]);
            }
        return validate_full(space, std::move(full));
    }

    /// The 0/1 metric; always valid, used when no geometry is supplied.
    static finite_metric discrete(const finite_space& space) {
        const std::size_t n = space.size();
        std::vector<rat> d(n * n, rat(1));
        for (std::size_t i = 0; i < n; ++i) d[i * n + i] = rat(0);
        return finite_metric(space, std::move(d));
    }

    const finite_space& space() const noexcept { return space_; }
    const rat& operator()(std::size_t i, std::size_t j) const { return d_[i * space_.size() + j]; }
    const rat& at(const label& a, const label& b) const {
        return (*this)(space_.require(a), space_.require(b));
    }

    friend bool operator==(const finite_metric& a, const finite_metric& b) {
        return a.space_ == b.space_ && a.d_ == b.d_;
    }

  private:
    static finite_metric validate_full(const finite_space& space, std::vector<rat> d) {
        const std::size_t n = space.size();
        const rat one(1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j && !d[i * n + j].is_positive())
                    raise(errc::non_positive_distance,
                          "d must be positive for distinct points " + space.point(i).to_string() +
                              "," + space.point(j).to_string());
                if (d[i * n + j] != d[j * n + i]) raise(errc::symmetry_violation, "d is not symmetric");
                if (d[i * n + j] > one) raise(errc::diameter_exceeds_one, "diameter exceeds 1");
            }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (d[i * n + j] > d[i * n + k] + d[k * n + j])
                        raise(errc::triangle_violation,
                              "triangle inequality fails on (" + space.point(i).to_string() + "," +
                                  space.point(j).to_string() + "," + space.point(k).to_string() + ")");
        return finite_metric(space, std::move(d));
    }

    finite_metric(finite_space space, std::vector<rat> d)
        : space_(std::move(space)), d_(std::move(d)) {}

    finite_space space_;
    std::vector<rat> d_;
};

}  // namespace idem
