#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "idem/cone.hpp"
#include "idem/measure.hpp"
#include "idem/scalar.hpp"
#include "idem/space.hpp"

namespace idem {

/// splitmix64: the library's documented pseudo-random contract. A 64-bit
/// seed determines the whole stream, identically on every platform, so any
/// reported law-suite failure can be replayed from its seed.
class splitmix64 {
  public:
    explicit splitmix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n). n = 0 is a contract violation.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  private:
    std::uint64_t state_;
};

/// Seeded generators for every object the property suites draw. Weight and
/// value magnitudes stay small so that (a) all rational arithmetic is far
/// from overflow and (b) float-boundary checks stay well inside tolerance.
class sampler {
  public:
    explicit sampler(std::uint64_t seed) : rng_(seed) {}

    splitmix64& rng() { return rng_; }

    /// Rational in [-6, 6] with denominator from {1,2,3,4,6,8,12}.
    rat small_rat() {
        static const int dens[] = {1, 2, 3, 4, 6, 8, 12};
        int den = dens[rng_.below(7)];
        std::int64_t num = std::int64_t(rng_.below(12 * den + 1)) - 6 * den;
        return rat(num, den);
    }

    /// Rational in (0, 1] with denominator up to 32.
    rat unit_rat_positive() {
        std::int64_t den = 1 + std::int64_t(rng_.below(32));
        std::int64_t num = 1 + std::int64_t(rng_.below(std::uint64_t(den)));
        return rat(num, den);
    }

    /// Rational in [0, 1] with denominator up to 32.
    rat unit_rat() {
        std::int64_t den = 1 + std::int64_t(rng_.below(32));
        std::int64_t num = std::int64_t(rng_.below(std::uint64_t(den) + 1));
        return rat(num, den);
    }

    ext_scalar scalar_any() {
        switch (rng_.below(8)) {
            case 0: return ext_scalar::neg_inf();
            case 1: return ext_scalar::pos_inf();
            default: return ext_scalar(small_rat());
        }
    }

    /// Max-min weight: mostly finite, sometimes +inf, sometimes absent.
    ext_scalar weight_max_min() {
        switch (rng_.below(6)) {
            case 0: return ext_scalar::pos_inf();
            case 1: return ext_scalar::neg_inf();
            default: return ext_scalar(small_rat());
        }
    }

    /// Max-plus weight in [-inf, 0].
    ext_scalar weight_max_plus() {
        switch (rng_.below(6)) {
            case 0: return ext_scalar(rat(0));
            case 1: return ext_scalar::neg_inf();
            default: return ext_scalar(rat(0) - rat::abs(small_rat()));
        }
    }

    finite_space atom_space(std::size_t n) {
        std::vector<label> pts;
        pts.reserve(n);
        for (std::size_t i = 0; i < n; ++i) pts.emplace_back(std::string(1, char('a' + i)));
        return finite_space::make(std::move(pts));
    }

    max_min_measure measure_max_min(const finite_space& space) {
        std::vector<ext_scalar> w(space.size(), ext_scalar::neg_inf());
        for (std::size_t i = 0; i < space.size(); ++i) w[i] = weight_max_min();
        w[rng_.below(space.size())] = ext_scalar::pos_inf();
        return max_min_measure::from_weights(space, w);
    }

    max_plus_measure measure_max_plus(const finite_space& space) {
        std::vector<ext_scalar> w(space.size(), ext_scalar::neg_inf());
        for (std::size_t i = 0; i < space.size(); ++i) w[i] = weight_max_plus();
        w[rng_.below(space.size())] = ext_scalar(rat(0));
        return max_plus_measure::from_weights(space, w);
    }

    test_function function(const finite_space& space) {
        std::vector<rat> v;
        v.reserve(space.size());
        for (std::size_t i = 0; i < space.size(); ++i) v.push_back(small_rat());
        return test_function(space, std::move(v));
    }

    finite_map map(const finite_space& source, const finite_space& target) {
        std::vector<std::uint32_t> img;
        img.reserve(source.size());
        for (std::size_t i = 0; i < source.size(); ++i)
            img.push_back(static_cast<std::uint32_t>(rng_.below(target.size())));
        return finite_map(source, target, std::move(img));
    }

    /// A surjective map; requires |source| >= |target|.
    finite_map surjection(const finite_space& source, const finite_space& target) {
        std::vector<std::uint32_t> img(source.size());
        // hit every target point once, then fill freely
        std::vector<std::uint32_t> slots(source.size());
        for (std::size_t i = 0; i < source.size(); ++i) slots[i] = static_cast<std::uint32_t>(i);
        for (std::size_t i = 0; i + 1 < slots.size(); ++i)
            std::swap(slots[i], slots[i + rng_.below(slots.size() - i)]);
        for (std::size_t t = 0; t < target.size(); ++t) img[slots[t]] = static_cast<std::uint32_t>(t);
        for (std::size_t i = target.size(); i < source.size(); ++i)
            img[slots[i]] = static_cast<std::uint32_t>(rng_.below(target.size()));
        return finite_map(source, target, std::move(img));
    }

    /// A valid metric with diameter <= 1: d(x,y) = r_x + r_y with
    /// r in (0, 1/2], occasionally the discrete metric. Radii share the
    /// denominator 128 so every distance does too.
    finite_metric metric(const finite_space& space) {
        if (rng_.chance(1, 4)) return finite_metric::discrete(space);
        const std::size_t n = space.size();
        std::vector<rat> r;
        r.reserve(n);
        for (std::size_t i = 0; i < n; ++i) r.push_back(rat(1 + std::int64_t(rng_.below(64)), 128));
        std::vector<rat> d(n * n, rat(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) d[i * n + j] = r[i] + r[j];
        std::vector<std::tuple<label, label, rat>> table;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                table.emplace_back(space.point(i), space.point(j), d[i * n + j]);
        return finite_metric::validate(space, table);
    }

    /// A random saturated set: unit heights with small denominators,
    /// some columns empty, at least one column reaching the top.
    threshold_function threshold(const finite_metric& metric) {
        const std::size_t n = metric.space().size();
        std::vector<rat> tau(n, rat(0));
        for (std::size_t i = 0; i < n; ++i)
            if (!rng_.chance(1, 4)) tau[i] = unit_rat();
        tau[rng_.below(n)] = rat(1);
        return threshold_function::make(metric, std::move(tau));
    }

  private:
    splitmix64 rng_;
};

}  // namespace idem
