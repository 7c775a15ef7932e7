#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "idem/errors.hpp"
#include "idem/rational.hpp"

namespace idem {

/// A point of [-inf, +inf]: an exact rational extended by the two
/// infinities. Carrier of all measure weights and function values.
/// Total order: -inf < every finite value < +inf; equality is exact.
class ext_scalar {
  public:
    constexpr ext_scalar() : tag_(tag::finite) {}
    ext_scalar(rat v) : tag_(tag::finite), value_(v) {}             // NOLINT
    ext_scalar(std::int64_t v) : tag_(tag::finite), value_(v) {}    // NOLINT

    static ext_scalar neg_inf() { return ext_scalar(tag::neg_inf); }
    static ext_scalar pos_inf() { return ext_scalar(tag::pos_inf); }

    bool is_finite() const noexcept { return tag_ == tag::finite; }
    bool is_neg_inf() const noexcept { return tag_ == tag::neg_inf; }
    bool is_pos_inf() const noexcept { return tag_ == tag::pos_inf; }

    /// The finite value; callers must check is_finite() first.
    const rat& finite() const {
        if (tag_ != tag::finite) raise(errc::non_finite_value, "expected a finite scalar");
        return value_;
    }

    friend bool operator==(const ext_scalar& a, const ext_scalar& b) noexcept {
        if (a.tag_ != b.tag_) return false;
        return a.tag_ != tag::finite || a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const ext_scalar& a, const ext_scalar& b) noexcept {
        if (a.tag_ != b.tag_) return int(a.tag_) <=> int(b.tag_);
        if (a.tag_ != tag::finite) return std::strong_ordering::equal;
        return a.value_ <=> b.value_;
    }

    double to_double() const noexcept {
        if (tag_ == tag::neg_inf) return -std::numeric_limits<double>::infinity();
        if (tag_ == tag::pos_inf) return std::numeric_limits<double>::infinity();
        return value_.to_double();
    }

    std::string to_string() const {
        if (tag_ == tag::neg_inf) return "-inf";
        if (tag_ == tag::pos_inf) return "inf";
        return value_.to_string();
    }

    /// Parses "inf", "-inf", "n", or "p/q". Strict.
    static ext_scalar parse(std::string_view text) {
        if (text == "inf") return pos_inf();
        if (text == "-inf") return neg_inf();
        return ext_scalar(rat::parse(text));
    }

    static ext_scalar from_double(double x) {
        if (x == std::numeric_limits<double>::infinity()) return pos_inf();
        if (x == -std::numeric_limits<double>::infinity()) return neg_inf();
        return ext_scalar(rat::from_double(x));
    }

  private:
    enum class tag { neg_inf = 0, finite = 1, pos_inf = 2 };
    explicit ext_scalar(tag t) : tag_(t) {}

    tag tag_;
    rat value_;
};

/// Pointwise maximum: the idempotent "addition" shared by both algebras.
inline ext_scalar join(const ext_scalar& a, const ext_scalar& b) { return a >= b ? a : b; }

/// Pointwise minimum: the max-min "multiplication".
inline ext_scalar meet(const ext_scalar& a, const ext_scalar& b) { return a <= b ? a : b; }

/// Extended addition: the max-plus "multiplication". Each infinity absorbs
/// finite partners and itself; adding -inf to +inf is a hard error.
inline ext_scalar translate(const ext_scalar& a, const ext_scalar& b) {
    if (a.is_finite() && b.is_finite()) return ext_scalar(a.finite() + b.finite());
    if ((a.is_neg_inf() && b.is_pos_inf()) || (a.is_pos_inf() && b.is_neg_inf()))
        raise(errc::indeterminate_sum, "cannot add -inf and +inf");
    return a.is_finite() ? b : a;
}

/// |a - b| for finite scalars; 0 when both are the same infinity, +inf when
/// one side is infinite and the other is not.
inline ext_scalar abs_diff(const ext_scalar& a, const ext_scalar& b) {
    if (a.is_finite() && b.is_finite()) return ext_scalar(rat::abs(a.finite() - b.finite()));
    if (a == b) return ext_scalar(rat(0));
    return ext_scalar::pos_inf();
}

/// Equality up to a finite tolerance; infinities must match exactly.
/// This is the comparison used on the float boundary (default 1e-9).
inline bool approx_equal(const ext_scalar& a, const ext_scalar& b, const rat& tol) {
    if (a.is_finite() != b.is_finite()) return false;
    if (!a.is_finite()) return a == b;
    return rat::abs(a.finite() - b.finite()) <= tol;
}

/// 1/10^9, the default float-boundary tolerance.
inline rat default_tolerance() { return rat(1, 1000000000); }

}  // namespace idem
