#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "idem/errors.hpp"

namespace idem {

/// Exact rational on checked 64-bit storage. Always normalized: den > 0,
/// gcd(|num|, den) = 1. Intermediates run in 128 bits; a result that does
/// not fit back into 64 bits raises errc::overflow instead of wrapping.
class rat {
  public:
    constexpr rat() = default;
    constexpr rat(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    rat(std::int64_t n, std::int64_t d) {
        if (d == 0) raise(errc::parse_error, "rational with zero denominator");
        i128 nn = n, dd = d;
        if (dd < 0) { nn = -nn; dd = -dd; }
        *this = reduce(nn, dd);
    }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    bool is_integer() const noexcept { return den_ == 1; }
    bool is_zero() const noexcept { return num_ == 0; }
    bool is_negative() const noexcept { return num_ < 0; }
    bool is_positive() const noexcept { return num_ > 0; }

    friend rat operator+(const rat& a, const rat& b) {
        return reduce(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend rat operator-(const rat& a, const rat& b) {
        return reduce(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend rat operator*(const rat& a, const rat& b) {
        return reduce(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend rat operator/(const rat& a, const rat& b) {
        if (b.num_ == 0) raise(errc::out_of_range, "division by zero rational");
        i128 nn = i128(a.num_) * b.den_, dd = i128(a.den_) * b.num_;
        if (dd < 0) { nn = -nn; dd = -dd; }
        return reduce(nn, dd);
    }
    rat operator-() const {
        rat r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    rat& operator+=(const rat& o) { return *this = *this + o; }
    rat& operator-=(const rat& o) { return *this = *this - o; }
    rat& operator*=(const rat& o) { return *this = *this * o; }

    friend bool operator==(const rat& a, const rat& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const rat& a, const rat& b) noexcept {
        return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
    }

    double to_double() const noexcept { return double(num_) / double(den_); }

    /// "p/q" for proper fractions, plain decimal integer otherwise.
    std::string to_string() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "n" or "p/q". Strict: no whitespace, no empty parts.
    static rat parse(std::string_view text) {
        auto bad = [&] { raise(errc::schema_error, "malformed rational '" + std::string(text) + "'"); };
        auto slash = text.find('/');
        std::string_view np = text.substr(0, slash);
        std::int64_t n = parse_int(np, bad);
        if (slash == std::string_view::npos) return rat(n);
        std::string_view dp = text.substr(slash + 1);
        std::int64_t d = parse_int(dp, bad);
        if (d <= 0) bad();
        return rat(n, d);
    }

    /// Nearest rational with denominator 2^40. This is the library's float
    /// boundary: conversions from transcendental evaluations land here, so
    /// every stored weight is still an exact rational, accurate to ~5e-13.
    /// Inputs beyond |x| = 2^22 raise errc::overflow.
    static rat from_double(double x) {
        if (!std::isfinite(x)) raise(errc::non_finite_value, "non-finite double at the rational boundary");
        if (std::abs(x) > 4194304.0) raise(errc::overflow, "double too large for the dyadic snap");
        const double scaled = x * 1099511627776.0;  // 2^40
        return reduce(i128(std::llround(scaled)), i128(1) << 40);
    }

    static rat abs(const rat& a) { return a.num_ < 0 ? -a : a; }
    static rat min(const rat& a, const rat& b) { return a <= b ? a : b; }
    static rat max(const rat& a, const rat& b) { return a >= b ? a : b; }

  private:
    using i128 = __int128;

    static i128 gcd_u(i128 a, i128 b) {
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static rat reduce(i128 n, i128 d) {
        i128 g = gcd_u(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr i128 lo = std::numeric_limits<std::int64_t>::min();
        constexpr i128 hi = std::numeric_limits<std::int64_t>::max();
        if (n < lo || n > hi || d > hi)
            raise(errc::overflow, "rational out of 64-bit range");
        rat r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    template <class Fail>
    static std::int64_t parse_int(std::string_view s, Fail bad) {
        bool neg = false;
        std::size_t i = 0;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) { neg = s[i] == '-'; ++i; }
        if (i == s.size()) bad();
        i128 v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') bad();
            v = v * 10 + (s[i] - '0');
            if (v > i128(std::numeric_limits<std::int64_t>::max())) bad();
        }
        return static_cast<std::int64_t>(neg ? -v : v);
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace idem
