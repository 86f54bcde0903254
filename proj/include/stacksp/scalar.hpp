#pragma once

#include <cctype>
#include <compare>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include "stacksp/errors.hpp"

namespace stacksp {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// Decimal digits to an integer; a leading 0 must not select octal.
inline BigInt decimal(std::string_view digits) {
    auto nz = digits.find_first_not_of('0');
    return nz == std::string_view::npos ? BigInt(0) : BigInt(std::string(digits.substr(nz)));
}

} // namespace detail

// Parses "n", "-n", "a/b" or a plain decimal "x.yz" into an exact rational.
// Throws InputError on anything else (including a zero denominator).
inline Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    Rational value;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!detail::all_digits(num) || !detail::all_digits(den))
            throw InputError("malformed rational '" + std::string(text) + "'");
        BigInt d = detail::decimal(den);
        if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
        value = Rational(detail::decimal(num), d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto whole = body.substr(0, dot);
        auto frac = body.substr(dot + 1);
        if ((!whole.empty() && !detail::all_digits(whole)) || !detail::all_digits(frac))
            throw InputError("malformed decimal '" + std::string(text) + "'");
        BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
        BigInt num = detail::decimal(std::string(whole) + std::string(frac));
        value = Rational(num, scale);
    } else {
        if (!detail::all_digits(body))
            throw InputError("malformed number '" + std::string(text) + "'");
        value = Rational(detail::decimal(body));
    }
    return negative ? Rational(-value) : value;
}

// Lowest-terms text form: "3/2", "4", "0".
inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// A nonnegative exact rational, or the distinguished value INF (prices only).
class Scalar {
  public:
    Scalar() = default;

    Scalar(Rational value) : value_(std::move(value)) {
        if (value_ < 0) throw InputError("negative value " + stacksp::to_string(value_));
    }

    Scalar(long value) : Scalar(Rational(value)) {}

    static Scalar infinity() {
        Scalar s;
        s.inf_ = true;
        return s;
    }

    static Scalar parse(std::string_view text) {
        if (text == "inf" || text == "INF") return infinity();
        return Scalar(parse_rational(text));
    }

    [[nodiscard]] bool is_inf() const noexcept { return inf_; }
    [[nodiscard]] bool is_finite() const noexcept { return !inf_; }

    [[nodiscard]] const Rational& value() const {
        if (inf_) throw InputError("value of INF requested");
        return value_;
    }

    [[nodiscard]] std::string str() const { return inf_ ? "inf" : stacksp::to_string(value_); }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.value_ == b.value_;
    }

    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
        if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (b.value_ < a.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

  private:
    Rational value_{0};
    bool inf_ = false;
};

inline std::string to_string(const Scalar& s) { return s.str(); }

// Smallest integer >= r.
inline BigInt ceil(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);
    if (q * denominator(r) < numerator(r)) ++q;
    return q;
}

} // namespace stacksp
