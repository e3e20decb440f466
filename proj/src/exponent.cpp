#include "twistaff/exponent.hpp"

#include <charconv>
#include <numeric>

#include "twistaff/error.hpp"

namespace twistaff {

namespace {

std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::domain, "degree arithmetic overflow");
    return r;
}

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::domain, "degree arithmetic overflow");
    return r;
}

std::int64_t parse_int(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
        fail(ErrorKind::config, "bad rational literal '" + std::string(s) + "'");
    return v;
}

}  // namespace

RationalExponent::RationalExponent(std::int64_t n, std::int64_t d) {
    if (d == 0) fail(ErrorKind::division_by_zero, "zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    std::int64_t g = std::gcd(n, d);
    if (g == 0) g = 1;
    num_ = n / g;
    den_ = d / g;
}

RationalExponent RationalExponent::parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return RationalExponent(parse_int(s));
    return RationalExponent(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

std::int64_t RationalExponent::floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

RationalExponent RationalExponent::frac() const { return *this - RationalExponent(floor()); }

RationalExponent operator+(const RationalExponent& a, const RationalExponent& b) {
    if (a.den_ == b.den_) return RationalExponent(add_checked(a.num_, b.num_), a.den_);
    return RationalExponent(add_checked(mul_checked(a.num_, b.den_), mul_checked(b.num_, a.den_)),
                            mul_checked(a.den_, b.den_));
}

RationalExponent operator-(const RationalExponent& a, const RationalExponent& b) { return a + (-b); }

RationalExponent operator*(const RationalExponent& a, const RationalExponent& b) {
    return RationalExponent(mul_checked(a.num_, b.num_), mul_checked(a.den_, b.den_));
}

RationalExponent operator/(const RationalExponent& a, const RationalExponent& b) {
    if (b.num_ == 0) fail(ErrorKind::division_by_zero, "division by zero degree");
    return RationalExponent(mul_checked(a.num_, b.den_), mul_checked(a.den_, b.num_));
}

std::strong_ordering operator<=>(const RationalExponent& a, const RationalExponent& b) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
}

std::string RationalExponent::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

RationalExponent coset_sum(const RationalExponent& a, const RationalExponent& b) {
    RationalExponent s = a + b;
    if (s >= RationalExponent(1)) s -= RationalExponent(1);
    return s;
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
    std::int64_t g = std::gcd(a, b);
    return mul_checked(a / g, b);
}

}  // namespace twistaff
