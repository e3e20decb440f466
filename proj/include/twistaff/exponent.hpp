#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace twistaff {

// Exact rational with machine-word parts. Used for degrees and exponents,
// which stay small; overflow is reported rather than wrapped.
class RationalExponent {
public:
    RationalExponent() = default;
    RationalExponent(std::int64_t n) : num_(n), den_(1) {}
    RationalExponent(std::int64_t n, std::int64_t d);

    static RationalExponent parse(std::string_view s);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    // value = frac() + floor(), frac() in [0,1)
    std::int64_t floor() const;
    RationalExponent frac() const;
    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    RationalExponent operator-() const { return RationalExponent(-num_, den_); }
    friend RationalExponent operator+(const RationalExponent& a, const RationalExponent& b);
    friend RationalExponent operator-(const RationalExponent& a, const RationalExponent& b);
    friend RationalExponent operator*(const RationalExponent& a, const RationalExponent& b);
    friend RationalExponent operator/(const RationalExponent& a, const RationalExponent& b);
    RationalExponent& operator+=(const RationalExponent& o) { return *this = *this + o; }
    RationalExponent& operator-=(const RationalExponent& o) { return *this = *this - o; }

    friend bool operator==(const RationalExponent& a, const RationalExponent& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const RationalExponent& a, const RationalExponent& b);

    std::string str() const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

using Degree = RationalExponent;

// s(alpha, beta): alpha + beta reduced into [0,1)
RationalExponent coset_sum(const RationalExponent& a, const RationalExponent& b);

std::int64_t checked_lcm(std::int64_t a, std::int64_t b);

}  // namespace twistaff
