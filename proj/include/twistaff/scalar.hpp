#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace twistaff {

// Exact element of a cyclotomic field Q(zeta_N). Stored at the smallest
// conductor N (N != 2 mod 4) in the power basis 1, z, ..., z^(phi(N)-1).
// Conductor 1 keeps only a rational.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : rat_(v) {}
    Scalar(int v) : rat_(v) {}
    explicit Scalar(const mpq_class& q) : rat_(q) {}

    static Scalar rational(long p, long q);
    static Scalar root_of_unity(long k, long n);
    // Coefficients in the power basis of Q(zeta_n); reduced on construction.
    static Scalar from_coefficients(long n, std::vector<mpq_class> coeffs);

    long conductor() const { return n_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const { return n_ == 1; }
    const mpq_class& rational_value() const;  // throws unless rational
    // Power-basis coefficients in Q(zeta_m); m must be a multiple of conductor().
    std::vector<mpq_class> coefficients(long m) const;

    Scalar operator-() const;
    Scalar inverse() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);

    // sigma_k : zeta -> zeta^k, gcd(k, conductor) = 1
    Scalar galois(long k) const;
    Scalar pow(long e) const;

    // "p/q" or "c0 + c1*z + ..." with z = zeta_m; m a multiple of conductor().
    std::string str(long m) const;
    std::string str() const { return str(n_); }

private:
    void normalize();

    long n_ = 1;
    mpq_class rat_;
    std::vector<mpq_class> cyc_;
};

// Largest conductor arithmetic may create; exceeding it raises conductor_cap.
void set_conductor_cap(long cap);
long conductor_cap();

long euler_phi(long n);
long canonical_conductor(long n);

// Inverse of Scalar::str: integer combinations of powers of z = zeta_m, "p/q"
// coefficients, plus explicit "zeta_N" / "zeta_N^k" atoms.
Scalar parse_scalar(std::string_view text, long m = 1);

// lcm of conductors; the document-level N for rendering
long common_conductor(const std::vector<Scalar>& xs);

}  // namespace twistaff
