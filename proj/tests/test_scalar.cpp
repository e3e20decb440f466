#include <random>

#include "doctest.h"
#include "twistaff/error.hpp"
#include "twistaff/exponent.hpp"
#include "twistaff/scalar.hpp"

using namespace twistaff;

TEST_CASE("roots of unity") {
    CHECK(Scalar::root_of_unity(0, 1) == Scalar(1));
    CHECK(Scalar::root_of_unity(1, 2) == Scalar(-1));
    Scalar i = Scalar::root_of_unity(1, 4);
    CHECK(i * i == Scalar::root_of_unity(1, 2));
    CHECK(i.conductor() == 4);
    for (long n : {3L, 5L, 6L, 8L, 12L, 15L}) {
        Scalar z = Scalar::root_of_unity(1, n);
        CHECK(z.pow(n) == Scalar(1));
        CHECK_FALSE(z.pow(n - 1) == Scalar(1));
    }
    // zeta_6 lives in Q(zeta_3)
    CHECK(Scalar::root_of_unity(1, 6).conductor() == 3);
}

TEST_CASE("field arithmetic") {
    CHECK(Scalar::rational(1, 2) + Scalar::rational(1, 3) == Scalar::rational(5, 6));
    Scalar z3 = Scalar::root_of_unity(1, 3);
    CHECK(z3 * Scalar::root_of_unity(2, 3) == Scalar(1));
    Scalar i = Scalar::root_of_unity(1, 4);
    CHECK((Scalar(1) + i).inverse() == (Scalar(1) - i) * Scalar::rational(1, 2));
    CHECK_THROWS_AS(Scalar().inverse(), Error);
    try {
        (void)(Scalar(1) / Scalar(0));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::division_by_zero);
    }
    // 1 + z3 + z3^2 = 0, result drops to conductor 1
    Scalar s = Scalar(1) + z3 + z3 * z3;
    CHECK(s.is_zero());
    CHECK(s.conductor() == 1);
    // sqrt(2) = zeta_8 + zeta_8^-1 stays at conductor 8
    Scalar r2 = Scalar::root_of_unity(1, 8) + Scalar::root_of_unity(7, 8);
    CHECK(r2 * r2 == Scalar(2));
    CHECK(r2.conductor() == 8);
    Scalar z12 = Scalar::root_of_unity(1, 12);
    CHECK(z12.conductor() == 12);
    CHECK(z12 == Scalar::root_of_unity(1, 4) * Scalar::root_of_unity(-1, 6));
    CHECK(z12.galois(5) == Scalar::root_of_unity(5, 12));
}

TEST_CASE("random field axioms") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 5), ex(0, 11);
    auto rnd = [&] {
        Scalar s;
        for (int t = 0; t < 3; ++t) s += Scalar::rational(num(rng), den(rng)) * Scalar::root_of_unity(ex(rng), 12);
        return s;
    };
    for (int t = 0; t < 60; ++t) {
        Scalar a = rnd(), b = rnd(), c = rnd();
        CHECK((a * b) * c - a * (b * c) == Scalar());
        CHECK(a * (b + c) - (a * b + a * c) == Scalar());
        CHECK(a + b == b + a);
        if (!a.is_zero()) CHECK(a * a.inverse() == Scalar(1));
    }
}

TEST_CASE("rendering round trip") {
    Scalar i = Scalar::root_of_unity(1, 4);
    Scalar x = Scalar::rational(1, 2) - Scalar(3) * i;
    CHECK(x.str() == "1/2 - 3*z");
    CHECK(parse_scalar(x.str(), 4) == x);
    CHECK(Scalar::rational(-7, 3).str() == "-7/3");
    CHECK(parse_scalar("-7/3") == Scalar::rational(-7, 3));
    Scalar z = Scalar::root_of_unity(2, 5);
    CHECK(parse_scalar(z.str(10), 10) == z);
    CHECK(parse_scalar(z.str(), 5) == z);
    CHECK(parse_scalar("zeta_4^2") == Scalar(-1));
}

TEST_CASE("conductor cap") {
    long old = conductor_cap();
    set_conductor_cap(10);
    CHECK_THROWS_AS(Scalar::root_of_unity(1, 11), Error);
    set_conductor_cap(old);
}

TEST_CASE("exponent cosets") {
    RationalExponent x = RationalExponent::parse("-3/2");
    CHECK(x.floor() == -2);
    CHECK(x.frac() == RationalExponent(1, 2));
    CHECK(coset_sum(RationalExponent(0), RationalExponent(0)) == RationalExponent(0));
    CHECK(coset_sum(RationalExponent(1, 2), RationalExponent(1, 2)) == RationalExponent(0));
    CHECK(coset_sum(RationalExponent(1, 3), RationalExponent(1, 3)) == RationalExponent(2, 3));
    CHECK(RationalExponent(1, 3) < RationalExponent(1, 2));
    CHECK(RationalExponent::parse("6/4").str() == "3/2");
}
