#include "bethe/scalar.hpp"

#include <doctest.h>

#include <cmath>

using namespace bethe;

TEST_CASE("parsing rationals") {
    CHECK(*parse_rational("3") == 3);
    CHECK(*parse_rational("-7/14") == Rational(-1, 2));
    CHECK(*parse_rational(" +2/6 ") == Rational(1, 3));
    CHECK(*parse_rational("-0.25") == Rational(-1, 4));
    CHECK(*parse_rational(".5") == Rational(1, 2));
    CHECK(*parse_rational("12.") == 12);
    CHECK_FALSE(parse_rational("1/0"));
    CHECK_FALSE(parse_rational(""));
    CHECK_FALSE(parse_rational("1/2/3"));
    CHECK_FALSE(parse_rational("abc"));
    CHECK_FALSE(parse_rational("."));
}

TEST_CASE("string round trip") {
    for (const Rational& q : {Rational(0), Rational(5), Rational(-3, 7), Rational(22, 6)}) {
        Rational c(q);
        c.canonicalize();
        CHECK(*parse_rational(to_string(q)) == c);
    }
    CHECK(to_string(Rational(4, 2)) == "2");
    CHECK(to_string(Rational(-1, 3)) == "-1/3");
}

TEST_CASE("rational recognition") {
    CHECK(*recognize_rational(1.0 / 3.0) == Rational(1, 3));
    CHECK(*recognize_rational(-22.0 / 7.0) == Rational(-22, 7));
    CHECK(*recognize_rational(5.0) == 5);
    CHECK_FALSE(recognize_rational(std::sqrt(2.0), 1000));
    CHECK_FALSE(recognize_rational(std::nan("")));
    CHECK(exact_from_double(0.5) == Rational(1, 2));
    CHECK(is_integer(Rational(6, 3)));
    CHECK_FALSE(is_integer(Rational(1, 3)));
}
