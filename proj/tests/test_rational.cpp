#include <doctest.h>

#include "contexture/rational.hpp"

using namespace contexture;

TEST_CASE("parse_rational accepts integers, fractions and exact decimals") {
    CHECK(parse_rational("3/4") == rational(3, 4));
    CHECK(parse_rational("-3/4") == rational(-3, 4));
    CHECK(parse_rational("2") == Rational(2));
    CHECK(parse_rational("-17") == Rational(-17));
    CHECK(parse_rational("0.25") == rational(1, 4));
    CHECK(parse_rational("0.425") == rational(17, 40));
    CHECK(parse_rational("-0.5") == rational(-1, 2));
    CHECK(parse_rational("6/8") == rational(3, 4));  // canonicalized
}

TEST_CASE("parse_rational rejects garbage") {
    CHECK_THROWS(parse_rational(""));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational("1.2.3"));
    CHECK_THROWS(parse_rational("0x10"));
}

TEST_CASE("to_string is canonical p/q") {
    CHECK(to_string(rational(3, 4)) == "3/4");
    CHECK(to_string(rational(-6, 8)) == "-3/4");
    CHECK(to_string(Rational(5)) == "5");
    CHECK(to_string(Rational(0)) == "0");
}

TEST_CASE("string round trip") {
    for (long num = -7; num <= 7; ++num)
        for (long den = 1; den <= 9; ++den) {
            const Rational q = rational(num, den);
            CHECK(parse_rational(to_string(q)) == q);
        }
}
