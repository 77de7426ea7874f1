#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "convexsum/rational.hpp"

using convexsum::Integer;
using convexsum::Rational;

TEST_CASE("canonical form") {
    Rational r(Integer(2), Integer(4));
    CHECK(r.num() == 1);
    CHECK(r.den() == 2);
    CHECK(r == Rational(Integer(1), Integer(2)));

    Rational neg(Integer(3), Integer(-6));
    CHECK(neg.num() == -1);
    CHECK(neg.den() == 2);

    CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), convexsum::InvalidParameter);
}

TEST_CASE("arithmetic is exact") {
    Rational half(Integer(1), Integer(2));
    Rational third(Integer(1), Integer(3));
    CHECK((half + third).str() == "5/6");
    CHECK((half - third).str() == "1/6");
    CHECK((half * third).str() == "1/6");
    CHECK((half / third).str() == "3/2");
    CHECK((-half).str() == "-1/2");
    CHECK_THROWS_AS(half / Rational(0), convexsum::InvalidParameter);
}

TEST_CASE("ordering by cross multiplication") {
    CHECK(Rational(Integer(1), Integer(3)) < Rational(Integer(1), Integer(2)));
    CHECK(Rational(Integer(-1), Integer(2)) < Rational(Integer(1), Integer(3)));
    CHECK(Rational(Integer(7), Integer(7)) == Rational(1));
}

TEST_CASE("parse accepts p, p/q and decimal strings") {
    CHECK(Rational::parse("42").str() == "42");
    CHECK(Rational::parse("-3/9").str() == "-1/3");
    CHECK(Rational::parse("1.25").str() == "5/4");
    CHECK(Rational::parse("-0.5").str() == "-1/2");
    CHECK_THROWS_AS(Rational::parse("x"), convexsum::ParseError);
    CHECK_THROWS_AS(Rational::parse(""), convexsum::ParseError);
}

TEST_CASE("binary64 converts exactly") {
    Rational r = Rational::parse("0.1");
    Rational d = Rational::from_double(0.1);
    CHECK(r != d); // 0.1 is not representable; the dyadic value differs
    CHECK(Rational::from_double(0.5).str() == "1/2");
    CHECK(Rational::from_double(3.0).to_int64() == 3);
}

TEST_CASE("int64 round trip and big values") {
    Rational big = Rational::parse("123456789012345678901234567890");
    CHECK(!big.to_int64().has_value());
    CHECK(big.is_integer());
    Rational small(Integer(7), Integer(1));
    CHECK(small.to_int64() == 7);
    CHECK(Rational(Integer(1), Integer(2)).to_int64() == std::nullopt);
}

TEST_CASE("pow") {
    Rational r(Integer(3), Integer(2));
    CHECK(r.pow(3).str() == "27/8");
    CHECK(r.pow(0).str() == "1");
}
