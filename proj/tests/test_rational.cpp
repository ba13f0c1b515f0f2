#include "fogran/rational.hpp"

#include <cstdint>
#include <stdexcept>

#include "doctest.h"

using fogran::Rational;

TEST_CASE("construction normalizes sign and gcd") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(10, 5).is_integer());
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("arithmetic identities") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) - Rational(2, 3) == Rational(-1, 6));
  CHECK(Rational(3, 4) * Rational(2, 9) == Rational(1, 6));
  CHECK(Rational(3, 4) / Rational(3, 2) == Rational(1, 2));
  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
  CHECK(Rational(5, 7).pow(0) == Rational(1));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("overflow is detected, not wrapped") {
  const Rational big(INT64_MAX, 1);
  CHECK_THROWS_AS(big * Rational(2), std::overflow_error);
  CHECK_THROWS_AS(big + big, std::overflow_error);
  // Reduction keeps representable values representable.
  CHECK(Rational(INT64_MAX, INT64_MAX) == Rational(1));
}

TEST_CASE("ordering crosses denominators correctly") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(7, 5) > Rational(4, 3));
  CHECK(Rational(2, 4) <= Rational(1, 2));
  CHECK(Rational::min(Rational(5, 3), Rational(3, 2)) == Rational(3, 2));
  CHECK(Rational::max(Rational(-1), Rational(-2)) == Rational(-1));
}

TEST_CASE("floor and ceil follow mathematical convention") {
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-3, 2).floor() == -2);
  CHECK(Rational(-3, 2).ceil() == -1);
  CHECK(Rational(6, 3).floor() == 2);
  CHECK(Rational(6, 3).ceil() == 2);
}

TEST_CASE("parsing accepts integers, fractions and decimals") {
  CHECK(Rational::parse("3/2") == Rational(3, 2));
  CHECK(Rational::parse("-4/6") == Rational(-2, 3));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("-0.5") == Rational(-1, 2));
  CHECK(Rational::parse("2") == Rational(2));
  CHECK(Rational::parse("+7") == Rational(7));
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1."), std::invalid_argument);
}

TEST_CASE("decimal rendering is exact and deterministic") {
  CHECK(Rational(0).decimal() == "0");
  CHECK(Rational(10, 9).decimal() == "1.11111111111");
  CHECK(Rational(2, 3).decimal() == "0.666666666667");
  CHECK(Rational(1, 1024).decimal() == "0.0009765625");
  CHECK(Rational(-1, 4).decimal() == "-0.25");
  CHECK(Rational(300).decimal() == "300");
  CHECK(Rational(1, 3).decimal(4) == "0.3333");
  CHECK(Rational(9999, 10000).decimal(3) == "1");  // carry propagates through
  CHECK(Rational(1, 100000000).decimal() == "1e-8");
}

TEST_CASE("string round trip") {
  for (const auto& r : {Rational(10, 9), Rational(-7, 3), Rational(42), Rational(0)}) {
    CHECK(Rational::parse(r.str()) == r);
  }
}

TEST_CASE("binomial coefficients") {
  CHECK(fogran::binomial(0, 0) == 1);
  CHECK(fogran::binomial(5, 0) == 1);
  CHECK(fogran::binomial(6, 3) == 20);
  CHECK(fogran::binomial(6, 6) == 1);
  CHECK(fogran::binomial(3, 5) == 0);
  CHECK(fogran::binomial(52, 26) == 495918532948104LL);
}
