#include <doctest.h>

#include <cstdint>
#include <limits>

#include "ultra/error.hpp"
#include "ultra/rational.hpp"

using ultra::Rational;

TEST_CASE("rationals normalize sign and lowest terms") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(-3, -6).to_string() == "1/2");
  CHECK(Rational(0, 5).to_string() == "0");
  CHECK(Rational(6, 3).to_string() == "2");
  CHECK_THROWS_AS(Rational(1, 0), ultra::InputError);
}

TEST_CASE("rational arithmetic and ordering") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(3, 4) == Rational(-1, 4));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(-Rational(1, 2) == Rational(-1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1) < Rational(0));
  CHECK(Rational(7, 2) > Rational(3));
}

TEST_CASE("overflow is an input error, never silent") {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  CHECK_THROWS_AS(Rational(big) + Rational(1), ultra::OverflowError);
  CHECK_THROWS_AS(Rational(big) * Rational(2), ultra::OverflowError);
  CHECK_THROWS_AS(Rational(1, big) + Rational(1, big - 1), ultra::OverflowError);
  CHECK_THROWS_AS(-Rational(std::numeric_limits<std::int64_t>::min()), ultra::OverflowError);
  CHECK_THROWS_AS(Rational::parse("99999999999999999999"), ultra::InputError);
}

TEST_CASE("parse accepts exactly the canonical forms") {
  CHECK(Rational::parse("0") == Rational(0));
  CHECK(Rational::parse("17") == Rational(17));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse("3/2") == Rational(3, 2));
  for (const char* bad : {"2/4", "-0", "+1", "01", "1/1", "3/-2", "1/0", "0/1", "", "1.5", "1/", "/2",
                          "1 ", " 1", "abc", "1/2x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Rational::parse(bad), ultra::InputError);
  }
}

TEST_CASE("parse errors report the offset") {
  try {
    Rational::parse("1/2x");
    FAIL("expected an error");
  } catch (const ultra::InputError& e) {
    CHECK(std::string(e.what()).find("offset") != std::string::npos);
  }
}

TEST_CASE("to_string and parse round trip") {
  for (std::int64_t p = -12; p <= 12; ++p) {
    for (std::int64_t q = 1; q <= 7; ++q) {
      const Rational r(p, q);
      CHECK(Rational::parse(r.to_string()) == r);
    }
  }
}
