#include <doctest.h>

#include <stdexcept>

#include "pickleball/rational.hpp"
#include "pickleball/sampling.hpp"

using namespace pickleball;

TEST_SUITE("rational") {
  TEST_CASE("decimal literals parse to exact reduced fractions") {
    CHECK(parse_rational("0.44") == make_rational(11, 25));
    CHECK(parse_rational("0.44") == make_rational(44, 100));
    CHECK(parse_rational("1") == 1);
    CHECK(parse_rational("0") == 0);
    CHECK(parse_rational(".5") == make_rational(1, 2));
    CHECK(parse_rational("0.523681") == make_rational(523681, 1000000));
    CHECK(parse_rational("-0.25") == make_rational(-1, 4));
  }

  TEST_CASE("fraction literals parse and canonicalize") {
    CHECK(parse_rational("44/100") == make_rational(11, 25));
    CHECK(parse_rational("3/5") == make_rational(3, 5));
    CHECK(to_fraction_string(parse_rational("44/100")) == "11/25");
    CHECK(to_fraction_string(parse_rational("7")) == "7/1");
  }

  TEST_CASE("malformed literals are rejected") {
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1e-3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("-"), std::invalid_argument);
  }

  TEST_CASE("fraction rendering round trips sampled values") {
    RationalSampler sampler(20240817);
    for (int k = 0; k < 200; ++k) {
      Rational v = sampler.next_open_unit(100000);
      CHECK(parse_rational(to_fraction_string(v)) == v);
    }
  }

  TEST_CASE("fixed-point rendering rounds half away from zero") {
    CHECK(to_decimal_string(make_rational(1, 2), 0) == "1");
    CHECK(to_decimal_string(make_rational(-1, 2), 0) == "-1");
    CHECK(to_decimal_string(make_rational(1, 4), 1) == "0.3");
    CHECK(to_decimal_string(make_rational(1, 8), 2) == "0.13");
    CHECK(to_decimal_string(make_rational(11, 25), 7) == "0.4400000");
    CHECK(to_decimal_string(make_rational(-137951, 10000000), 7) == "-0.0137951");
    CHECK(to_decimal_string(make_rational(25, 1000), 2) == "0.03");
    CHECK(to_decimal_string(make_rational(-1, 1000000), 3) == "-0.000");
  }

  TEST_CASE("scientific rendering keeps the requested significant digits") {
    CHECK(to_scientific_string(make_rational(-795109, 100000000000000L), 6) == "-7.95109e-09");
    CHECK(to_scientific_string(make_rational(581408, 10000000000000000L), 6) == "5.81408e-11");
    CHECK(to_scientific_string(make_rational(1, 2), 6) == "5.00000e-01");
    CHECK(to_scientific_string(Rational(999999999), 3) == "1.00e+09");  // carry bumps the exponent
    CHECK(to_scientific_string(Rational(0), 6) == "0.00000e+00");
    CHECK(to_scientific_string(Rational(1), 1) == "1e+00");
  }

  TEST_CASE("square-root rendering is correctly rounded") {
    CHECK(sqrt_decimal_string(Rational(4), 3) == "2.000");
    CHECK(sqrt_decimal_string(Rational(2), 6) == "1.414214");
    CHECK(sqrt_decimal_string(Rational(0), 4) == "0.0000");
    CHECK(sqrt_decimal_string(make_rational(1, 4), 3) == "0.500");
    CHECK(sqrt_decimal_string(Rational(8), 5) == "2.82843");
    CHECK_THROWS_AS(sqrt_decimal_string(Rational(-1), 2), std::invalid_argument);
  }

  TEST_CASE("sign helper") {
    CHECK(sign_of(make_rational(-3, 7)) == -1);
    CHECK(sign_of(Rational(0)) == 0);
    CHECK(sign_of(make_rational(3, 7)) == 1);
  }
}
