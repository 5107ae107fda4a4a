#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "wbary/rational.hpp"
#include "wbary/rng.hpp"

using wbary::Rational;

namespace {

Rational random_rational(wbary::Rng& rng) {
  const long num = static_cast<long>(rng.below(2001)) - 1000;
  const long den = static_cast<long>(rng.below(40)) + 1;
  return Rational(num, den);
}

}  // namespace

TEST_CASE("from_string parses decimals and fractions") {
  CHECK(Rational::from_string("0.25") == Rational(1, 4));
  CHECK(Rational::from_string("-3") == Rational(-3));
  CHECK(Rational::from_string("1/3") == Rational(1, 3));
  CHECK(Rational::from_string("2.5e-3") == Rational(1, 400));
  CHECK(Rational::from_string("-1.5E2") == Rational(-150));
  CHECK(Rational::from_string(".5") == Rational(1, 2));
  CHECK(Rational::from_string("6/4") == Rational(3, 2));
  CHECK(Rational::from_string("-6/-4") == Rational(3, 2));
  CHECK(Rational::from_string(" 7 ") == Rational(7));
}

TEST_CASE("from_string rejects malformed input") {
  CHECK_THROWS_AS(Rational::from_string(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("1e"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("--2"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("1/0"), std::domain_error);
}

TEST_CASE("canonical form: lowest terms, positive denominator") {
  const Rational r(-6, -8);
  CHECK(r.num() == 3);
  CHECK(r.den() == 4);
  const Rational z(0, 5);
  CHECK(z.num() == 0);
  CHECK(z.den() == 1);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rendering round trip") {
  CHECK(Rational(1, 4).str() == "1/4");
  CHECK(Rational(-3).str() == "-3");
  CHECK(Rational(-3).fraction_str() == "-3/1");
  CHECK(Rational(0).fraction_str() == "0/1");

  wbary::Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    const Rational r = random_rational(rng);
    CHECK(Rational::from_string(r.str()) == r);
    CHECK(Rational::from_string(r.fraction_str()) == r);
  }
}

TEST_CASE("field laws hold exactly on random rationals") {
  wbary::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Rational a = random_rational(rng);
    const Rational b = random_rational(rng);
    const Rational c = random_rational(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - b == -(b - a));
    if (!c.is_zero()) CHECK((a / c) * c == a);
  }
}

TEST_CASE("dot product") {
  using V = std::vector<Rational>;
  CHECK(wbary::dot(V{1, 2}, V{3, 4}) == Rational(11));
  CHECK(wbary::dot(V{0, 0}, V{5, 7}) == Rational(0));
  CHECK(wbary::dot(V{Rational(1, 2), Rational(1, 3)}, V{2, 3}) == Rational(2));
  CHECK_THROWS_AS(wbary::dot(V{1}, V{1, 2}), std::invalid_argument);
}

TEST_CASE("ceil helpers") {
  CHECK(wbary::ceil_sqrt(Rational(0)) == 0);
  CHECK(wbary::ceil_sqrt(Rational(1)) == 1);
  CHECK(wbary::ceil_sqrt(Rational(2)) == 2);
  CHECK(wbary::ceil_sqrt(Rational(4)) == 2);
  CHECK(wbary::ceil_sqrt(Rational(17, 4)) == 3);
  CHECK(wbary::ceil_rational(Rational(7, 2)) == Rational(4));
  CHECK(wbary::ceil_rational(Rational(-7, 2)) == Rational(-3));
  CHECK(wbary::ceil_rational(Rational(3)) == Rational(3));
}
