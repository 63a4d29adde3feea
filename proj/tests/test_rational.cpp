// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "regionscope/combinatorics.hpp"
#include "regionscope/errors.hpp"
#include "regionscope/random.hpp"
#include "regionscope/rational.hpp"

using namespace regionscope;

TEST_CASE("parse and print canonical rationals") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-6/4")) == "-3/2");
  CHECK(to_string(parse_rational("+7")) == "7");
  CHECK(to_string(parse_rational("0/5")) == "0");
  CHECK(to_string(parse_rational("10/5")) == "2");
  CHECK(to_string(parse_rational("123456789012345678901234567890/3")) == "41152263004115226300411522630");
}

TEST_CASE("malformed rationals are rejected") {
  for (const char* bad : {"", "1/0", "1/-2", "a", "1.5", "1//2", "/2", "2/", "- 1", "1/2/3"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), FormatError);
  }
}

TEST_CASE("text round-trips bit-exactly") {
  RationalSampler sampler(11);
  for (int i = 0; i < 200; ++i) {
    const Rational q = sampler.next(1000000, 999);
    const std::string s = to_string(q);
    CHECK(parse_rational(s) == q);
    CHECK(to_string(parse_rational(s)) == s);
  }
}

TEST_CASE("decimal rendering rounds half away from zero") {
  CHECK(to_decimal(Rational(1, 3), 6) == "0.333333");
  CHECK(to_decimal(Rational(2, 3), 2) == "0.67");
  CHECK(to_decimal(Rational(-1, 8), 2) == "-0.13");
  CHECK(to_decimal(Rational(5), 0) == "5");
  CHECK(to_decimal(Rational(-1, 1000), 2) == "0.00");
}

TEST_CASE("field axioms hold exactly on random triples") {
  RationalSampler sampler(5);
  for (int i = 0; i < 300; ++i) {
    const Rational a = sampler.next(50, 40), b = sampler.next(50, 40), c = sampler.next(50, 40);
    CHECK(Rational((a + b) - b) == a);
    CHECK(Rational((a + b) + c) == Rational(a + (b + c)));
    CHECK(Rational(a * b) == Rational(b * a));
    CHECK(Rational(a * (b + c)) == Rational(a * b + a * c));
    const Rational s = a + b;
    CHECK(gcd(abs(s.get_num()), s.get_den()) == 1);
    CHECK(sgn(s.get_den()) > 0);
  }
}

TEST_CASE("binomials") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(2, 5) == 0);
  CHECK(binomial_prefix_sum(8, 2) == 37);
  CHECK(binomial_prefix_sum(12, 2) == 79);
  std::size_t subsets = 0;
  for_each_subset(5, 3, [&](const std::vector<std::size_t>&) {
    ++subsets;
    return true;
  });
  CHECK(subsets == 10);
}
