// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <set>

#include "regionscope/arrangement.hpp"
#include "regionscope/constructions.hpp"
#include "regionscope/errors.hpp"
#include "regionscope/random.hpp"

using namespace regionscope;

namespace {

std::multiset<std::string> sign_strings(const std::vector<ArrangementRegion>& regions) {
  std::multiset<std::string> out;
  for (const auto& r : regions) out.insert(r.sign_string());
  return out;
}

Arrangement axes() { return Arrangement(2, {{{1, 0}, 0}, {{0, 1}, 0}}); }

void check_witnesses(const Arrangement& arr, const std::vector<ArrangementRegion>& regions) {
  for (const auto& r : regions) {
    REQUIRE(r.signs.size() == arr.size());
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const int s = sgn(arr[i].evaluate(r.witness));
      CHECK(s == (r.signs[i] ? 1 : -1));
      if (r.signs[i]) active.push_back(i);
    }
    CHECK(active == r.active_set);
  }
}

}  // namespace

TEST_CASE("general-position formulas") {
  auto c = regions_formula_general_position(3, 2);
  CHECK(c.regions == 7);
  CHECK(c.bounded == 1);
  CHECK(regions_formula_general_position(8, 2).regions == 37);
  CHECK(regions_formula_general_position(12, 2).regions == 79);
  c = regions_formula_general_position(0, 2);
  CHECK(c.regions == 1);
  CHECK(c.bounded == 0);
}

TEST_CASE("sweep count") {
  CHECK(sweep_count_2d(2) == 4);
  CHECK(sweep_count_2d(3) == 7);
  for (std::uint64_t m = 0; m < 40; ++m) {
    CHECK(sweep_count_2d(m) == regions_formula_general_position(m, 2).regions);
    CHECK(sweep_count_2d(m + 1) == sweep_count_2d(m) + m + 1);
  }
}

TEST_CASE("general position test") {
  CHECK(is_general_position(axes()));
  CHECK(!is_general_position(Arrangement(2, {{{1, 0}, 0}, {{2, 0}, 1}})));                     // parallel
  CHECK(!is_general_position(Arrangement(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 0}})));       // concurrent
  CHECK(is_general_position(Arrangement(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, -1}})));
  CHECK(!is_general_position(Arrangement(3, {{{1, 0, 0}, 0}, {{2, 0, 0}, 1}})));
  CHECK_THROWS_AS(is_general_position(Arrangement(2)), PreconditionError);
}

TEST_CASE("arrangement rejects bad hyperplanes") {
  Arrangement arr(2);
  CHECK_THROWS_AS(arr.add({{1, 0, 0}, 0}), DimensionError);
  CHECK_THROWS_AS(arr.add({{0, 0}, 1}), PreconditionError);
}

TEST_CASE("enumeration of small arrangements") {
  const auto regions = enumerate_arrangement_regions(axes());
  CHECK(regions.size() == 4);
  check_witnesses(axes(), regions);
  CHECK(std::is_sorted(regions.begin(), regions.end(),
                       [](const auto& a, const auto& b) { return a.sign_string() < b.sign_string(); }));
  CHECK(enumerate_arrangement_regions(Arrangement(2)).size() == 1);
  // Parallel lines: 3 regions, not 4.
  CHECK(enumerate_arrangement_regions(Arrangement(2, {{{1, 0}, 0}, {{1, 0}, -1}})).size() == 3);
  // Three concurrent lines: 6 regions.
  CHECK(enumerate_arrangement_regions(Arrangement(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 0}})).size() == 6);
}

TEST_CASE("random arrangements: count invariants") {
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    const std::size_t n0 = 1 + seed % 3;
    const std::size_t m = 1 + seed % 6;
    RationalSampler sampler(seed * 7 + 1);
    Arrangement arr(n0);
    for (std::size_t i = 0; i < m; ++i) {
      Vector w = sampler.vector(n0, 2, 1);  // small entries make degeneracies likely
      if (is_zero(w)) w[0] = 1;
      arr.add({w, sampler.next(2, 1)});
    }
    const auto regions = enumerate_arrangement_regions(arr);
    check_witnesses(arr, regions);
    CHECK(BigInt(static_cast<unsigned long>(regions.size())) <= regions_formula_general_position(m, n0).regions);
    if (is_general_position(arr)) {
      CHECK(BigInt(static_cast<unsigned long>(regions.size())) ==
            regions_formula_general_position(m, n0).regions);
    }
  }
}

TEST_CASE("parallel workers give the same regions") {
  const Arrangement arr = generic_arrangement(2, 7, 5);
  ArrangementEnumerationOptions opts;
  opts.jobs = 3;
  const auto a = enumerate_arrangement_regions(arr);
  const auto b = enumerate_arrangement_regions(arr, opts);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].signs == b[i].signs);
    CHECK(a[i].witness == b[i].witness);
  }
}

TEST_CASE("domain restriction") {
  const ConstraintSystem cube = open_cube({10, 10}, Rational(1));
  CHECK(enumerate_arrangement_regions(axes(), {}, &cube).size() == 1);
  const ConstraintSystem around = open_cube({0, 0}, Rational(1, 10));
  const auto regions = enumerate_arrangement_regions(axes(), {}, &around);
  CHECK(regions.size() == 4);
  for (const auto& r : regions) CHECK(around.contains(r.witness));
}

TEST_CASE("sweep recurrence on grown arrangements") {
  Arrangement arr(2);
  std::size_t previous = 1;
  const Arrangement full = generic_arrangement(2, 7, 99);
  for (std::size_t m = 0; m < 7; ++m) {
    arr.add(full[m]);
    const std::size_t count = enumerate_arrangement_regions(arr).size();
    CHECK(count == previous + m + 1);
    previous = count;
  }
}

TEST_CASE("essentialization") {
  const Arrangement one(3, {{{1, 1, 0}, -1}});
  const Arrangement e1 = essentialize(one);
  CHECK(e1.ambient_dim() == 1);
  CHECK(enumerate_arrangement_regions(e1).size() == 2);
  CHECK(enumerate_arrangement_regions(one).size() == 2);

  const Arrangement two(3, {{{1, 0, 0}, 0}, {{0, 1, 1}, -2}});
  const Arrangement e2 = essentialize(two);
  CHECK(e2.ambient_dim() == 2);
  CHECK(e2.size() == 2);
  CHECK(sign_strings(enumerate_arrangement_regions(e2)) == sign_strings(enumerate_arrangement_regions(two)));

  const Arrangement full = generic_arrangement(2, 4, 1);
  const Arrangement e3 = essentialize(full);
  CHECK(e3.ambient_dim() == 2);
  CHECK(sign_strings(enumerate_arrangement_regions(e3)) == sign_strings(enumerate_arrangement_regions(full)));
}

TEST_CASE("scale into ball: translated axes") {
  const Arrangement moved = scale_into_ball(axes(), Rational(1), {5, 5});
  const auto regions = regions_in_ball(moved, Rational(1), {5, 5});
  CHECK(regions.size() == 4);
  for (const auto& r : regions) CHECK(squared_norm(r.witness - Vector{5, 5}) < 1);
  for (const auto& h : moved.hyperplanes()) CHECK(h.evaluate({5, 5}) == 0);
}

TEST_CASE("scale into ball: general position 4 lines") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Arrangement arr = generic_arrangement(2, 4, seed);
    const Arrangement scaled = scale_into_ball(arr, Rational(1), {0, 0});
    const auto in_ball = regions_in_ball(scaled, Rational(1), {0, 0});
    CHECK(in_ball.size() == 11);
    CHECK(sign_strings(in_ball) == sign_strings(enumerate_arrangement_regions(arr)));
  }
}

TEST_CASE("scale into ball: huge radius keeps combinatorics") {
  const Arrangement arr = generic_arrangement(3, 5, 2);
  const Arrangement scaled = scale_into_ball(arr, Rational(1000000), Vector(3));
  CHECK(sign_strings(enumerate_arrangement_regions(scaled)) == sign_strings(enumerate_arrangement_regions(arr)));
  CHECK(scale_into_ball(Arrangement(2), Rational(1), {0, 0}) == Arrangement(2));
}

TEST_CASE("tangent arrangement examples") {
  const auto two = enumerate_arrangement_regions(build_tangent_arrangement(2, 2));
  std::set<std::vector<std::size_t>> sets;
  for (const auto& r : two) sets.insert(r.active_set);
  CHECK(two.size() == 4);
  CHECK(sets == std::set<std::vector<std::size_t>>{{}, {0}, {1}, {0, 1}});

  const auto three = enumerate_arrangement_regions(build_tangent_arrangement(3, 2));
  CHECK(has_all_consecutive_active_sets(three, 3));

  const Arrangement four = build_tangent_arrangement(4, 2);
  CHECK(is_general_position(four));
  const auto regions = enumerate_arrangement_regions(four);
  CHECK(regions.size() == 11);
  CHECK(has_all_consecutive_active_sets(regions, 4));
}

TEST_CASE("tangent arrangement: only intervals and the empty set") {
  for (std::size_t n = 1; n <= 8; ++n) {
    const Arrangement arr = build_tangent_arrangement(n, 2);
    if (n >= 2) CHECK(is_general_position(arr));
    const auto regions = enumerate_arrangement_regions(arr);
    CHECK(regions.size() == 1 + n + n * (n - 1) / 2);
    CHECK(has_all_consecutive_active_sets(regions, n));
    for (const auto& r : regions) {
      for (std::size_t i = 1; i < r.active_set.size(); ++i) CHECK(r.active_set[i] == r.active_set[i - 1] + 1);
    }
  }
}

TEST_CASE("tangent arrangement in three dimensions") {
  const Arrangement arr = build_tangent_arrangement(5, 3);
  CHECK(arr.ambient_dim() == 3);
  CHECK(is_general_position(arr));
  CHECK(has_all_consecutive_active_sets(enumerate_arrangement_regions(arr), 5));
}
