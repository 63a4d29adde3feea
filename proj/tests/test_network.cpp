// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>

#include "regionscope/arrangement.hpp"
#include "regionscope/constructions.hpp"
#include "regionscope/errors.hpp"
#include "regionscope/network.hpp"
#include "regionscope/random.hpp"

using namespace regionscope;

namespace {

RectifierNet single_unit(const Vector& w, const Rational& b, const Vector& out_row) {
  return RectifierNet(w.size(), {{Matrix::from_rows({w}), {b}}}, {Matrix::from_rows({out_row}), {0}});
}

// The four-unit layer: rect(x1), rect(-x1), rect(x2), rect(-x2).
Layer folding_pairs() {
  return {Matrix::from_rows({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}), Vector(4)};
}

RectifierNet random_net(std::uint64_t seed, std::vector<std::size_t> widths) {
  RationalSampler s(seed);
  std::vector<Layer> hidden;
  std::size_t fan_in = 2;
  for (auto w : widths) {
    Matrix m(w, fan_in);
    for (std::size_t r = 0; r < w; ++r)
      for (std::size_t c = 0; c < fan_in; ++c) m(r, c) = s.next_nonzero(7, 3);
    hidden.push_back({m, s.vector(w, 5, 3)});
    fan_in = w;
  }
  Matrix out(1, fan_in);
  for (std::size_t c = 0; c < fan_in; ++c) out(0, c) = s.next_nonzero(50, 7);
  return RectifierNet(2, std::move(hidden), {out, {0}});
}

}  // namespace

TEST_CASE("evaluate: single unit") {
  const RectifierNet net = single_unit({1, 0}, 0, {1});
  CHECK(evaluate(net, {2, 3}) == Vector{2});
  CHECK(evaluate(net, {-1, 5}) == Vector{0});
  CHECK_THROWS_AS(evaluate(net, {1}), DimensionError);
}

TEST_CASE("evaluate: pair sums give absolute values") {
  const RectifierNet net(2, {folding_pairs()}, {Matrix::from_rows({{1, 1, 0, 0}, {0, 0, 1, 1}}), {0, 0}});
  RationalSampler s(2);
  for (int i = 0; i < 20; ++i) {
    const Vector x = s.vector(2, 30, 7);
    CHECK(evaluate(net, x) == Vector{abs(x[0]), abs(x[1])});
  }
}

TEST_CASE("activation patterns") {
  const RectifierNet net = single_unit({1, 0}, 0, {1});
  CHECK(activation_pattern(net, {2, 3}).to_string() == "1");
  CHECK(activation_pattern(net, {0, 0}).to_string() == "0");
  const RectifierNet fold(2, {folding_pairs()}, {Matrix::from_rows({{1, 1, 1, 1}}), {0}});
  CHECK(activation_pattern(fold, {1, -1}).to_string() == "1001");
  CHECK(ActivationPattern::parse("10|01").layers == std::vector<std::vector<bool>>{{true, false}, {false, true}});
  CHECK_THROWS_AS(ActivationPattern::parse("1x"), FormatError);
}

TEST_CASE("perturbed pattern resolves boundaries into open regions") {
  const RectifierNet net = single_unit({1, 0}, 0, {1});
  CHECK(perturbed_pattern(net, {0, 5}).to_string() == "1");
  const RectifierNet neg = single_unit({-1, 0}, 0, {1});
  CHECK(perturbed_pattern(neg, {0, 5}).to_string() == "0");
  const RectifierNet second = single_unit({0, 1}, 0, {1});
  CHECK(perturbed_pattern(second, {3, 0}).to_string() == "1");
}

TEST_CASE("network construction validates dimensions and names the layer") {
  try {
    RectifierNet(2, {{Matrix(3, 2), Vector(3)}, {Matrix(2, 4), Vector(2)}}, {Matrix(1, 2), Vector(1)});
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    CHECK(std::string(e.what()).find("hidden layer 2") != std::string::npos);
  }
  try {
    RectifierNet(2, {{Matrix(3, 2), Vector(3)}}, {Matrix(1, 2), Vector(1)});
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    CHECK(std::string(e.what()).find("output") != std::string::npos);
  }
}

TEST_CASE("absorb affine") {
  const Layer layer{Matrix::from_rows({{1, 2}, {3, -1}}), {1, 0}};
  CHECK(absorb_affine(AffineMap::identity(2), layer) == layer);
  const AffineMap pre{Matrix::from_rows({{2, 0}, {1, 1}}), {1, -1}};
  const Layer absorbed = absorb_affine(pre, layer);
  CHECK(absorbed.weights == layer.weights * pre.linear);
  CHECK(absorbed.bias == layer.weights * pre.offset + layer.bias);
  RationalSampler s(8);
  const RectifierNet a(2, {absorbed}, {Matrix::from_rows({{1, 1}}), {0}});
  for (int i = 0; i < 10; ++i) {
    const Vector x = s.vector(2, 20, 9);
    const Vector pre_x = pre.apply(x);
    Vector h = layer.weights * pre_x + layer.bias;
    Rational expected = 0;
    for (auto& v : h) expected += v > 0 ? v : Rational(0);
    CHECK(evaluate(a, x) == Vector{expected});
  }
  CHECK_THROWS_AS(absorb_affine(AffineMap::identity(3), layer), DimensionError);
}

TEST_CASE("enumeration examples") {
  const RectifierNet one = single_unit({1, 1}, -1, {1});
  CHECK(enumerate_activation_regions(one).activation_count == 2);

  const Arrangement three = generic_arrangement(2, 3, 4);
  const RectifierNet shallow(2, {layer_from_arrangement(three)}, {Matrix::from_rows({{1, 2, 3}}), {0}});
  const RegionInventory inv = enumerate_activation_regions(shallow);
  CHECK(inv.activation_count == 7);
  CHECK(inv.activation_count == enumerate_arrangement_regions(three).size());
}

TEST_CASE("enumeration guard names the dimension") {
  const RectifierNet net = single_unit({1, 1, 1, 1}, 0, {1});
  try {
    (void)enumerate_activation_regions(net);
    FAIL("expected GuardError");
  } catch (const GuardError& e) {
    CHECK(std::string(e.what()).find('4') != std::string::npos);
  }
  EnumerationOptions opts;
  opts.max_input_dim = 4;
  CHECK(enumerate_activation_regions(net, opts).activation_count == 2);
}

TEST_CASE("merge: constant function is one region") {
  const RectifierNet net = single_unit({1, 0}, 0, {0});
  const RegionInventory inv = merge_linearity_regions(enumerate_activation_regions(net));
  CHECK(inv.activation_count == 2);
  CHECK(inv.merged_count == 1);
}

TEST_CASE("merge: generic shallow nets keep every region") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const RectifierNet net = build_shallow_generic(2, 1 + seed % 5, seed);
    const RegionInventory inv = merge_linearity_regions(enumerate_activation_regions(net));
    CHECK(inv.merged_count == inv.activation_count);
  }
}

TEST_CASE("merge: distinct maps stay apart, equal maps join") {
  // f = rect(x1) + rect(-x2): the four quadrant maps are pairwise different.
  const RectifierNet net(2, {folding_pairs()}, {Matrix::from_rows({{1, 0, 0, 1}}), {0}});
  const RegionInventory inv = merge_linearity_regions(enumerate_activation_regions(net));
  CHECK(inv.activation_count == 4);
  CHECK(inv.merged_count == 4);
  // rect(s) - rect(-s) = s in both coordinates: one linear piece.
  const RectifierNet linear(2, {folding_pairs()}, {Matrix::from_rows({{1, -1, 1, -1}}), {0}});
  const RegionInventory flat = merge_linearity_regions(enumerate_activation_regions(linear));
  CHECK(flat.activation_count == 4);
  CHECK(flat.merged_count == 1);
}

TEST_CASE("region invariants on random two-layer nets") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const RectifierNet net = random_net(seed, {3, 3});
    const RegionInventory inv = merge_linearity_regions(enumerate_activation_regions(net));
    CHECK(inv.merged_count <= inv.activation_count);
    std::set<std::string> patterns;
    RationalSampler s(seed + 100);
    for (const auto& r : inv.regions) {
      CHECK(r.region.contains(r.witness));
      CHECK(evaluate(net, r.witness) == r.map.apply(r.witness));
      CHECK(activation_pattern(net, r.witness) == r.pattern);
      CHECK(pattern_map(net, r.pattern) == r.map);
      patterns.insert(r.pattern.to_string());
      // Interior points between the witness and nearby perturbations.
      for (int t = 0; t < 3; ++t) {
        const Vector step = s.vector(2, 1, 50);
        Vector y = r.witness;
        Rational lambda(1);
        while (!r.region.contains(y = r.witness + lambda * step)) lambda /= 2;
        CHECK(evaluate(net, y) == r.map.apply(y));
      }
    }
    CHECK(patterns.size() == inv.regions.size());
    // Cover: generic points lie in exactly one region.
    for (int t = 0; t < 30; ++t) {
      const Vector x = s.vector(2, 200, 13);
      int hits = 0;
      for (const auto& r : inv.regions) hits += r.region.contains(x);
      bool on_boundary = false;
      for (const auto& r : inv.regions)
        for (const auto& c : r.region.constraints()) on_boundary = on_boundary || sgn(c.evaluate(x)) == 0;
      if (!on_boundary) CHECK(hits == 1);
    }
  }
}

TEST_CASE("shallow equivalence and monotone gating") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RationalSampler s(seed + 40);
    Arrangement arr(2);
    for (int i = 0; i < 4; ++i) arr.add({{s.next_nonzero(2, 1), s.next(2, 1)}, s.next(2, 1)});
    Matrix out(1, 4);
    for (std::size_t c = 0; c < 4; ++c) out(0, c) = s.next_nonzero(40, 7);
    const RectifierNet net(2, {layer_from_arrangement(arr)}, {out, {0}});
    const std::size_t merged = merge_linearity_regions(enumerate_activation_regions(net)).merged_count;
    CHECK(merged == enumerate_arrangement_regions(arr).size());
    for (std::size_t drop = 0; drop < 4; ++drop) {
      Matrix frozen = out;
      frozen(0, drop) = 0;
      const RectifierNet smaller(2, {layer_from_arrangement(arr)}, {frozen, {0}});
      CHECK(merge_linearity_regions(enumerate_activation_regions(smaller)).merged_count <= merged);
    }
  }
}

TEST_CASE("parallel enumeration matches sequential") {
  const RectifierNet net = random_net(3, {4, 3});
  EnumerationOptions par;
  par.jobs = 4;
  const RegionInventory a = enumerate_activation_regions(net);
  const RegionInventory b = enumerate_activation_regions(net, par);
  REQUIRE(a.regions.size() == b.regions.size());
  for (std::size_t i = 0; i < a.regions.size(); ++i) {
    CHECK(a.regions[i].pattern == b.regions[i].pattern);
    CHECK(a.regions[i].witness == b.regions[i].witness);
  }
}

TEST_CASE("sampling oracle") {
  const RectifierNet constant = single_unit({1, 0}, 0, {0});
  CHECK(sample_affine_pieces(constant, {-1, -1}, {1, 1}, 5) == 1);
  const RectifierNet one = single_unit({1, 1}, 0, {1});
  CHECK(sample_affine_pieces(one, {-1, -1}, {1, 1}, 2) == 2);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const RectifierNet net = random_net(seed, {3, 2});
    const std::size_t merged = merge_linearity_regions(enumerate_activation_regions(net)).merged_count;
    CHECK(sample_affine_pieces(net, {-3, -3}, {3, 3}, 41) <= merged);
  }
  CHECK(grid_points({0}, {1}, 3) == std::vector<Vector>{{0}, {Rational(1, 2)}, {1}});
}

TEST_CASE("output projection") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    CHECK(output_projection_preserves_regions(build_shallow_generic(2, 4, seed), seed));
  }
  const RectifierNet net = build_shallow_generic(2, 3, 1);
  CHECK(merged_count_with_output_row(net, {0, 0, 0}) == 1);
}
