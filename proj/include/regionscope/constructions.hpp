// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regionscope/arrangement.hpp"
#include "regionscope/network.hpp"

namespace regionscope {

struct BallSpec {
  Vector center;  ///< every coordinate nonzero
  Rational radius;
};

struct CommonBallMaps {
  std::vector<Matrix> scalings;  ///< U_i = diag(η u_i1, ..., η u_in0), u_1j = 1
  Vector shared_offset;          ///< c = -U_1 s_1
  Rational eta;
  std::vector<AffineMap> maps() const;
};

/// Positive diagonal U_i and shared c such that x ↦ U_i x + c sends ball i to
/// a set centered at the origin whose smallest semi-axis exceeds 1.
/// PreconditionError on a zero center coordinate or on coordinates whose
/// signs differ between balls.
CommonBallMaps maps_to_common_ball(const std::vector<BallSpec>& balls);

struct ConstructionReport {
  std::string construction;  ///< "shallow", "deep" or "folding"
  std::uint64_t n0 = 0;
  std::vector<std::uint64_t> widths;
  std::uint64_t k = 0;
  std::uint64_t seed = 0;
  RectifierNet net;
  BigInt claimed_bound;
  std::size_t activation_count = 0;
  std::size_t enumerated_merged = 0;
  bool satisfied = false;
};

struct ConstructionOptions {
  std::uint64_t seed = 0;
  EnumerationOptions enumeration;
};

/// Seeded generic arrangement of m hyperplanes in R^n0, general position
/// verified exactly (bounded reseeding).
Arrangement generic_arrangement(std::size_t n0, std::size_t m, std::uint64_t seed);

/// General-position arrangement every region of which meets the open cube
/// (center, half_width). For n0 = 2 and m <= 16: tangents of a circle at the
/// angles of an odd regular polygon, radius chosen so the thinnest cell inside
/// the cube is widest. Evenly spaced points for n0 = 1; otherwise a generic
/// arrangement scaled so its vertices lie inside the cube.
Arrangement spread_arrangement(std::size_t n0, std::size_t m, const Vector& center,
                               const Rational& half_width, std::uint64_t seed);

/// Re-orients hyperplanes so that no region has every sign negative (a dead
/// region with a constant output). No-op when all 2^m sign vectors occur.
void orient_without_dead_region(Arrangement& arrangement);

/// Rectifier layer whose unit i is active on the positive side of hyperplane i.
Layer layer_from_arrangement(const Arrangement& arrangement);

/// One hidden layer of m units in general position with a generic output row.
RectifierNet build_shallow_generic(std::size_t n0, std::size_t m, std::uint64_t seed);

/// Shallow generic net with its claimed bound and exact count.
ConstructionReport report_shallow_generic(std::size_t n0, std::size_t m,
                                          const ConstructionOptions& options = {});

/// Layer 1: tangent arrangement; each later layer: common-ball intermediary
/// absorbed into a tangent (or, last, general-position) arrangement inside the
/// unit ball. PreconditionError when a width is below n0 or n0 < 2.
ConstructionReport build_deep_theorem_net(std::size_t n0, const std::vector<std::size_t>& widths,
                                          const ConstructionOptions& options = {});

/// k hidden layers of 2·n0 units: k-1 folding layers (pairs summing to
/// absolute values) then a general-position layer inside the folded cube.
ConstructionReport build_folding_net(std::size_t n0, std::size_t k,
                                     const ConstructionOptions& options = {});

struct VerificationResult {
  bool ok = false;
  std::string diagnostic;
};

/// Re-enumerates the report's net and compares with its claim; for folding
/// nets also checks f(..., x_j, ...) = f(..., -x_j, ...) at seeded points.
VerificationResult verify_construction(const ConstructionReport& report,
                                       const ConstructionOptions& options = {});

/// Regions of `net` (merged) whose first-layer pattern equals `first_layer`.
std::size_t count_regions_with_first_layer(const RegionInventory& inventory,
                                           const std::vector<bool>& first_layer);

}  // namespace regionscope
