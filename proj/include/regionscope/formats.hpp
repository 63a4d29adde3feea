// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "regionscope/arrangement.hpp"
#include "regionscope/bounds.hpp"
#include "regionscope/constructions.hpp"
#include "regionscope/network.hpp"

namespace regionscope {

// All readers throw FormatError carrying the 1-based line number. Blank lines
// and lines starting with '#' are ignored.

/// regionscope-net 1 / input_dim / layer {hidden|output} <width> <fan_in>
/// followed by <width> "w" rows and one "b" row / end.
std::string write_net(const RectifierNet& net);
RectifierNet read_net(std::string_view text);

/// regionscope-arrangement 1 / ambient_dim / count / one "h <normal> <offset>"
/// line per hyperplane.
std::string write_arrangement(const Arrangement& arrangement);
Arrangement read_arrangement(std::string_view text);

/// One "region <signs> active <1-based list or -> witness <coords>" line per
/// region, in the given order.
std::string write_regions(const std::vector<ArrangementRegion>& regions);

/// Region inventory; constraint systems and hidden maps are not serialized.
std::string write_inventory(const RegionInventory& inventory, std::size_t input_dim,
                            std::size_t output_dim);
RegionInventory read_inventory(std::string_view text);

struct ConstructionManifest {
  std::string construction;
  std::uint64_t n0 = 0;
  std::uint64_t k = 0;
  std::vector<std::uint64_t> widths;
  std::uint64_t seed = 0;
  BigInt claimed_bound;
  std::size_t activation_count = 0;
  std::size_t enumerated_merged = 0;
  bool satisfied = false;

  static ConstructionManifest from_report(const ConstructionReport& report);
  friend bool operator==(const ConstructionManifest&, const ConstructionManifest&) = default;
};

std::string write_manifest(const ConstructionManifest& manifest);
ConstructionManifest read_manifest(std::string_view text);

struct HeatmapCell {
  Vector x;
  Rational value;       ///< first network output
  std::size_t region;   ///< merged-region id
};

/// Grid cells over [lo, hi] with `resolution` points per axis. The region of a
/// boundary point is the one entered along the lexicographic perturbation.
/// `inventory` must be merged and belong to `net`.
std::vector<HeatmapCell> heatmap_grid(const RectifierNet& net, const RegionInventory& inventory,
                                      const Vector& lo, const Vector& hi, std::size_t resolution);

/// Header x1,...,xn,f,region. Decimals with `digits` places unless `exact`.
std::string write_heatmap_csv(const std::vector<HeatmapCell>& cells, int digits, bool exact);

std::string write_bounds_csv(const std::vector<RatioRow>& rows);

/// Comma-separated list of rationals, e.g. "-2,1/2".
Vector parse_rational_list(std::string_view text);

}  // namespace regionscope
