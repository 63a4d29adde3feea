// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "regionscope/feasibility.hpp"
#include "regionscope/linalg.hpp"

namespace regionscope {

/// weights: n_out x n_in, bias: n_out.
struct Layer {
  Matrix weights;
  Vector bias;

  std::size_t width() const { return weights.rows(); }
  std::size_t fan_in() const { return weights.cols(); }
  friend bool operator==(const Layer&, const Layer&) = default;
};

/// Rectifier hidden layers followed by an unrectified linear output layer.
class RectifierNet {
 public:
  RectifierNet() = default;
  /// Validates the layer chain; DimensionError names the offending layer
  /// (hidden layers 1-based, then "output").
  RectifierNet(std::size_t input_dim, std::vector<Layer> hidden, Layer output);

  std::size_t input_dim() const { return input_dim_; }
  std::size_t output_dim() const { return output_.width(); }
  std::size_t depth() const { return hidden_.size(); }
  const std::vector<Layer>& hidden_layers() const { return hidden_; }
  const Layer& output_layer() const { return output_; }
  std::vector<std::size_t> widths() const;

  RectifierNet with_output(Layer output) const;

  friend bool operator==(const RectifierNet&, const RectifierNet&) = default;

 private:
  std::size_t input_dim_ = 0;
  std::vector<Layer> hidden_;
  Layer output_;
};

/// One bit per hidden unit per layer; bit = preactivation > 0.
struct ActivationPattern {
  std::vector<std::vector<bool>> layers;

  /// Layers as 0/1 strings joined by '|', e.g. "1010|0110".
  std::string to_string() const;
  static ActivationPattern parse(const std::string& text);

  friend bool operator==(const ActivationPattern&, const ActivationPattern&) = default;
  friend auto operator<=>(const ActivationPattern& a, const ActivationPattern& b) {
    return a.to_string() <=> b.to_string();
  }
};

struct LinearRegion {
  ActivationPattern pattern;
  ConstraintSystem region;  ///< input-space polyhedron, all constraints strict
  Vector witness;
  AffineMap map;         ///< input -> network output
  AffineMap hidden_map;  ///< input -> last hidden layer activations
};

struct RegionInventory {
  std::vector<LinearRegion> regions;  ///< sorted by pattern string
  /// Merged-region id per entry of `regions`; empty until merged.
  std::vector<std::size_t> component;
  std::size_t activation_count = 0;
  std::size_t merged_count = 0;
  bool merged = false;
};

struct EnumerationOptions {
  std::size_t max_input_dim = 3;
  std::size_t jobs = 1;
  FeasibilityOptions feasibility;
};

/// Exact forward pass. DimensionError when x has the wrong length.
Vector evaluate(const RectifierNet& net, const Vector& x);

/// I(s) = 1 iff s > 0, at every hidden unit.
ActivationPattern activation_pattern(const RectifierNet& net, const Vector& x);

/// Pattern of the open region entered from x in the direction
/// ε e_1 + ε^2 e_2 + ... for infinitesimal ε. Equals activation_pattern(x)
/// when x is on no boundary, and always names a full-dimensional region.
ActivationPattern perturbed_pattern(const RectifierNet& net, const Vector& x);

/// input -> network output on the region with the given pattern.
AffineMap pattern_map(const RectifierNet& net, const ActivationPattern& pattern);

/// (W·M, W·c + b) for pre = (M, c): the layer applied after `pre`.
Layer absorb_affine(const AffineMap& pre, const Layer& layer);

/// Every activation pattern whose input region has nonempty interior.
/// GuardError when input_dim exceeds options.max_input_dim.
RegionInventory enumerate_activation_regions(const RectifierNet& net,
                                             const EnumerationOptions& options = {});

/// Facet-adjacent regions with identical output maps are joined.
RegionInventory merge_linearity_regions(RegionInventory inventory,
                                        const FeasibilityOptions& options = {});

/// True when two regions share a relatively open (n0-1)-dimensional piece of
/// boundary hyperplane.
bool share_facet(const LinearRegion& a, const LinearRegion& b,
                 const FeasibilityOptions& options = {});

/// Regular grid with `resolution` points per axis (resolution >= 2),
/// lo + (hi - lo) * i / (resolution - 1).
std::vector<Vector> grid_points(const Vector& lo, const Vector& hi, std::size_t resolution);

/// Number of distinct (Jacobian, offset) pairs over the grid, read off the
/// perturbed activation pattern at each point.
std::size_t sample_affine_pieces(const RectifierNet& net, const Vector& lo, const Vector& hi,
                                 std::size_t resolution);

/// Merged count with a seeded single-row output equals the merged count with
/// the identity output.
bool output_projection_preserves_regions(const RectifierNet& net, std::uint64_t seed,
                                         const EnumerationOptions& options = {});

/// Merged count of `net` with the output replaced by `row` (1 x n_k, zero bias).
std::size_t merged_count_with_output_row(const RectifierNet& net, const Vector& row,
                                         const EnumerationOptions& options = {});

}  // namespace regionscope
