// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "regionscope/feasibility.hpp"
#include "regionscope/linalg.hpp"

namespace regionscope {

/// {x : normal · x + offset = 0}; the positive side is normal · x + offset > 0.
struct Hyperplane {
  Vector normal;
  Rational offset;

  Rational evaluate(const Vector& x) const { return dot(normal, x) + offset; }
  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

/// Ordered hyperplanes in a common ambient space. Order is significant:
/// position i is unit i of the corresponding rectifier layer.
class Arrangement {
 public:
  Arrangement() = default;
  explicit Arrangement(std::size_t ambient_dim) : dim_(ambient_dim) {}
  /// Throws DimensionError / PreconditionError on a bad hyperplane.
  Arrangement(std::size_t ambient_dim, std::vector<Hyperplane> hyperplanes);

  std::size_t ambient_dim() const { return dim_; }
  std::size_t size() const { return planes_.size(); }
  bool empty() const { return planes_.empty(); }
  const std::vector<Hyperplane>& hyperplanes() const { return planes_; }
  const Hyperplane& operator[](std::size_t i) const { return planes_[i]; }

  void add(Hyperplane h);
  /// Reverses the orientation of hyperplane i.
  void flip(std::size_t i);

  Matrix normal_matrix() const;
  Vector offsets() const;

  friend bool operator==(const Arrangement&, const Arrangement&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Hyperplane> planes_;
};

struct ArrangementRegion {
  std::vector<bool> signs;  ///< true = '+'
  Vector witness;
  std::vector<std::size_t> active_set;  ///< 0-based indices with sign '+'

  std::string sign_string() const;
};

struct GeneralPositionCounts {
  BigInt regions;
  BigInt bounded;
};

/// r = Σ_{s≤n0} C(m, s), b = C(m-1, n0) (b = 0 for m = 0).
GeneralPositionCounts regions_formula_general_position(std::uint64_t m, std::uint64_t n0);

/// C(m, 2) + m + 1, the line-sweep count.
BigInt sweep_count_2d(std::uint64_t m);

/// Every p ≤ n0 hyperplanes meet in a flat of dimension n0 - p and every
/// n0 + 1 of them have empty intersection. Throws PreconditionError when empty.
bool is_general_position(const Arrangement& arrangement);

struct ArrangementEnumerationOptions {
  FeasibilityOptions feasibility;
  std::size_t jobs = 1;
};

/// All nonempty open cells {x : sign pattern fixed}, each with an exact
/// witness, sorted by sign string. When `domain` is given, only cells meeting
/// it are reported and witnesses lie inside it.
std::vector<ArrangementRegion> enumerate_arrangement_regions(
    const Arrangement& arrangement, const ArrangementEnumerationOptions& options = {},
    const ConstraintSystem* domain = nullptr);

/// The induced arrangement in the span of the normals, expressed in the
/// coordinates of a basis chosen among the normals.
Arrangement essentialize(const Arrangement& arrangement);

/// Minimum-norm points of every intersection of rank-many hyperplanes with
/// independent normals (vertices of the essentialization, lifted back).
std::vector<Vector> arrangement_vertices(const Arrangement& arrangement);

/// Image of the arrangement under x ↦ λx + center with λ = radius / (2·n0·d),
/// d = 1 + max ||v||_1 over vertices. Every region of the image meets the open
/// cube of half-side radius/n0 around center (hence the ball). Empty input is
/// returned unchanged.
Arrangement scale_into_ball(const Arrangement& arrangement, const Rational& radius,
                            const Vector& center);

/// Regions together with witnesses inside the open ball; the witnesses are
/// checked against the squared-distance inequality.
std::vector<ArrangementRegion> regions_in_ball(const Arrangement& arrangement,
                                               const Rational& radius, const Vector& center,
                                               const ArrangementEnumerationOptions& options = {});

/// n hyperplanes in R^n0 (n0 ≥ 2) in general position, with a region for the
/// empty active set and one for every consecutive block {a, ..., b}.
Arrangement build_tangent_arrangement(std::size_t n, std::size_t n0);

/// True when every consecutive interval {a..b} ⊆ {0..n-1} and ∅ occur among
/// the region active sets.
bool has_all_consecutive_active_sets(const std::vector<ArrangementRegion>& regions, std::size_t n);

/// The open cube {x : |x_i - center_i| < half_side}.
ConstraintSystem open_cube(const Vector& center, const Rational& half_side);

}  // namespace regionscope
