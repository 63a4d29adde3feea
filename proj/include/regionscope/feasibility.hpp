// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "regionscope/linalg.hpp"

namespace regionscope {

enum class Relation { Greater, GreaterEqual };

/// normal · x + offset > 0 (or >= 0).
struct Constraint {
  Vector normal;
  Rational offset;
  Relation relation = Relation::Greater;

  Rational evaluate(const Vector& x) const { return dot(normal, x) + offset; }
  bool satisfied_by(const Vector& x) const;
  Constraint negated() const;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Conjunction of linear constraints over a fixed ambient dimension.
class ConstraintSystem {
 public:
  ConstraintSystem() = default;
  explicit ConstraintSystem(std::size_t ambient_dim) : dim_(ambient_dim) {}

  std::size_t ambient_dim() const { return dim_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  /// Throws DimensionError when the normal has the wrong length.
  void add(Constraint c);
  void add(Vector normal, Rational offset, Relation relation = Relation::Greater) {
    add(Constraint{std::move(normal), std::move(offset), relation});
  }
  void pop() { rows_.pop_back(); }

  bool contains(const Vector& x) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Constraint> rows_;
};

struct FeasibilityOptions {
  /// Systems up to this dimension go through Fourier-Motzkin elimination,
  /// larger ones through the exact simplex.
  std::size_t elimination_max_dim = 3;
};

/// A point satisfying every constraint exactly, or nullopt when none exists.
std::optional<Vector> strict_feasible(const ConstraintSystem& system,
                                      const FeasibilityOptions& options = {});

/// Fourier-Motzkin projection with strictness tracking, then back-substitution
/// choosing interval midpoints.
std::optional<Vector> feasible_by_elimination(const ConstraintSystem& system);

/// Two-phase exact simplex maximising a common slack t <= 1 on the strict rows.
std::optional<Vector> feasible_by_simplex(const ConstraintSystem& system);

struct Ball {
  Vector center;
  Rational radius;  ///< radius with respect to the Euclidean norm
};

/// A ball inside the open region: the center maximises min_i slack_i/||a_i||_1
/// (capped at `cap`), and the radius is half that minimum. nullopt when the
/// region has empty interior.
std::optional<Ball> inscribed_ball(const ConstraintSystem& system, const Rational& cap);

/// Maximise c·y subject to A y <= b, y >= 0. Returns nullopt when infeasible
/// or unbounded.
std::optional<Vector> lp_maximize(const Matrix& a, const Vector& b, const Vector& c);

}  // namespace regionscope
