// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#include "regionscope/feasibility.hpp"

#include <map>
#include <string>
#include <utility>

#include "regionscope/errors.hpp"

namespace regionscope {

bool Constraint::satisfied_by(const Vector& x) const {
  const int s = sgn(evaluate(x));
  return relation == Relation::Greater ? s > 0 : s >= 0;
}

Constraint Constraint::negated() const {
  Constraint out{Vector(normal.size()), -offset, relation};
  for (std::size_t i = 0; i < normal.size(); ++i) out.normal[i] = -normal[i];
  return out;
}

void ConstraintSystem::add(Constraint c) {
  if (c.normal.size() != dim_) {
    throw DimensionError("constraint normal of length " + std::to_string(c.normal.size()) +
                         " in a system of dimension " + std::to_string(dim_));
  }
  rows_.push_back(std::move(c));
}

bool ConstraintSystem::contains(const Vector& x) const {
  for (const auto& c : rows_) {
    if (!c.satisfied_by(x)) return false;
  }
  return true;
}

std::optional<Vector> strict_feasible(const ConstraintSystem& system,
                                      const FeasibilityOptions& options) {
  if (system.ambient_dim() <= options.elimination_max_dim) return feasible_by_elimination(system);
  return feasible_by_simplex(system);
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin

namespace {

struct Row {
  Vector a;
  Rational b;
  bool strict;
};

bool constant_holds(const Row& row) {
  const int s = sgn(row.b);
  return row.strict ? s > 0 : s >= 0;
}

// Rows keyed by their normal scaled to a unit leading coefficient; only the
// tightest row per key is kept.
class RowSet {
 public:
  // False when a constant row is violated.
  bool insert(Row row) {
    std::size_t lead = 0;
    while (lead < row.a.size() && sgn(row.a[lead]) == 0) ++lead;
    if (lead == row.a.size()) return constant_holds(row);
    const Rational s = abs(row.a[lead]);
    if (s != 1) {
      for (auto& y : row.a) y /= s;
      row.b /= s;
    }
    auto it = rows_.find(row.a);
    if (it == rows_.end()) {
      Vector key = row.a;
      rows_.emplace(std::move(key), std::move(row));
      return true;
    }
    Row& old = it->second;
    if (row.b < old.b || (row.b == old.b && row.strict && !old.strict)) old = std::move(row);
    return true;
  }

  std::vector<Row> take() {
    std::vector<Row> out;
    out.reserve(rows_.size());
    for (auto& [key, row] : rows_) out.push_back(std::move(row));
    return out;
  }

 private:
  std::map<Vector, Row> rows_;
};

// Eliminates the last variable. Returns false on a violated constant row.
bool eliminate_last(const std::vector<Row>& in, std::size_t nvars, std::vector<Row>& out) {
  const std::size_t k = nvars - 1;
  RowSet next;
  std::vector<const Row*> lower;
  std::vector<const Row*> upper;
  auto truncate = [k](const Row& r) {
    Row t{Vector(r.a.begin(), r.a.begin() + static_cast<std::ptrdiff_t>(k)), r.b, r.strict};
    return t;
  };
  for (const auto& r : in) {
    const int s = sgn(r.a[k]);
    if (s > 0) {
      lower.push_back(&r);
    } else if (s < 0) {
      upper.push_back(&r);
    } else if (!next.insert(truncate(r))) {
      return false;
    }
  }
  for (const Row* lo : lower) {
    for (const Row* up : upper) {
      // lo.a[k] > 0, up.a[k] < 0: combine so the last coefficient cancels.
      const Rational wl = -up->a[k];
      const Rational wu = lo->a[k];
      Row c{Vector(k), wl * lo->b + wu * up->b, lo->strict || up->strict};
      for (std::size_t j = 0; j < k; ++j) c.a[j] = wl * lo->a[j] + wu * up->a[j];
      if (!next.insert(std::move(c))) return false;
    }
  }
  out = next.take();
  return true;
}

}  // namespace

std::optional<Vector> feasible_by_elimination(const ConstraintSystem& system) {
  const std::size_t n = system.ambient_dim();
  std::vector<std::vector<Row>> levels(n + 1);
  {
    RowSet initial;
    for (const auto& c : system.constraints()) {
      if (!initial.insert(Row{c.normal, c.offset, c.relation == Relation::Greater})) {
        return std::nullopt;
      }
    }
    levels[n] = initial.take();
  }
  for (std::size_t k = n; k >= 1; --k) {
    if (!eliminate_last(levels[k], k, levels[k - 1])) return std::nullopt;
  }
  // Back-substitution: levels[k] constrains x_0..x_{k-1}; pick x_{k-1}.
  Vector x;
  x.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    std::optional<Rational> lo;
    std::optional<Rational> hi;
    bool lo_strict = false;
    bool hi_strict = false;
    for (const auto& r : levels[k]) {
      Rational rest = r.b;
      for (std::size_t j = 0; j + 1 < k; ++j) rest += r.a[j] * x[j];
      const Rational& coef = r.a[k - 1];
      const int s = sgn(coef);
      if (s == 0) continue;
      const Rational bound = -rest / coef;
      if (s > 0) {
        if (!lo || bound > *lo || (bound == *lo && r.strict)) {
          lo_strict = (lo && bound == *lo) ? (lo_strict || r.strict) : r.strict;
          lo = bound;
        }
      } else {
        if (!hi || bound < *hi || (bound == *hi && r.strict)) {
          hi_strict = (hi && bound == *hi) ? (hi_strict || r.strict) : r.strict;
          hi = bound;
        }
      }
    }
    Rational v;
    if (lo && hi) {
      v = (*lo + *hi) / 2;
    } else if (lo) {
      v = *lo + 1;
    } else if (hi) {
      v = *hi - 1;
    } else {
      v = 0;
    }
    x.push_back(v);
  }
  if (!system.contains(x)) return std::nullopt;  // unreachable when elimination is sound
  return x;
}

// ---------------------------------------------------------------------------
// Simplex

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t vars) : rows_(rows), vars_(vars), t_(rows, vars + 1) {}

  Rational& at(std::size_t r, std::size_t c) { return t_(r, c); }
  Rational& rhs(std::size_t r) { return t_(r, vars_); }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const Rational p = t_(pr, pc);
    for (std::size_t c = 0; c <= vars_; ++c) t_(pr, c) /= p;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr || sgn(t_(r, pc)) == 0) continue;
      const Rational f = t_(r, pc);
      for (std::size_t c = 0; c <= vars_; ++c) {
        if (sgn(t_(pr, c)) != 0) t_(r, c) -= f * t_(pr, c);
      }
    }
    basis_[pr] = pc;
  }

  enum class Outcome { Optimal, Unbounded };

  // Maximises cost·z over columns with allowed[c]; Bland's rule.
  Outcome optimize(const Vector& cost, const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = vars_;
      for (std::size_t c = 0; c < vars_ && enter == vars_; ++c) {
        if (!allowed[c]) continue;
        Rational rc = cost[c];
        for (std::size_t r = 0; r < rows_; ++r) {
          if (sgn(t_(r, c)) != 0) rc -= cost[basis_[r]] * t_(r, c);
        }
        if (sgn(rc) > 0) enter = c;
      }
      if (enter == vars_) return Outcome::Optimal;
      std::size_t leave = rows_;
      Rational best;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (sgn(t_(r, enter)) <= 0) continue;
        const Rational ratio = t_(r, vars_) / t_(r, enter);
        if (leave == rows_ || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == rows_) return Outcome::Unbounded;
      pivot(leave, enter);
    }
  }

  Vector solution() const {
    Vector z(vars_);
    for (std::size_t r = 0; r < rows_; ++r) z[basis_[r]] = t_(r, vars_);
    return z;
  }

 private:
  std::size_t rows_;
  std::size_t vars_;
  Matrix t_;
  std::vector<std::size_t> basis_ = std::vector<std::size_t>(rows_);
};

}  // namespace

std::optional<Vector> lp_maximize(const Matrix& a, const Vector& b, const Vector& c) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m || c.size() != n) {
    throw DimensionError("lp_maximize: inconsistent problem shape");
  }
  std::size_t n_art = 0;
  for (const auto& x : b) {
    if (sgn(x) < 0) ++n_art;
  }
  const std::size_t vars = n + m + n_art;
  Tableau tab(m, vars);
  std::size_t art = n + m;
  for (std::size_t r = 0; r < m; ++r) {
    const bool flip = sgn(b[r]) < 0;
    const Rational s = flip ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) tab.at(r, j) = s * a(r, j);
    tab.at(r, n + r) = s;
    tab.rhs(r) = s * b[r];
    if (flip) {
      tab.at(r, art) = 1;
      tab.basis()[r] = art++;
    } else {
      tab.basis()[r] = n + r;
    }
  }
  std::vector<bool> allowed(vars, true);
  if (n_art > 0) {
    Vector phase1(vars);
    for (std::size_t j = n + m; j < vars; ++j) phase1[j] = -1;
    tab.optimize(phase1, allowed);
    Rational infeasibility = 0;
    const Vector z = tab.solution();
    for (std::size_t j = n + m; j < vars; ++j) infeasibility += z[j];
    if (sgn(infeasibility) != 0) return std::nullopt;
    for (std::size_t r = 0; r < m; ++r) {
      if (tab.basis()[r] < n + m) continue;
      for (std::size_t j = 0; j < n + m; ++j) {
        if (sgn(tab.at(r, j)) != 0) {
          tab.pivot(r, j);
          break;
        }
      }
    }
    for (std::size_t j = n + m; j < vars; ++j) allowed[j] = false;
  }
  Vector cost(vars);
  for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
  if (tab.optimize(cost, allowed) == Tableau::Outcome::Unbounded) return std::nullopt;
  Vector z = tab.solution();
  z.resize(n);
  return z;
}

namespace {

// Variables (x+, x-, t): maximise t subject to a·x + b - w t >= 0, t <= cap.
// Returns (x, t*) or nullopt when even the closed system is infeasible.
std::optional<std::pair<Vector, Rational>> max_common_slack(const ConstraintSystem& system,
                                                            const std::vector<Rational>& weights,
                                                            const Rational& cap) {
  const std::size_t n = system.ambient_dim();
  const std::size_t m = system.size();
  Matrix a(m + 1, 2 * n + 1);
  Vector b(m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& con = system.constraints()[i];
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = -con.normal[j];
      a(i, n + j) = con.normal[j];
    }
    a(i, 2 * n) = weights[i];
    b[i] = con.offset;
  }
  a(m, 2 * n) = 1;
  b[m] = cap;
  Vector c(2 * n + 1);
  c[2 * n] = 1;
  auto z = lp_maximize(a, b, c);
  if (!z) return std::nullopt;
  Vector x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = (*z)[j] - (*z)[n + j];
  return std::make_pair(std::move(x), (*z)[2 * n]);
}

}  // namespace

std::optional<Vector> feasible_by_simplex(const ConstraintSystem& system) {
  std::vector<Rational> weights;
  bool any_strict = false;
  for (const auto& c : system.constraints()) {
    const bool strict = c.relation == Relation::Greater;
    any_strict = any_strict || strict;
    weights.emplace_back(strict ? 1 : 0);
  }
  auto best = max_common_slack(system, weights, Rational(1));
  if (!best) return std::nullopt;
  if (any_strict && sgn(best->second) <= 0) return std::nullopt;
  if (!system.contains(best->first)) return std::nullopt;  // unreachable
  return best->first;
}

std::optional<Ball> inscribed_ball(const ConstraintSystem& system, const Rational& cap) {
  std::vector<Rational> weights;
  for (const auto& c : system.constraints()) {
    weights.push_back(l1_norm(c.normal));
    if (sgn(weights.back()) == 0 && !c.satisfied_by(Vector(system.ambient_dim()))) return std::nullopt;
  }
  auto best = max_common_slack(system, weights, cap);
  if (!best || sgn(best->second) <= 0) return std::nullopt;
  const Vector& center = best->first;
  std::optional<Rational> min_slack;
  for (const auto& c : system.constraints()) {
    const Rational norm = l1_norm(c.normal);
    if (sgn(norm) == 0) continue;
    const Rational s = c.evaluate(center) / norm;
    if (!min_slack || s < *min_slack) min_slack = s;
  }
  const Rational radius = min_slack ? Rational(*min_slack / 2) : Rational(cap / 2);
  return Ball{center, radius};
}

}  // namespace regionscope
