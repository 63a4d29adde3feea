// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#include "regionscope/arrangement.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "regionscope/combinatorics.hpp"
#include "regionscope/errors.hpp"
#include "regionscope/parallel.hpp"

namespace regionscope {

Arrangement::Arrangement(std::size_t ambient_dim, std::vector<Hyperplane> hyperplanes)
    : dim_(ambient_dim) {
  for (auto& h : hyperplanes) add(std::move(h));
}

void Arrangement::add(Hyperplane h) {
  if (h.normal.size() != dim_) {
    throw DimensionError("hyperplane " + std::to_string(planes_.size() + 1) + " has normal of length " +
                         std::to_string(h.normal.size()) + " in ambient dimension " +
                         std::to_string(dim_));
  }
  if (is_zero(h.normal)) {
    throw PreconditionError("hyperplane " + std::to_string(planes_.size() + 1) + " has a zero normal");
  }
  planes_.push_back(std::move(h));
}

void Arrangement::flip(std::size_t i) {
  for (auto& x : planes_.at(i).normal) x = -x;
  planes_[i].offset = -planes_[i].offset;
}

Matrix Arrangement::normal_matrix() const {
  Matrix m(planes_.size(), dim_);
  for (std::size_t r = 0; r < planes_.size(); ++r)
    for (std::size_t c = 0; c < dim_; ++c) m(r, c) = planes_[r].normal[c];
  return m;
}

Vector Arrangement::offsets() const {
  Vector v;
  for (const auto& h : planes_) v.push_back(h.offset);
  return v;
}

std::string ArrangementRegion::sign_string() const {
  std::string s;
  for (bool b : signs) s.push_back(b ? '+' : '-');
  return s;
}

GeneralPositionCounts regions_formula_general_position(std::uint64_t m, std::uint64_t n0) {
  GeneralPositionCounts out;
  out.regions = binomial_prefix_sum(m, n0);
  out.bounded = m == 0 ? BigInt(0) : binomial(m - 1, n0);
  return out;
}

BigInt sweep_count_2d(std::uint64_t m) { return binomial(m, 2) + m + 1; }

bool is_general_position(const Arrangement& arrangement) {
  if (arrangement.empty()) throw PreconditionError("is_general_position: empty arrangement");
  const std::size_t m = arrangement.size();
  const std::size_t n = arrangement.ambient_dim();
  const std::size_t p = std::min(m, n);
  bool ok = true;
  for_each_subset(m, p, [&](const std::vector<std::size_t>& idx) {
    std::vector<Vector> normals;
    for (auto i : idx) normals.push_back(arrangement[i].normal);
    ok = linear_rank(normals) == p;
    return ok;
  });
  if (!ok || m <= n) return ok;
  for_each_subset(m, n + 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<Vector> rows;
    for (auto i : idx) {
      Vector r = arrangement[i].normal;
      r.push_back(arrangement[i].offset);
      rows.push_back(std::move(r));
    }
    ok = linear_rank(rows) == n + 1;
    return ok;
  });
  return ok;
}

namespace {

struct Cell {
  std::vector<bool> signs;
  Vector witness;
};

class RegionSearch {
 public:
  RegionSearch(const Arrangement& arr, const FeasibilityOptions& feas, const ConstraintSystem* domain)
      : arr_(arr), feas_(feas) {
    base_ = ConstraintSystem(arr.ambient_dim());
    if (domain != nullptr) {
      for (const auto& c : domain->constraints()) base_.add(c);
    }
  }

  std::optional<Vector> root_witness() const { return strict_feasible(base_, feas_); }

  // Depth-first over hyperplanes [depth, stop); cells reaching `stop` are
  // appended to `out`.
  void explore(ConstraintSystem& sys, std::vector<bool>& signs, const Vector& witness,
               std::size_t stop, std::vector<Cell>& out) const {
    const std::size_t depth = signs.size();
    if (depth == stop) {
      out.push_back({signs, witness});
      return;
    }
    const Hyperplane& h = arr_[depth];
    const int s = sgn(h.evaluate(witness));
    for (bool plus : {true, false}) {
      Constraint c{h.normal, h.offset, Relation::Greater};
      if (!plus) c = c.negated();
      sys.add(c);
      signs.push_back(plus);
      if ((plus && s > 0) || (!plus && s < 0)) {
        explore(sys, signs, witness, stop, out);
      } else if (auto w = strict_feasible(sys, feas_)) {
        explore(sys, signs, *w, stop, out);
      }
      signs.pop_back();
      sys.pop();
    }
  }

  ConstraintSystem system_for(const std::vector<bool>& signs) const {
    ConstraintSystem sys = base_;
    for (std::size_t i = 0; i < signs.size(); ++i) {
      Constraint c{arr_[i].normal, arr_[i].offset, Relation::Greater};
      sys.add(signs[i] ? c : c.negated());
    }
    return sys;
  }

 private:
  const Arrangement& arr_;
  FeasibilityOptions feas_;
  ConstraintSystem base_;
};

}  // namespace

std::vector<ArrangementRegion> enumerate_arrangement_regions(
    const Arrangement& arrangement, const ArrangementEnumerationOptions& options,
    const ConstraintSystem* domain) {
  if (domain != nullptr && domain->ambient_dim() != arrangement.ambient_dim()) {
    throw DimensionError("enumerate_arrangement_regions: domain dimension " +
                         std::to_string(domain->ambient_dim()) + " vs arrangement dimension " +
                         std::to_string(arrangement.ambient_dim()));
  }
  RegionSearch search(arrangement, options.feasibility, domain);
  std::vector<Cell> cells;
  const auto root = search.root_witness();
  if (!root) return {};
  const std::size_t m = arrangement.size();
  if (options.jobs <= 1 || m < 4) {
    ConstraintSystem sys = search.system_for({});
    std::vector<bool> signs;
    search.explore(sys, signs, *root, m, cells);
  } else {
    // Split at a fixed prefix depth; subtrees are independent.
    std::vector<Cell> frontier;
    {
      ConstraintSystem sys = search.system_for({});
      std::vector<bool> signs;
      search.explore(sys, signs, *root, std::min<std::size_t>(m / 2, 6), frontier);
    }
    std::vector<std::vector<Cell>> parts(frontier.size());
    parallel_for(frontier.size(), options.jobs, [&](std::size_t i) {
      ConstraintSystem sys = search.system_for(frontier[i].signs);
      std::vector<bool> signs = frontier[i].signs;
      search.explore(sys, signs, frontier[i].witness, m, parts[i]);
    });
    for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(cells));
  }
  std::vector<ArrangementRegion> out;
  out.reserve(cells.size());
  for (auto& c : cells) {
    ArrangementRegion r;
    for (std::size_t i = 0; i < c.signs.size(); ++i) {
      if (c.signs[i]) r.active_set.push_back(i);
    }
    r.signs = std::move(c.signs);
    r.witness = std::move(c.witness);
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const ArrangementRegion& a, const ArrangementRegion& b) {
    return a.sign_string() < b.sign_string();
  });
  return out;
}

Arrangement essentialize(const Arrangement& arrangement) {
  if (arrangement.empty()) throw PreconditionError("essentialize: empty arrangement");
  const Matrix normals = arrangement.normal_matrix();
  const auto basis_rows = independent_rows(normals);
  std::vector<Vector> basis;
  for (auto r : basis_rows) basis.push_back(normals.row_vector(r));
  const Matrix b = Matrix::from_rows(basis);
  Arrangement out(basis.size());
  for (const auto& h : arrangement.hyperplanes()) out.add({b * h.normal, h.offset});
  return out;
}

std::vector<Vector> arrangement_vertices(const Arrangement& arrangement) {
  std::vector<Vector> out;
  if (arrangement.empty()) return out;
  const Matrix normals = arrangement.normal_matrix();
  const std::size_t r = rank(normals);
  for_each_subset(arrangement.size(), r, [&](const std::vector<std::size_t>& idx) {
    std::vector<Vector> rows;
    Vector rhs;
    for (auto i : idx) {
      rows.push_back(arrangement[i].normal);
      rhs.push_back(-arrangement[i].offset);
    }
    const Matrix n = Matrix::from_rows(rows);
    Matrix gram(r, r);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t c = 0; c < r; ++c) gram(a, c) = dot(rows[a], rows[c]);
    auto inv = inverse(gram);
    if (!inv) return true;  // dependent normals
    const Vector y = *inv * rhs;
    Vector x(arrangement.ambient_dim());
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t c = 0; c < x.size(); ++c) x[c] += n(a, c) * y[a];
    out.push_back(std::move(x));
    return true;
  });
  return out;
}

Arrangement scale_into_ball(const Arrangement& arrangement, const Rational& radius,
                            const Vector& center) {
  if (sgn(radius) <= 0) throw PreconditionError("scale_into_ball: radius must be positive");
  if (center.size() != arrangement.ambient_dim()) {
    throw DimensionError("scale_into_ball: center of length " + std::to_string(center.size()) +
                         " in ambient dimension " + std::to_string(arrangement.ambient_dim()));
  }
  if (arrangement.empty()) return arrangement;
  Rational d = 0;
  for (const auto& v : arrangement_vertices(arrangement)) d = std::max(d, l1_norm(v));
  d += 1;
  const Rational lambda = radius / (2 * arrangement.ambient_dim() * d);
  Arrangement out(arrangement.ambient_dim());
  for (const auto& h : arrangement.hyperplanes()) {
    out.add({h.normal, lambda * h.offset - dot(h.normal, center)});
  }
  return out;
}

ConstraintSystem open_cube(const Vector& center, const Rational& half_side) {
  ConstraintSystem cube(center.size());
  for (std::size_t i = 0; i < center.size(); ++i) {
    Vector e(center.size());
    e[i] = 1;
    cube.add(e, half_side - center[i]);  // x_i > c_i - h
    e[i] = -1;
    cube.add(e, half_side + center[i]);  // x_i < c_i + h
  }
  return cube;
}

std::vector<ArrangementRegion> regions_in_ball(const Arrangement& arrangement,
                                               const Rational& radius, const Vector& center,
                                               const ArrangementEnumerationOptions& options) {
  const ConstraintSystem cube =
      open_cube(center, radius / static_cast<unsigned long>(std::max<std::size_t>(1, center.size())));
  auto regions = enumerate_arrangement_regions(arrangement, options, &cube);
  const Rational r2 = radius * radius;
  for (const auto& reg : regions) {
    if (!(squared_norm(reg.witness - center) < r2)) {
      throw Error("regions_in_ball: witness outside the ball");  // cube ⊂ ball
    }
  }
  return regions;
}

namespace {

// Tangent hyperplane of y = |x|^2 / 4 at q (x ∈ R^{n0-1}); positive side is
// below the paraboloid's tangent: 2 q·x - 4 y - |q|^2 > 0.
Hyperplane paraboloid_tangent(const Vector& q) {
  Vector normal;
  for (const auto& c : q) normal.push_back(2 * c);
  normal.emplace_back(-4);
  return {normal, -squared_norm(q)};
}

}  // namespace

bool has_all_consecutive_active_sets(const std::vector<ArrangementRegion>& regions, std::size_t n) {
  std::set<std::vector<std::size_t>> seen;
  for (const auto& r : regions) seen.insert(r.active_set);
  if (!seen.contains({})) return false;
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<std::size_t> block;
    for (std::size_t b = a; b < n; ++b) {
      block.push_back(b);
      if (!seen.contains(block)) return false;
    }
  }
  return true;
}

Arrangement build_tangent_arrangement(std::size_t n, std::size_t n0) {
  if (n < 1 || n0 < 2) throw PreconditionError("build_tangent_arrangement: needs n >= 1, n0 >= 2");
  if (n0 == 2) {
    // Tangent points 1-n, 3-n, ..., n-1, symmetric about the apex.
    Arrangement arr(2);
    for (std::size_t i = 1; i <= n; ++i) {
      arr.add(paraboloid_tangent({Rational(2 * static_cast<long>(i) - static_cast<long>(n) - 1)}));
    }
    return arr;
  }
  // Points on a slightly bent curve q_i = (i, eps i^2, eps i^3, ...).
  Rational eps(1, 10 * static_cast<long>(n * n));
  for (int attempt = 0; attempt < 24; ++attempt, eps /= 2) {
    Arrangement arr(n0);
    for (std::size_t i = 1; i <= n; ++i) {
      Vector q;
      Rational power = i;
      q.emplace_back(power);
      for (std::size_t k = 1; k + 1 < n0; ++k) {
        power *= i;
        q.push_back(eps * power);
      }
      arr.add(paraboloid_tangent(q));
    }
    if (!is_general_position(arr)) continue;
    if (has_all_consecutive_active_sets(enumerate_arrangement_regions(arr), n)) return arr;
  }
  throw Error("build_tangent_arrangement: no verified construction for n=" + std::to_string(n) +
              ", n0=" + std::to_string(n0));
}

}  // namespace regionscope
