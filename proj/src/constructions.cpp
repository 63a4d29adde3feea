// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#include "regionscope/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <utility>

#include "regionscope/bounds.hpp"
#include "regionscope/errors.hpp"
#include "regionscope/random.hpp"

namespace regionscope {
namespace {

constexpr std::uint64_t kReseedStride = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kOutputSalt = 0xC2B2AE3D27D4EB4FULL;
constexpr int kMaxReseeds = 64;
constexpr long kDiagonalCap = 4;

Rational floor_of(const Rational& q) {
  BigInt f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

Layer generic_output_row(std::size_t width, std::uint64_t seed) {
  RationalSampler sampler(seed ^ kOutputSalt);
  Vector row(width);
  for (auto& x : row) x = sampler.next_nonzero(1000, 97);
  return {Matrix::from_rows({row}), Vector(1)};
}

// Image under x ↦ λx + center with every vertex inside (9/10)·half_width.
Arrangement fit_into_cube(const Arrangement& arr, const Vector& center, const Rational& half_width) {
  Rational extent = 0;
  for (const auto& v : arrangement_vertices(arr)) {
    for (const auto& x : v) extent = std::max(extent, Rational(abs(x)));
  }
  const Rational lambda = sgn(extent) > 0 ? Rational(9 * half_width / (10 * extent)) : half_width / 2;
  Arrangement out(arr.ambient_dim());
  for (const auto& h : arr.hyperplanes()) out.add({h.normal, lambda * h.offset - dot(h.normal, center)});
  return out;
}

Matrix pair_sum_matrix(std::size_t n0) {
  Matrix p(n0, 2 * n0);
  for (std::size_t j = 0; j < n0; ++j) {
    p(j, 2 * j) = 1;
    p(j, 2 * j + 1) = 1;
  }
  return p;
}

// Units 2j and 2j+1 compute rect(z_j) and rect(-z_j).
Layer folding_layer(std::size_t n0) {
  Layer layer{Matrix(2 * n0, n0), Vector(2 * n0)};
  for (std::size_t j = 0; j < n0; ++j) {
    layer.weights(2 * j, j) = 1;
    layer.weights(2 * j + 1, j) = -1;
  }
  return layer;
}

void finish_report(ConstructionReport& report, const ConstructionOptions& options) {
  const RegionInventory inv =
      merge_linearity_regions(enumerate_activation_regions(report.net, options.enumeration),
                              options.enumeration.feasibility);
  report.activation_count = inv.activation_count;
  report.enumerated_merged = inv.merged_count;
  report.satisfied = BigInt(static_cast<unsigned long>(inv.merged_count)) >= report.claimed_bound;
}

// Polyhedron of `region` restricted to `domain`, rewritten in the coordinates
// h = M y + e of the block units (M invertible).
ConstraintSystem to_block_coordinates(const Arrangement& arr, const ArrangementRegion& region,
                                      const ConstraintSystem* domain,
                                      const std::vector<std::size_t>& block) {
  const std::size_t n0 = arr.ambient_dim();
  ConstraintSystem sys(n0);
  if (domain != nullptr) {
    for (const auto& c : domain->constraints()) sys.add(c);
  }
  for (std::size_t i = 0; i < arr.size(); ++i) {
    Constraint c{arr[i].normal, arr[i].offset, Relation::Greater};
    sys.add(region.signs[i] ? c : c.negated());
  }
  std::vector<Vector> rows;
  Vector e;
  for (auto i : block) {
    rows.push_back(arr[i].normal);
    e.push_back(arr[i].offset);
  }
  const auto inv = inverse(Matrix::from_rows(rows));
  if (!inv) throw Error("deep construction: block hyperplanes have dependent normals");
  ConstraintSystem out(n0);
  for (const auto& c : sys.constraints()) {
    // a·y + β with y = M^{-1}(h - e)
    Vector a(n0);
    for (std::size_t col = 0; col < n0; ++col)
      for (std::size_t r = 0; r < n0; ++r) a[col] += c.normal[r] * (*inv)(r, col);
    out.add(a, c.offset - dot(a, e), c.relation);
  }
  return out;
}


ConstraintSystem cell_system(const Arrangement& arr, const std::vector<bool>& signs,
                             const ConstraintSystem* domain) {
  ConstraintSystem sys(arr.ambient_dim());
  if (domain != nullptr) {
    for (const auto& c : domain->constraints()) sys.add(c);
  }
  for (std::size_t i = 0; i < arr.size(); ++i) {
    Constraint c{arr[i].normal, arr[i].offset, Relation::Greater};
    sys.add(signs[i] ? c : c.negated());
  }
  return sys;
}

// Smallest inscribed radius over the cells meeting `domain`; nullopt unless
// all `expected` cells do.
std::optional<Rational> thinnest_cell(const Arrangement& arr, const ConstraintSystem& domain,
                                      std::size_t expected) {
  const auto regions = enumerate_arrangement_regions(arr, {}, &domain);
  if (regions.size() != expected) return std::nullopt;
  std::optional<Rational> thinnest;
  for (const auto& r : regions) {
    auto ball = inscribed_ball(cell_system(arr, r.signs, &domain), Rational(1000));
    if (!ball) return std::nullopt;
    if (!thinnest || ball->radius < *thinnest) thinnest = ball->radius;
  }
  return thinnest;
}

// Tangents of a circle about `center` at angles 2π(3i+1)/(3p), p odd: no two
// parallel, none axis-parallel. The circle radius is the one among
// half_width·j/16 whose thinnest cell inside the cube is widest.
std::optional<Arrangement> polygon_tangents(std::size_t m, const Vector& center, const Rational& half_width) {
  constexpr std::size_t kMaxLines = 16;
  constexpr long kSteps = 16;
  if (m < 2 || m > kMaxLines) return std::nullopt;
  const std::size_t p = m % 2 == 1 ? m : m + 1;
  std::vector<Vector> normals;
  for (std::size_t i = 0; i < m; ++i) {
    const double half_angle = std::numbers::pi * static_cast<double>(3 * i + 1) / static_cast<double>(3 * p);
    const Rational t = ratio(BigInt(std::lround(std::tan(half_angle) * 1024)), 1024);
    if (sgn(t) == 0 || abs(t) == 1) return std::nullopt;
    const Rational len = 1 + t * t;
    normals.push_back({(1 - t * t) / len, 2 * t / len});
  }
  const ConstraintSystem cube = open_cube(center, half_width);
  const std::size_t expected = 1 + m + m * (m - 1) / 2;
  std::optional<Arrangement> best;
  Rational best_width;
  for (long j = 1; j <= kSteps; ++j) {
    const Rational radius = half_width * ratio(j, kSteps);
    Arrangement arr(2);
    for (const auto& a : normals) arr.add({a, -radius - dot(a, center)});
    if (j == 1 && !is_general_position(arr)) return std::nullopt;
    auto width = thinnest_cell(arr, cube, expected);
    if (width && (!best || *width > best_width)) {
      best = std::move(arr);
      best_width = *width;
    }
  }
  return best;
}

// Largest ball (in the inscribed_ball sense) centered on the diagonal
// t·(1, ..., 1), t != 0; nullopt when the diagonal misses the interior.
std::optional<Ball> diagonal_ball(const ConstraintSystem& system, const Rational& cap) {
  struct Row {
    Rational slope, offset;
  };
  std::vector<Row> rows;
  for (const auto& c : system.constraints()) {
    const Rational w = l1_norm(c.normal);
    Rational sum = 0;
    for (const auto& x : c.normal) sum += x;
    if (sgn(w) == 0) {
      if (!c.satisfied_by(Vector(system.ambient_dim()))) return std::nullopt;
      continue;
    }
    rows.push_back({sum / w, c.offset / w});
  }
  auto value = [&](const Rational& t) {
    Rational v = cap;
    for (const auto& r : rows) v = std::min(v, Rational(r.slope * t + r.offset));
    return v;
  };
  std::vector<Rational> candidates{Rational(0)};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (sgn(rows[i].slope) != 0) candidates.push_back((cap - rows[i].offset) / rows[i].slope);
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (rows[i].slope != rows[j].slope)
        candidates.push_back((rows[j].offset - rows[i].offset) / (rows[i].slope - rows[j].slope));
    }
  }
  std::optional<Rational> best_t;
  Rational best_v;
  for (const auto& t : candidates) {
    const Rational v = value(t);
    if (!best_t || v > best_v || (v == best_v && abs(t) < abs(*best_t))) {
      best_t = t;
      best_v = v;
    }
  }
  if (!best_t || sgn(best_v) <= 0 || sgn(*best_t) == 0) return std::nullopt;
  return Ball{Vector(system.ambient_dim(), *best_t), best_v / 2};
}

// Largest half-side k/10 with the cube strictly inside the unit ball, or 1/n0
// when that is larger.
Rational cube_in_unit_ball(std::size_t n0) {
  long k = 0;
  while (static_cast<std::size_t>((k + 1) * (k + 1)) * n0 < 100) ++k;
  return std::max(ratio(k, 10), ratio(1, static_cast<long>(n0)));
}

}  // namespace

std::vector<AffineMap> CommonBallMaps::maps() const {
  std::vector<AffineMap> out;
  for (const auto& u : scalings) out.push_back({u, shared_offset});
  return out;
}

CommonBallMaps maps_to_common_ball(const std::vector<BallSpec>& balls) {
  if (balls.empty()) throw PreconditionError("maps_to_common_ball: no balls");
  const std::size_t n0 = balls.front().center.size();
  for (std::size_t i = 0; i < balls.size(); ++i) {
    const auto& b = balls[i];
    if (b.center.size() != n0) {
      throw DimensionError("maps_to_common_ball: ball " + std::to_string(i + 1) + " has dimension " +
                           std::to_string(b.center.size()) + ", expected " + std::to_string(n0));
    }
    if (sgn(b.radius) <= 0) throw PreconditionError("maps_to_common_ball: radius must be positive");
    for (std::size_t j = 0; j < n0; ++j) {
      if (sgn(b.center[j]) == 0) {
        throw PreconditionError("maps_to_common_ball: ball " + std::to_string(i + 1) +
                                " has a zero center coordinate " + std::to_string(j + 1));
      }
      if (sgn(b.center[j]) != sgn(balls.front().center[j])) {
        throw PreconditionError("maps_to_common_ball: coordinate " + std::to_string(j + 1) +
                                " changes sign between balls; no positive scaling equalises it");
      }
    }
  }
  std::vector<Vector> u(balls.size(), Vector(n0));
  Rational smallest;
  bool first = true;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    for (std::size_t j = 0; j < n0; ++j) {
      u[i][j] = balls.front().center[j] / balls[i].center[j];
      const Rational ru = balls[i].radius * u[i][j];
      if (first || ru < smallest) smallest = ru;
      first = false;
    }
  }
  CommonBallMaps out;
  out.eta = floor_of(1 / smallest) + 1;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    Matrix d(n0, n0);
    for (std::size_t j = 0; j < n0; ++j) d(j, j) = out.eta * u[i][j];
    out.scalings.push_back(std::move(d));
  }
  out.shared_offset = Vector(n0);
  for (std::size_t j = 0; j < n0; ++j) out.shared_offset[j] = -out.scalings[0](j, j) * balls[0].center[j];
  return out;
}

Arrangement generic_arrangement(std::size_t n0, std::size_t m, std::uint64_t seed) {
  for (int attempt = 0; attempt < kMaxReseeds; ++attempt) {
    RationalSampler sampler(seed + static_cast<std::uint64_t>(attempt) * kReseedStride);
    Arrangement arr(n0);
    for (std::size_t i = 0; i < m; ++i) {
      Hyperplane h{Vector(n0), sampler.next(9, 4)};
      for (auto& x : h.normal) x = sampler.next_nonzero(9, 4);
      arr.add(std::move(h));
    }
    if (m == 0 || is_general_position(arr)) return arr;
  }
  throw Error("generic_arrangement: no general-position draw after " + std::to_string(kMaxReseeds) +
              " reseeds (n0=" + std::to_string(n0) + ", m=" + std::to_string(m) + ")");
}

Arrangement spread_arrangement(std::size_t n0, std::size_t m, const Vector& center,
                               const Rational& half_width, std::uint64_t seed) {
  if (center.size() != n0) throw DimensionError("spread_arrangement: center has the wrong length");
  if (m == 0) return Arrangement(n0);
  if (n0 == 1) {
    Arrangement arr(1);
    for (std::size_t i = 0; i < m; ++i) {
      const Rational point = center[0] - half_width + 2 * half_width * ratio(i + 1, m + 1);
      arr.add({{Rational(1)}, -point});
    }
    return arr;
  }
  if (n0 == 2) {
    if (auto arr = polygon_tangents(m, center, half_width)) return std::move(*arr);
    // Tangents of the unit circle at angles 2·atan(t_i), t_i = (4i+1)/(4m-4i-1);
    // no normal is parallel to an axis.
    Arrangement arr(2);
    for (std::size_t i = 0; i < m; ++i) {
      const Rational t = ratio(4 * i + 1, 4 * (m - i) - 1);
      const Rational len = 1 + t * t;
      arr.add({{(1 - t * t) / len, 2 * t / len}, Rational(-1)});
    }
    return fit_into_cube(arr, center, half_width);
  }
  return fit_into_cube(generic_arrangement(n0, m, seed), center, half_width);
}

void orient_without_dead_region(Arrangement& arrangement) {
  const std::size_t m = arrangement.size();
  if (m == 0 || m > 20) return;
  std::set<std::string> seen;
  for (const auto& r : enumerate_arrangement_regions(arrangement)) seen.insert(r.sign_string());
  if (!seen.contains(std::string(m, '-'))) return;
  // Smallest unrealised sign vector (in '-' < '+' order) becomes all-negative.
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::string s(m, '-');
    for (std::size_t i = 0; i < m; ++i) {
      if ((mask >> (m - 1 - i)) & 1U) s[i] = '+';
    }
    if (seen.contains(s)) continue;
    for (std::size_t i = 0; i < m; ++i) {
      if (s[i] == '+') arrangement.flip(i);
    }
    return;
  }
}

Layer layer_from_arrangement(const Arrangement& arrangement) {
  return {arrangement.normal_matrix(), arrangement.offsets()};
}

RectifierNet build_shallow_generic(std::size_t n0, std::size_t m, std::uint64_t seed) {
  if (m < 1) throw PreconditionError("build_shallow_generic: needs at least one hidden unit");
  const Arrangement arr = generic_arrangement(n0, m, seed);
  return RectifierNet(n0, {layer_from_arrangement(arr)}, generic_output_row(m, seed));
}

ConstructionReport report_shallow_generic(std::size_t n0, std::size_t m, const ConstructionOptions& options) {
  ConstructionReport report;
  report.construction = "shallow";
  report.n0 = n0;
  report.widths = {m};
  report.k = 1;
  report.seed = options.seed;
  report.net = build_shallow_generic(n0, m, options.seed);
  report.claimed_bound = shallow_max_regions(n0, m);
  finish_report(report, options);
  return report;
}

ConstructionReport build_deep_theorem_net(std::size_t n0, const std::vector<std::size_t>& widths,
                                          const ConstructionOptions& options) {
  if (n0 < 2) throw PreconditionError("build_deep_theorem_net: needs n0 >= 2");
  if (widths.empty()) throw PreconditionError("build_deep_theorem_net: no hidden layers");
  for (std::size_t l = 0; l < widths.size(); ++l) {
    if (widths[l] < n0) {
      throw PreconditionError("build_deep_theorem_net: width " + std::to_string(widths[l]) + " of layer " +
                              std::to_string(l + 1) + " is below n0 = " + std::to_string(n0));
    }
  }
  const Vector origin(n0);
  std::vector<Layer> hidden;
  if (widths.size() == 1) {
    hidden.push_back(layer_from_arrangement(generic_arrangement(n0, widths[0], options.seed)));
  } else {
    Arrangement current = build_tangent_arrangement(widths[0], n0);
    hidden.push_back(layer_from_arrangement(current));
    std::optional<ConstraintSystem> domain;
    const Rational inner_half = cube_in_unit_ball(n0);
    const ConstraintSystem inner_cube = open_cube(origin, inner_half);
    for (std::size_t l = 1; l < widths.size(); ++l) {
      const std::size_t p = widths[l - 1] / n0;
      const auto regions =
          enumerate_arrangement_regions(current, {}, domain ? &*domain : nullptr);
      std::vector<BallSpec> balls;
      std::vector<BallSpec> diagonal;
      for (std::size_t i = 0; i < p; ++i) {
        std::vector<std::size_t> block;
        for (std::size_t j = 0; j < n0; ++j) block.push_back(i * n0 + j);
        auto it = std::find_if(regions.begin(), regions.end(),
                               [&](const ArrangementRegion& r) { return r.active_set == block; });
        if (it == regions.end()) {
          throw Error("deep construction: layer " + std::to_string(l) + " lacks a region for block " +
                      std::to_string(i + 1));
        }
        const ConstraintSystem in_h =
            to_block_coordinates(current, *it, domain ? &*domain : nullptr, block);
        auto ball = inscribed_ball(in_h, Rational(1));
        if (!ball) throw Error("deep construction: block region has empty interior");
        balls.push_back({ball->center, ball->radius});
        if (auto d = diagonal_ball(in_h, Rational(kDiagonalCap))) diagonal.push_back({d->center, d->radius});
      }
      // Diagonal centers of one sign make every scaling a multiple of the identity.
      const bool isotropic =
          diagonal.size() == p && std::all_of(diagonal.begin(), diagonal.end(), [&](const BallSpec& b) {
            return sgn(b.center[0]) == sgn(diagonal.front().center[0]);
          });
      const CommonBallMaps common = maps_to_common_ball(isotropic ? diagonal : balls);
      Matrix u(n0, widths[l - 1]);  // surplus columns stay zero
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < n0; ++j) u(j, i * n0 + j) = common.scalings[i](j, j);
      const AffineMap intermediary{u, common.shared_offset};

      Arrangement next;
      if (l + 1 < widths.size()) {
        next = scale_into_ball(build_tangent_arrangement(widths[l], n0), Rational(1), origin);
      } else {
        next = spread_arrangement(n0, widths[l], origin, inner_half, options.seed);
        orient_without_dead_region(next);
      }
      hidden.push_back(absorb_affine(intermediary, layer_from_arrangement(next)));
      current = std::move(next);
      domain = inner_cube;
    }
  }
  ConstructionReport report;
  report.construction = "deep";
  report.n0 = n0;
  report.widths.assign(widths.begin(), widths.end());
  report.k = widths.size();
  report.seed = options.seed;
  report.net = RectifierNet(n0, std::move(hidden), generic_output_row(widths.back(), options.seed));
  report.claimed_bound = deep_lower_bound(n0, report.widths);
  finish_report(report, options);
  return report;
}

ConstructionReport build_folding_net(std::size_t n0, std::size_t k, const ConstructionOptions& options) {
  if (n0 < 1 || k < 1) throw PreconditionError("build_folding_net: needs n0 >= 1 and k >= 1");
  const std::size_t width = 2 * n0;
  std::vector<Layer> hidden;
  Arrangement last;
  if (k == 1) {
    last = spread_arrangement(n0, width, Vector(n0), Rational(1), options.seed);
    orient_without_dead_region(last);
    hidden.push_back(layer_from_arrangement(last));
  } else {
    hidden.push_back(folding_layer(n0));
    const Matrix pair_sum = pair_sum_matrix(n0);
    Rational fold_point(1, 2);
    for (std::size_t l = 2; l < k; ++l, fold_point /= 2) {
      // rect(±(s_j - fold_point)) with s = pair sums of the previous layer.
      const AffineMap recenter{pair_sum, Vector(n0, -fold_point)};
      hidden.push_back(absorb_affine(recenter, folding_layer(n0)));
    }
    // Every cell of the folded input maps onto a set containing (0, cube)^n0.
    const Rational cube = 2 * fold_point;
    last = spread_arrangement(n0, width, Vector(n0, cube / 2), cube / 2, options.seed);
    orient_without_dead_region(last);
    hidden.push_back(absorb_affine({pair_sum, Vector(n0)}, layer_from_arrangement(last)));
  }
  ConstructionReport report;
  report.construction = "folding";
  report.n0 = n0;
  report.widths.assign(k, width);
  report.k = k;
  report.seed = options.seed;
  report.net = RectifierNet(n0, std::move(hidden), generic_output_row(width, options.seed));
  report.claimed_bound = folding_lower_bound(n0, k);
  finish_report(report, options);
  return report;
}

VerificationResult verify_construction(const ConstructionReport& report, const ConstructionOptions& options) {
  VerificationResult out;
  std::ostringstream diag;
  const RegionInventory inv =
      merge_linearity_regions(enumerate_activation_regions(report.net, options.enumeration),
                              options.enumeration.feasibility);
  const BigInt counted = static_cast<unsigned long>(inv.merged_count);
  bool ok = counted >= report.claimed_bound;
  diag << report.construction << ": claimed " << report.claimed_bound.get_str() << ", enumerated "
       << inv.merged_count << " merged (" << inv.activation_count << " activation regions)";
  if (!ok) diag << "; claim NOT met";
  if (inv.merged_count != report.enumerated_merged) {
    ok = false;
    diag << "; report recorded " << report.enumerated_merged;
  }
  if (report.construction == "folding" && report.k >= 2) {
    RationalSampler sampler(report.seed + 17);
    for (int trial = 0; trial < 16 && ok; ++trial) {
      const Vector x = sampler.vector(report.net.input_dim(), 20, 7);
      const Vector fx = evaluate(report.net, x);
      for (std::size_t j = 0; j < x.size(); ++j) {
        Vector y = x;
        y[j] = -y[j];
        if (evaluate(report.net, y) != fx) {
          ok = false;
          diag << "; folding symmetry broken in coordinate " << (j + 1) << " at trial " << trial;
          break;
        }
      }
    }
  }
  out.ok = ok;
  out.diagnostic = diag.str();
  return out;
}

std::size_t count_regions_with_first_layer(const RegionInventory& inventory,
                                           const std::vector<bool>& first_layer) {
  return static_cast<std::size_t>(
      std::count_if(inventory.regions.begin(), inventory.regions.end(),
                    [&](const LinearRegion& r) { return r.pattern.layers.front() == first_layer; }));
}

}  // namespace regionscope
