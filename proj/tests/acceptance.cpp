// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion. Every check is exact;
// the only tolerances are the wall-clock budgets below.

#include <algorithm>
#include <chrono>
#include <optional>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "regionscope/arrangement.hpp"
#include "regionscope/bounds.hpp"
#include "regionscope/constructions.hpp"
#include "regionscope/formats.hpp"
#include "regionscope/network.hpp"
#include "regionscope/random.hpp"

using namespace regionscope;

namespace {

constexpr double kBudget1 = 30;
constexpr double kBudget2 = 5;
constexpr double kBudget3 = 60;
constexpr double kBudget4 = 600;
constexpr double kBudget5 = 60;
constexpr double kBudget6 = 30;
constexpr double kBudget7 = 120;
constexpr double kBudget8 = 120;  // per net
constexpr double kBudget9 = 5;
constexpr double kBudget10 = 60;

constexpr std::size_t kOracleResolution = 401;
constexpr std::size_t kHeatmapResolution = 201;
constexpr std::size_t kJobs = 4;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

EnumerationOptions parallel() {
  EnumerationOptions o;
  o.jobs = kJobs;
  return o;
}

ConstructionOptions construction_options() { return {0, parallel()}; }

std::size_t merged_count(const RectifierNet& net) {
  return merge_linearity_regions(enumerate_activation_regions(net, parallel())).merged_count;
}

struct CoveringBox {
  Vector lo, hi;
  bool certified = false;
};

// Rows of `system` tightened so that they hold on the whole closed box of
// sides `sides` centered at x.
ConstraintSystem shrink_by_cell(const ConstraintSystem& system, const Vector& sides) {
  ConstraintSystem out(system.ambient_dim());
  for (const auto& c : system.constraints()) {
    Rational reach = 0;
    for (std::size_t j = 0; j < sides.size(); ++j) reach += abs(c.normal[j]) * sides[j] / 2;
    out.add(c.normal, c.offset - reach, c.relation);
  }
  return out;
}

// Box about the middle of the inscribed-ball centers of the bounded regions.
// Half-sides are their spread times factors from a 5/4 ladder, one factor per
// axis in two dimensions and a common one otherwise; candidates are tried by
// increasing volume until every merged region contains a whole grid cell
// (hence a grid point). Falls back to the smallest box meeting every region.
CoveringBox covering_box(const RegionInventory& inv, std::size_t resolution) {
  const std::size_t n0 = inv.regions.front().witness.size();
  const Rational far(1000000);
  std::optional<Vector> clo, chi;
  for (const auto& r : inv.regions) {
    const auto ball = inscribed_ball(r.region, far);
    if (!ball || ball->radius * 2 == far) continue;
    if (!clo) {
      clo = chi = ball->center;
      continue;
    }
    for (std::size_t j = 0; j < n0; ++j) {
      if (ball->center[j] < (*clo)[j]) (*clo)[j] = ball->center[j];
      if (ball->center[j] > (*chi)[j]) (*chi)[j] = ball->center[j];
    }
  }
  Vector center(n0), spread(n0, Rational(1));
  if (clo) {
    Rational widest(1, 64);
    for (std::size_t j = 0; j < n0; ++j) {
      center[j] = ((*clo)[j] + (*chi)[j]) / 2;
      spread[j] = ((*chi)[j] - (*clo)[j]) / 2;
      widest = std::max(widest, spread[j]);
    }
    for (auto& x : spread) x = std::max(x, Rational(widest / 8));
  }
  constexpr int kSteps = 36;
  std::vector<Rational> ladder{Rational(1, 16)};
  while (ladder.size() < kSteps) ladder.push_back(ladder.back() * 5 / 4);
  std::vector<std::vector<int>> candidates;
  if (n0 == 2) {
    for (int a = 0; a < kSteps; ++a)
      for (int b = 0; b < kSteps; ++b) candidates.push_back({a, b});
  } else {
    for (int a = 0; a < kSteps; ++a) candidates.push_back(std::vector<int>(n0, a));
  }
  auto volume_rank = [](const std::vector<int>& c) {
    int sum = 0;
    for (int x : c) sum += x;
    return sum;
  };
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](const auto& x, const auto& y) { return volume_rank(x) < volume_rank(y); });

  std::optional<CoveringBox> fallback;
  for (const auto& steps : candidates) {
    CoveringBox b{center, center, true};
    ConstraintSystem box(n0);
    Vector sides(n0);
    for (std::size_t j = 0; j < n0; ++j) {
      const Rational half = ladder[steps[j]] * spread[j];
      b.lo[j] -= half;
      b.hi[j] += half;
      Vector e(n0);
      e[j] = 1;
      box.add(e, -b.lo[j]);
      e[j] = -1;
      box.add(e, b.hi[j]);
      sides[j] = 2 * half / static_cast<long>(resolution - 1);
    }
    std::vector<char> met(inv.merged_count, 0), holds_cell(inv.merged_count, 0);
    bool all_met = true;
    for (std::size_t i = 0; i < inv.regions.size(); ++i) {
      ConstraintSystem sys = box;
      for (const auto& c : inv.regions[i].region.constraints()) sys.add(c);
      const std::size_t id = inv.component[i];
      if (!met[id] && strict_feasible(sys)) met[id] = 1;
      if (met[id] && !holds_cell[id] && strict_feasible(shrink_by_cell(sys, sides))) holds_cell[id] = 1;
    }
    all_met = std::find(met.begin(), met.end(), 0) == met.end();
    if (!all_met) continue;
    if (std::find(holds_cell.begin(), holds_cell.end(), 0) == holds_cell.end()) return b;
    if (!fallback) {
      fallback = b;
      fallback->certified = false;
    }
  }
  if (fallback) return *fallback;
  CoveringBox b{center, center, false};
  for (std::size_t j = 0; j < n0; ++j) {
    b.lo[j] -= ladder.back() * spread[j];
    b.hi[j] += ladder.back() * spread[j];
  }
  return b;
}

Outcome criterion1() {
  int tested = 0, agreed = 0;
  std::ostringstream bad;
  for (std::uint64_t seed = 0; tested < 50; ++seed) {
    RationalSampler s(1000 + seed);
    const std::size_t n0 = 1 + seed % 3;
    const std::size_t m = 1 + (seed / 3) % 8;
    Arrangement arr(n0);
    for (std::size_t i = 0; i < m; ++i) {
      Vector w(n0);
      for (auto& x : w) x = s.next_nonzero(6, 4);
      arr.add({w, s.next(6, 4)});
    }
    if (!is_general_position(arr)) continue;
    ++tested;
    const BigInt expected = regions_formula_general_position(m, n0).regions;
    const std::size_t got = enumerate_arrangement_regions(arr).size();
    if (BigInt(static_cast<unsigned long>(got)) == expected) {
      ++agreed;
    } else {
      bad << " seed " << seed << " (n0=" << n0 << ", m=" << m << "): " << got << " vs " << expected.get_str();
    }
  }
  return {agreed == tested, std::to_string(agreed) + "/" + std::to_string(tested) + " arrangements agree" + bad.str()};
}

Outcome criterion2() {
  std::ostringstream detail;
  bool ok = true;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Arrangement full = generic_arrangement(2, 7, 500 + seed);
    Arrangement arr(2);
    std::size_t previous = enumerate_arrangement_regions(arr).size();
    for (std::size_t m = 0; m < 7; ++m) {
      arr.add(full[m]);
      const std::size_t count = enumerate_arrangement_regions(arr).size();
      if (count != previous + m + 1) {
        ok = false;
        detail << " seed " << seed << " step " << m << "->" << m + 1 << ": +" << count - previous;
      }
      previous = count;
    }
  }
  return {ok, "5 growth sequences m=0..7, increments 1..7" + detail.str()};
}

Outcome folding_criterion(std::size_t k, std::size_t expected, std::uint64_t shallow_units, unsigned long shallow) {
  const ConstructionReport r = build_folding_net(2, k, construction_options());
  const BigInt s = shallow_max_regions(2, shallow_units);
  const bool ok = r.enumerated_merged == expected && s == shallow;
  return {ok, "folding k=" + std::to_string(k) + " merged " + std::to_string(r.enumerated_merged) + " (expect " +
                  std::to_string(expected) + "), shallow_max_regions(2," + std::to_string(shallow_units) +
                  ") = " + s.get_str()};
}

Outcome criterion5() {
  const ConstructionReport r = build_deep_theorem_net(2, {4, 4}, construction_options());
  const BigInt bound = deep_lower_bound(2, {4, 4});
  const bool ok = bound == 22 && BigInt(static_cast<unsigned long>(r.enumerated_merged)) >= bound;
  return {ok, "deep [4,4] merged " + std::to_string(r.enumerated_merged) + " >= " + bound.get_str()};
}

Outcome criterion6() {
  std::ostringstream bad;
  for (std::size_t n = 2; n <= 8; ++n) {
    const Arrangement arr = build_tangent_arrangement(n, 2);
    if (!is_general_position(arr)) bad << " n=" << n << " not in general position;";
    if (!has_all_consecutive_active_sets(enumerate_arrangement_regions(arr), n)) {
      bad << " n=" << n << " misses an interval;";
    }
  }
  return {bad.str().empty(), "n=2..8" + bad.str()};
}

RectifierNet seeded_net(std::uint64_t seed) {
  RationalSampler s(7000 + seed);
  const std::size_t depth = 1 + seed % 2;
  std::vector<Layer> hidden;
  std::size_t fan_in = 2;
  for (std::size_t l = 0; l < depth; ++l) {
    const std::size_t width = 2 + (seed / 2 + l) % 4;  // 2..5
    Matrix w(width, fan_in);
    for (std::size_t r = 0; r < width; ++r)
      for (std::size_t c = 0; c < fan_in; ++c) w(r, c) = s.next_nonzero(7, 3);
    hidden.push_back({w, s.vector(width, 5, 3)});
    fan_in = width;
  }
  return RectifierNet(2, std::move(hidden), {Matrix::identity(fan_in), Vector(fan_in)});
}

Outcome criterion7() {
  int first_draw = 0, within_redraws = 0;
  std::ostringstream detail;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const RectifierNet net = seeded_net(i);
    bool ok = false;
    for (std::uint64_t draw = 0; draw < 4 && !ok; ++draw) {
      ok = output_projection_preserves_regions(net, 9000 + i * 16 + draw, parallel());
      if (ok && draw == 0) ++first_draw;
      if (!ok) detail << " net " << i << " draw " << draw << " failed;";
    }
    within_redraws += ok;
  }
  return {first_draw >= 19 && within_redraws == 20,
          std::to_string(first_draw) + "/20 on first draw, " + std::to_string(within_redraws) +
              "/20 within 3 redraws" + detail.str()};
}

Outcome criterion8(const std::string& name, const RectifierNet& net) {
  const auto t0 = Clock::now();
  const RegionInventory inv = merge_linearity_regions(enumerate_activation_regions(net, parallel()));
  const auto [lo, hi, certified] = covering_box(inv, kOracleResolution);
  const std::size_t sampled = sample_affine_pieces(net, lo, hi, kOracleResolution);
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << name << ": sampled " << sampled << ", merged " << inv.merged_count << ", box [";
  for (std::size_t j = 0; j < lo.size(); ++j) d << (j ? "," : "") << to_decimal(lo[j], 3);
  d << "]:[";
  for (std::size_t j = 0; j < hi.size(); ++j) d << (j ? "," : "") << to_decimal(hi[j], 3);
  d << "]" << (certified ? "" : " (no certified box)") << ", " << to_decimal(ratio(static_cast<long>(t * 1000), 1000), 2) << "s";
  return {sampled == inv.merged_count && t < kBudget8, d.str()};
}

Outcome criterion9() {
  std::ostringstream bad;
  auto expect = [&](const char* what, const BigInt& got, unsigned long want) {
    if (got != want) bad << ' ' << what << " = " << got.get_str() << " (expected " << want << ");";
  };
  expect("folding_lower_bound(2,2)", folding_lower_bound(2, 2), 44);
  expect("folding_lower_bound(2,3)", folding_lower_bound(2, 3), 176);
  expect("shallow_max_regions(2,8)", shallow_max_regions(2, 8), 37);
  expect("shallow_max_regions(2,12)", shallow_max_regions(2, 12), 79);
  expect("min_shallow_width(2,44)", BigInt(static_cast<unsigned long>(min_shallow_width(2, 44))), 9);
  expect("param_count deep (2,4,2,1)", param_count({2, {4, 4}, 1}, ParamCountKind::Deep), 37);
  for (std::uint64_t n : {4, 6, 8}) {
    for (std::uint64_t k = 2; k < 6; ++k) {
      const Rational a = depth_advantage(2, n, k), b = depth_advantage(2, n, k + 1);
      if (!(b > a)) {
        bad << " growth fails at n=" << n << ": ratio(k=" << k << ") = " << to_string(a) << " >= ratio(k=" << k + 1
            << ") = " << to_string(b) << ";";
      }
    }
  }
  return {bad.str().empty(), bad.str().empty() ? "all values exact, growth strict for n=4,6,8" : bad.str()};
}

Outcome criterion10() {
  const ConstructionReport r = build_folding_net(2, 2, construction_options());
  const RegionInventory inv = merge_linearity_regions(enumerate_activation_regions(r.net, parallel()));
  const auto cells = heatmap_grid(r.net, inv, {-2, -2}, {2, 2}, kHeatmapResolution);
  // Re-read the CSV the CLI would write, keeping exact values.
  std::istringstream csv(write_heatmap_csv(cells, 6, true));
  std::string line;
  std::getline(csv, line);
  const bool header_ok = line == "x1,x2,f,region";
  std::vector<std::string> values;
  std::set<std::string> ids;
  while (std::getline(csv, line)) {
    std::vector<std::string> fields;
    std::stringstream row(line);
    for (std::string f; std::getline(row, f, ',');) fields.push_back(f);
    values.push_back(fields.at(2));
    ids.insert(fields.at(3));
  }
  // grid_points is row-major with the last coordinate fastest.
  const std::size_t n = kHeatmapResolution;
  std::size_t asymmetric = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::string& v = values[i * n + j];
      if (values[(n - 1 - i) * n + j] != v || values[i * n + (n - 1 - j)] != v) ++asymmetric;
    }
  }
  const bool ok = header_ok && values.size() == n * n && ids.size() == 44 && asymmetric == 0;
  return {ok, std::to_string(ids.size()) + " region ids on a " + std::to_string(n) + "x" + std::to_string(n) +
                  " grid over [-2,2]^2, " + std::to_string(asymmetric) + " asymmetric grid values"};
}

int failures = 0;

void report(const std::string& id, double budget, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double t = seconds_since(t0);
  const bool in_time = t < budget;
  const bool pass = o.pass && in_time;
  failures += !pass;
  std::printf("criterion %-3s %s  %s  [%.2fs, budget %.0fs%s]\n", id.c_str(), pass ? "PASS" : "FAIL",
              o.detail.c_str(), t, budget, in_time ? "" : ", OVER BUDGET");
  std::fflush(stdout);
}

}  // namespace

int main() {
  report("1", kBudget1, criterion1);
  report("2", kBudget2, criterion2);
  report("3", kBudget3, [] { return folding_criterion(2, 44, 8, 37); });
  report("4", kBudget4, [] { return folding_criterion(3, 176, 12, 79); });
  report("5", kBudget5, criterion5);
  report("6", kBudget6, criterion6);
  report("7", kBudget7, criterion7);
  report("8a", kBudget8, [] { return criterion8("folding k=2", build_folding_net(2, 2, construction_options()).net); });
  report("8b", kBudget8, [] { return criterion8("folding k=3", build_folding_net(2, 3, construction_options()).net); });
  report("8c", kBudget8,
         [] { return criterion8("deep [4,4]", build_deep_theorem_net(2, {4, 4}, construction_options()).net); });
  report("9", kBudget9, criterion9);
  report("10", kBudget10, criterion10);
  std::printf("%d criterion line(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
