// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#include "regionscope/network.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "regionscope/errors.hpp"
#include "regionscope/parallel.hpp"
#include "regionscope/random.hpp"

namespace regionscope {

RectifierNet::RectifierNet(std::size_t input_dim, std::vector<Layer> hidden, Layer output)
    : input_dim_(input_dim), hidden_(std::move(hidden)), output_(std::move(output)) {
  if (input_dim_ == 0) throw DimensionError("network: input dimension must be positive");
  if (hidden_.empty()) throw DimensionError("network: at least one hidden layer is required");
  std::size_t prev = input_dim_;
  auto check = [&prev](const Layer& layer, const std::string& name) {
    if (layer.fan_in() != prev) {
      throw DimensionError(name + ": weights expect " + std::to_string(layer.fan_in()) +
                           " inputs but the previous layer provides " + std::to_string(prev));
    }
    if (layer.bias.size() != layer.width()) {
      throw DimensionError(name + ": bias has " + std::to_string(layer.bias.size()) +
                           " entries for " + std::to_string(layer.width()) + " units");
    }
    if (layer.width() == 0) throw DimensionError(name + ": layer has no units");
    prev = layer.width();
  };
  for (std::size_t l = 0; l < hidden_.size(); ++l) {
    check(hidden_[l], "hidden layer " + std::to_string(l + 1));
  }
  check(output_, "output layer");
}

std::vector<std::size_t> RectifierNet::widths() const {
  std::vector<std::size_t> w;
  for (const auto& l : hidden_) w.push_back(l.width());
  return w;
}

RectifierNet RectifierNet::with_output(Layer output) const {
  return RectifierNet(input_dim_, hidden_, std::move(output));
}

std::string ActivationPattern::to_string() const {
  std::string s;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    if (l > 0) s.push_back('|');
    for (bool b : layers[l]) s.push_back(b ? '1' : '0');
  }
  return s;
}

ActivationPattern ActivationPattern::parse(const std::string& text) {
  ActivationPattern p;
  p.layers.emplace_back();
  for (char c : text) {
    if (c == '|') {
      p.layers.emplace_back();
    } else if (c == '0' || c == '1') {
      p.layers.back().push_back(c == '1');
    } else {
      throw FormatError("malformed activation pattern '" + text + "'");
    }
  }
  return p;
}

namespace {

void require_input(const RectifierNet& net, const Vector& x, const char* op) {
  if (x.size() != net.input_dim()) {
    throw DimensionError(std::string(op) + ": input of length " + std::to_string(x.size()) +
                         " for a network with " + std::to_string(net.input_dim()) + " inputs");
  }
}

Vector preactivation(const Layer& layer, const Vector& h) { return layer.weights * h + layer.bias; }

// Rows with bit = 0 replaced by zero.
AffineMap gate(const AffineMap& pre, const std::vector<bool>& bits) {
  AffineMap out = pre;
  for (std::size_t r = 0; r < bits.size(); ++r) {
    if (bits[r]) continue;
    for (std::size_t c = 0; c < out.linear.cols(); ++c) out.linear(r, c) = 0;
    out.offset[r] = 0;
  }
  return out;
}

AffineMap layer_map(const Layer& layer) { return {layer.weights, layer.bias}; }

std::string map_key(const AffineMap& m) {
  std::string key;
  for (std::size_t r = 0; r < m.linear.rows(); ++r) {
    for (std::size_t c = 0; c < m.linear.cols(); ++c) {
      key += m.linear(r, c).get_str();
      key.push_back(',');
    }
    key += m.offset[r].get_str();
    key.push_back(';');
  }
  return key;
}

}  // namespace

Vector evaluate(const RectifierNet& net, const Vector& x) {
  require_input(net, x, "evaluate");
  Vector h = x;
  for (const auto& layer : net.hidden_layers()) {
    h = preactivation(layer, h);
    for (auto& v : h) {
      if (sgn(v) < 0) v = 0;
    }
  }
  return preactivation(net.output_layer(), h);
}

ActivationPattern activation_pattern(const RectifierNet& net, const Vector& x) {
  require_input(net, x, "activation_pattern");
  ActivationPattern p;
  Vector h = x;
  for (const auto& layer : net.hidden_layers()) {
    h = preactivation(layer, h);
    std::vector<bool> bits(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
      bits[i] = sgn(h[i]) > 0;
      if (!bits[i]) h[i] = 0;
    }
    p.layers.push_back(std::move(bits));
  }
  return p;
}

ActivationPattern perturbed_pattern(const RectifierNet& net, const Vector& x) {
  require_input(net, x, "perturbed_pattern");
  {
    // Fast path: no preactivation vanishes.
    ActivationPattern p;
    Vector h = x;
    bool degenerate = false;
    for (const auto& layer : net.hidden_layers()) {
      h = preactivation(layer, h);
      std::vector<bool> bits(h.size());
      for (std::size_t i = 0; i < h.size(); ++i) {
        const int s = sgn(h[i]);
        degenerate = degenerate || s == 0;
        bits[i] = s > 0;
        if (!bits[i]) h[i] = 0;
      }
      p.layers.push_back(std::move(bits));
      if (degenerate) break;
    }
    if (!degenerate) return p;
  }
  ActivationPattern p;
  AffineMap local = AffineMap::identity(net.input_dim());
  local.offset = x;  // value and Jacobian of the current activations at x
  for (const auto& layer : net.hidden_layers()) {
    AffineMap pre = affine_compose(layer_map(layer), local);
    std::vector<bool> bits(pre.output_dim());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      int s = sgn(pre.offset[i]);
      for (std::size_t k = 0; s == 0 && k < pre.linear.cols(); ++k) s = sgn(pre.linear(i, k));
      bits[i] = s > 0;
    }
    local = gate(pre, bits);
    p.layers.push_back(std::move(bits));
  }
  return p;
}

AffineMap pattern_map(const RectifierNet& net, const ActivationPattern& pattern) {
  if (pattern.layers.size() != net.depth()) {
    throw DimensionError("pattern has " + std::to_string(pattern.layers.size()) +
                         " layers, network has " + std::to_string(net.depth()));
  }
  AffineMap a = AffineMap::identity(net.input_dim());
  for (std::size_t l = 0; l < net.depth(); ++l) {
    const Layer& layer = net.hidden_layers()[l];
    if (pattern.layers[l].size() != layer.width()) {
      throw DimensionError("pattern layer " + std::to_string(l + 1) + " has " +
                           std::to_string(pattern.layers[l].size()) + " bits for " +
                           std::to_string(layer.width()) + " units");
    }
    a = gate(affine_compose(layer_map(layer), a), pattern.layers[l]);
  }
  return affine_compose(layer_map(net.output_layer()), a);
}

Layer absorb_affine(const AffineMap& pre, const Layer& layer) {
  if (layer.fan_in() != pre.output_dim()) {
    throw DimensionError("absorb_affine: layer expects " + std::to_string(layer.fan_in()) +
                         " inputs but the affine map produces " + std::to_string(pre.output_dim()));
  }
  return {layer.weights * pre.linear, layer.weights * pre.offset + layer.bias};
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

struct SearchNode {
  std::size_t layer = 0;
  std::size_t unit = 0;
  ConstraintSystem system;
  Vector witness;
  AffineMap pre;  // input -> preactivations of `layer`
  std::vector<std::vector<bool>> bits;
};

class ActivationSearch {
 public:
  ActivationSearch(const RectifierNet& net, const FeasibilityOptions& feas) : net_(net), feas_(feas) {}

  SearchNode root() const {
    SearchNode n;
    n.system = ConstraintSystem(net_.input_dim());
    n.witness = Vector(net_.input_dim());
    n.pre = layer_map(net_.hidden_layers()[0]);
    n.bits.emplace_back();
    return n;
  }

  // Explores below `node`. With a positive `split_after`, nodes reached after
  // that many unit decisions are pushed to `frontier` instead.
  void explore(SearchNode& node, std::vector<LinearRegion>& out, std::size_t split_after = 0,
               std::vector<SearchNode>* frontier = nullptr, std::size_t decided = 0) const {
    if (frontier != nullptr && decided == split_after) {
      frontier->push_back(node);
      return;
    }
    const Layer& layer = net_.hidden_layers()[node.layer];
    if (node.unit == layer.width()) {
      finish_layer(node, out, split_after, frontier, decided);
      return;
    }
    const std::size_t i = node.unit;
    const auto row = node.pre.linear.row(i);
    const Rational& off = node.pre.offset[i];
    if (is_zero(row)) {
      // Constant preactivation: no constraint, I(0) = 0.
      node.bits.back().push_back(sgn(off) > 0);
      ++node.unit;
      explore(node, out, split_after, frontier, decided + 1);
      --node.unit;
      node.bits.back().pop_back();
      return;
    }
    const int s = sgn(dot(row, node.witness) + off);
    for (bool active : {true, false}) {
      Constraint c{Vector(row.begin(), row.end()), off, Relation::Greater};
      if (!active) c = c.negated();
      node.system.add(std::move(c));
      node.bits.back().push_back(active);
      ++node.unit;
      if ((active && s > 0) || (!active && s < 0)) {
        explore(node, out, split_after, frontier, decided + 1);
      } else if (auto w = strict_feasible(node.system, feas_)) {
        Vector saved = std::exchange(node.witness, std::move(*w));
        explore(node, out, split_after, frontier, decided + 1);
        node.witness = std::move(saved);
      }
      --node.unit;
      node.bits.back().pop_back();
      node.system.pop();
    }
  }

 private:
  void finish_layer(SearchNode& node, std::vector<LinearRegion>& out, std::size_t split_after,
                    std::vector<SearchNode>* frontier, std::size_t decided) const {
    const AffineMap gated = gate(node.pre, node.bits.back());
    if (node.layer + 1 == net_.depth()) {
      LinearRegion r;
      r.pattern.layers = node.bits;
      r.region = node.system;
      r.witness = node.witness;
      r.hidden_map = gated;
      r.map = affine_compose(layer_map(net_.output_layer()), gated);
      out.push_back(std::move(r));
      return;
    }
    SearchNode next;
    next.layer = node.layer + 1;
    next.unit = 0;
    next.system = node.system;
    next.witness = node.witness;
    next.pre = affine_compose(layer_map(net_.hidden_layers()[next.layer]), gated);
    next.bits = node.bits;
    next.bits.emplace_back();
    explore(next, out, split_after, frontier, decided);
  }

  const RectifierNet& net_;
  FeasibilityOptions feas_;
};

}  // namespace

RegionInventory enumerate_activation_regions(const RectifierNet& net,
                                             const EnumerationOptions& options) {
  if (net.input_dim() > options.max_input_dim) {
    throw GuardError("enumeration refused: input dimension " + std::to_string(net.input_dim()) +
                     " exceeds the configured limit " + std::to_string(options.max_input_dim));
  }
  ActivationSearch search(net, options.feasibility);
  std::vector<LinearRegion> regions;
  SearchNode root = search.root();
  if (options.jobs <= 1) {
    search.explore(root, regions);
  } else {
    std::vector<SearchNode> frontier;
    const std::size_t split = std::min<std::size_t>(net.hidden_layers()[0].width(), 6);
    search.explore(root, regions, split, &frontier);
    std::vector<std::vector<LinearRegion>> parts(frontier.size());
    parallel_for(frontier.size(), options.jobs,
                 [&](std::size_t i) { search.explore(frontier[i], parts[i]); });
    for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(regions));
  }
  std::sort(regions.begin(), regions.end(), [](const LinearRegion& a, const LinearRegion& b) {
    return a.pattern.to_string() < b.pattern.to_string();
  });
  RegionInventory inv;
  inv.activation_count = regions.size();
  inv.merged_count = regions.size();
  inv.regions = std::move(regions);
  return inv;
}

// ---------------------------------------------------------------------------
// Merging

namespace {

// c2 = mu * c1 for some mu with the given sign (normal and offset together).
bool proportional(const Constraint& c1, const Constraint& c2, int mu_sign) {
  std::size_t k = 0;
  while (k < c1.normal.size() && sgn(c1.normal[k]) == 0) ++k;
  if (k == c1.normal.size()) return false;
  if (sgn(c2.normal[k]) == 0) return false;
  const Rational mu = c2.normal[k] / c1.normal[k];
  if (sgn(mu) != mu_sign) return false;
  for (std::size_t j = 0; j < c1.normal.size(); ++j) {
    if (c2.normal[j] != mu * c1.normal[j]) return false;
  }
  return c2.offset == mu * c1.offset;
}

bool same_hyperplane(const Constraint& c1, const Constraint& c2) {
  return proportional(c1, c2, 1) || proportional(c1, c2, -1);
}

// Restriction of `c` to the hyperplane h = 0 by eliminating variable `pivot`.
Constraint restrict_to(const Constraint& c, const Constraint& h, std::size_t pivot) {
  // x_p = -(h.offset + Σ_{k≠p} h_k x_k) / h_p
  const Rational factor = c.normal[pivot] / h.normal[pivot];
  Constraint out;
  out.relation = c.relation;
  out.offset = c.offset - factor * h.offset;
  for (std::size_t k = 0; k < c.normal.size(); ++k) {
    if (k == pivot) continue;
    out.normal.push_back(c.normal[k] - factor * h.normal[k]);
  }
  return out;
}

}  // namespace

bool share_facet(const LinearRegion& a, const LinearRegion& b, const FeasibilityOptions& options) {
  const std::size_t n = a.region.ambient_dim();
  for (const auto& ca : a.region.constraints()) {
    if (is_zero(ca.normal)) continue;
    bool opposite = false;
    for (const auto& cb : b.region.constraints()) {
      if (proportional(ca, cb, -1)) {
        opposite = true;
        break;
      }
    }
    if (!opposite) continue;
    std::size_t pivot = 0;
    while (sgn(ca.normal[pivot]) == 0) ++pivot;
    ConstraintSystem on_facet(n - 1);
    for (const auto* side : {&a.region, &b.region}) {
      for (const auto& c : side->constraints()) {
        if (same_hyperplane(ca, c)) continue;
        on_facet.add(restrict_to(c, ca, pivot));
      }
    }
    if (strict_feasible(on_facet, options)) return true;
  }
  return false;
}

RegionInventory merge_linearity_regions(RegionInventory inventory, const FeasibilityOptions& options) {
  const std::size_t n = inventory.regions.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<std::string, std::vector<std::size_t>> by_map;
  for (std::size_t i = 0; i < n; ++i) by_map[map_key(inventory.regions[i].map)].push_back(i);
  for (const auto& [key, members] : by_map) {
    for (std::size_t x = 0; x < members.size(); ++x) {
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        const std::size_t i = members[x];
        const std::size_t j = members[y];
        if (find(i) == find(j)) continue;
        if (share_facet(inventory.regions[i], inventory.regions[j], options)) {
          parent[std::max(find(i), find(j))] = std::min(find(i), find(j));
        }
      }
    }
  }
  // Components numbered in order of their first region.
  std::vector<std::size_t> id_of_root(n, n);
  inventory.component.assign(n, 0);
  std::size_t next_id = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (id_of_root[r] == n) id_of_root[r] = next_id++;
    inventory.component[i] = id_of_root[r];
  }
  inventory.merged_count = next_id;
  inventory.activation_count = n;
  inventory.merged = true;
  return inventory;
}

std::vector<Vector> grid_points(const Vector& lo, const Vector& hi, std::size_t resolution) {
  if (lo.size() != hi.size()) {
    throw DimensionError("grid: lo has " + std::to_string(lo.size()) + " coordinates, hi has " +
                         std::to_string(hi.size()));
  }
  if (resolution < 2) throw PreconditionError("grid: resolution must be at least 2");
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (!(lo[k] < hi[k])) throw PreconditionError("grid: lo must be below hi in every coordinate");
  }
  const std::size_t d = lo.size();
  std::vector<Vector> axes(d);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < resolution; ++i) {
      axes[k].push_back(lo[k] + (hi[k] - lo[k]) * ratio(i, resolution - 1));
    }
  }
  std::vector<Vector> points;
  std::vector<std::size_t> idx(d, 0);
  for (;;) {
    Vector p(d);
    for (std::size_t k = 0; k < d; ++k) p[k] = axes[k][idx[k]];
    points.push_back(std::move(p));
    std::size_t k = d;
    while (k > 0) {
      --k;
      if (++idx[k] < resolution) break;
      idx[k] = 0;
      if (k == 0) return points;
    }
    if (d == 0) return points;
  }
}

std::size_t sample_affine_pieces(const RectifierNet& net, const Vector& lo, const Vector& hi,
                                 std::size_t resolution) {
  std::unordered_map<std::string, std::string> map_of_pattern;
  std::set<std::string> pieces;
  for (const auto& x : grid_points(lo, hi, resolution)) {
    const ActivationPattern p = perturbed_pattern(net, x);
    const std::string pkey = p.to_string();
    auto it = map_of_pattern.find(pkey);
    if (it == map_of_pattern.end()) {
      it = map_of_pattern.emplace(pkey, map_key(pattern_map(net, p))).first;
      pieces.insert(it->second);
    }
  }
  return pieces.size();
}

std::size_t merged_count_with_output_row(const RectifierNet& net, const Vector& row,
                                         const EnumerationOptions& options) {
  const std::size_t width = net.hidden_layers().back().width();
  if (row.size() != width) {
    throw DimensionError("output row of length " + std::to_string(row.size()) +
                         " for a last hidden layer of width " + std::to_string(width));
  }
  const RectifierNet projected = net.with_output({Matrix::from_rows({row}), Vector(1)});
  return merge_linearity_regions(enumerate_activation_regions(projected, options),
                                 options.feasibility)
      .merged_count;
}

bool output_projection_preserves_regions(const RectifierNet& net, std::uint64_t seed,
                                         const EnumerationOptions& options) {
  const std::size_t width = net.hidden_layers().back().width();
  const RectifierNet full = net.with_output({Matrix::identity(width), Vector(width)});
  const std::size_t full_count =
      merge_linearity_regions(enumerate_activation_regions(full, options), options.feasibility)
          .merged_count;
  RationalSampler sampler(seed);
  Vector row(width);
  for (auto& x : row) x = sampler.next_nonzero(1000, 97);
  return merged_count_with_output_row(net, row, options) == full_count;
}

}  // namespace regionscope
