// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#include "regionscope/formats.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "regionscope/errors.hpp"

namespace regionscope {
namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++number;
    std::istringstream in{std::string(text.substr(pos, end - pos))};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty() && line.tokens.front()[0] != '#') out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

class Cursor {
 public:
  Cursor(std::string_view text, std::string what) : lines_(tokenize(text)), what_(std::move(what)) {}

  bool done() const { return next_ >= lines_.size(); }
  std::size_t last_line() const { return lines_.empty() ? 1 : lines_.back().number; }

  const Line& take(const std::string& expecting) {
    if (done()) throw FormatError(what_ + ": unexpected end of input, expecting '" + expecting + "'", last_line());
    return lines_[next_++];
  }
  const Line& peek() const { return lines_[next_]; }

  // A line "key v1 ... vn" with exactly `arity` values (any count if arity < 0).
  const Line& expect(const std::string& key, int arity) {
    const Line& line = take(key);
    if (line.tokens[0] != key) {
      throw FormatError(what_ + ": expected '" + key + "', found '" + line.tokens[0] + "'", line.number);
    }
    if (arity >= 0 && line.tokens.size() != static_cast<std::size_t>(arity) + 1) {
      throw FormatError(what_ + ": '" + key + "' takes " + std::to_string(arity) + " field(s), found " +
                            std::to_string(line.tokens.size() - 1),
                        line.number);
    }
    return line;
  }

  void header(const std::string& magic) {
    const Line& line = expect(magic, 1);
    if (line.tokens[1] != "1") {
      throw FormatError(what_ + ": unsupported version '" + line.tokens[1] + "'", line.number);
    }
  }

 private:
  std::vector<Line> lines_;
  std::size_t next_ = 0;
  std::string what_;
};

std::uint64_t parse_natural(const std::string& tok, const Line& line, const std::string& field) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw FormatError("field '" + field + "': expected a natural number, found '" + tok + "'", line.number);
  }
  return v;
}

Rational parse_field(const std::string& tok, const Line& line, const std::string& field) {
  try {
    return parse_rational(tok);
  } catch (const FormatError& e) {
    throw FormatError("field '" + field + "': " + e.what(), line.number);
  }
}

Vector parse_values(const Line& line, std::size_t first, std::size_t count, const std::string& field) {
  if (line.tokens.size() < first + count) {
    throw FormatError("field '" + field + "': expected " + std::to_string(count) + " value(s), found " +
                          std::to_string(line.tokens.size() - std::min(first, line.tokens.size())),
                      line.number);
  }
  Vector out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(parse_field(line.tokens[first + i], line, field));
  return out;
}

void put_values(std::ostringstream& out, const Vector& v) {
  for (const auto& x : v) out << ' ' << to_string(x);
}

std::string join(const std::vector<std::uint64_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
  return out;
}

std::string layer_name(bool output, std::size_t index) {
  return output ? std::string("output layer") : "hidden layer " + std::to_string(index);
}

}  // namespace

Vector parse_rational_list(std::string_view text) {
  Vector out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    out.push_back(parse_rational(text.substr(pos, end - pos)));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

std::string write_net(const RectifierNet& net) {
  std::ostringstream out;
  out << "regionscope-net 1\ninput_dim " << net.input_dim() << '\n';
  auto put_layer = [&](const char* kind, const Layer& layer) {
    out << "layer " << kind << ' ' << layer.width() << ' ' << layer.fan_in() << '\n';
    for (std::size_t r = 0; r < layer.width(); ++r) {
      out << 'w';
      put_values(out, layer.weights.row_vector(r));
      out << '\n';
    }
    out << 'b';
    put_values(out, layer.bias);
    out << '\n';
  };
  for (const auto& layer : net.hidden_layers()) put_layer("hidden", layer);
  put_layer("output", net.output_layer());
  out << "end\n";
  return out.str();
}

RectifierNet read_net(std::string_view text) {
  Cursor in(text, "network");
  in.header("regionscope-net");
  const Line& dim_line = in.expect("input_dim", 1);
  const std::size_t input_dim = parse_natural(dim_line.tokens[1], dim_line, "input_dim");
  if (input_dim == 0) throw FormatError("field 'input_dim': must be positive", dim_line.number);
  std::vector<Layer> hidden;
  std::size_t previous = input_dim;
  while (true) {
    const Line& head = in.expect("layer", 3);
    const std::string& kind = head.tokens[1];
    if (kind != "hidden" && kind != "output") {
      throw FormatError("field 'layer': kind must be 'hidden' or 'output', found '" + kind + "'", head.number);
    }
    const bool is_output = kind == "output";
    const std::string name = layer_name(is_output, hidden.size() + 1);
    const std::size_t width = parse_natural(head.tokens[2], head, "width");
    const std::size_t fan_in = parse_natural(head.tokens[3], head, "fan_in");
    if (width == 0) throw FormatError(name + ": width must be positive", head.number);
    if (fan_in != previous) {
      throw FormatError(name + ": fan_in " + std::to_string(fan_in) + " does not match the previous width " +
                            std::to_string(previous),
                        head.number);
    }
    std::vector<Vector> rows;
    for (std::size_t r = 0; r < width; ++r) {
      const Line& w = in.expect("w", -1);
      if (w.tokens.size() != fan_in + 1) {
        throw FormatError(name + ": weight row " + std::to_string(r + 1) + " has " +
                              std::to_string(w.tokens.size() - 1) + " entries, expected " + std::to_string(fan_in),
                          w.number);
      }
      rows.push_back(parse_values(w, 1, fan_in, name + " weight row " + std::to_string(r + 1)));
    }
    const Line& b = in.expect("b", -1);
    if (b.tokens.size() != width + 1) {
      throw FormatError(name + ": bias has " + std::to_string(b.tokens.size() - 1) + " entries, expected " +
                            std::to_string(width),
                        b.number);
    }
    Layer layer{Matrix::from_rows(rows), parse_values(b, 1, width, name + " bias")};
    if (is_output) {
      in.expect("end", 0);
      if (!in.done()) throw FormatError("network: trailing content after 'end'", in.peek().number);
      if (hidden.empty()) throw FormatError("network: at least one hidden layer is required", head.number);
      return RectifierNet(input_dim, std::move(hidden), std::move(layer));
    }
    hidden.push_back(std::move(layer));
    previous = width;
  }
}

std::string write_arrangement(const Arrangement& arrangement) {
  std::ostringstream out;
  out << "regionscope-arrangement 1\nambient_dim " << arrangement.ambient_dim() << "\ncount "
      << arrangement.size() << '\n';
  for (const auto& h : arrangement.hyperplanes()) {
    out << 'h';
    put_values(out, h.normal);
    out << ' ' << to_string(h.offset) << '\n';
  }
  return out.str();
}

Arrangement read_arrangement(std::string_view text) {
  Cursor in(text, "arrangement");
  in.header("regionscope-arrangement");
  const Line& dim_line = in.expect("ambient_dim", 1);
  const std::size_t dim = parse_natural(dim_line.tokens[1], dim_line, "ambient_dim");
  if (dim == 0) throw FormatError("field 'ambient_dim': must be positive", dim_line.number);
  const Line& count_line = in.expect("count", 1);
  const std::size_t count = parse_natural(count_line.tokens[1], count_line, "count");
  Arrangement arr(dim);
  for (std::size_t i = 0; i < count; ++i) {
    const Line& h = in.expect("h", -1);
    if (h.tokens.size() != dim + 2) {
      throw FormatError("hyperplane " + std::to_string(i + 1) + ": expected " + std::to_string(dim) +
                            " normal entries and an offset, found " + std::to_string(h.tokens.size() - 1) +
                            " fields",
                        h.number);
    }
    const std::string field = "hyperplane " + std::to_string(i + 1);
    Vector normal = parse_values(h, 1, dim, field);
    Rational offset = parse_field(h.tokens[dim + 1], h, field);
    if (is_zero(normal)) throw FormatError(field + ": zero normal", h.number);
    arr.add({std::move(normal), std::move(offset)});
  }
  if (!in.done()) throw FormatError("arrangement: more hyperplanes than 'count'", in.peek().number);
  return arr;
}

std::string write_regions(const std::vector<ArrangementRegion>& regions) {
  std::ostringstream out;
  for (const auto& r : regions) {
    out << "region " << (r.signs.empty() ? std::string("()") : r.sign_string()) << " active ";
    if (r.active_set.empty()) {
      out << '-';
    } else {
      for (std::size_t i = 0; i < r.active_set.size(); ++i) out << (i ? "," : "") << r.active_set[i] + 1;
    }
    out << " witness";
    put_values(out, r.witness);
    out << '\n';
  }
  return out.str();
}

std::string write_inventory(const RegionInventory& inventory, std::size_t input_dim, std::size_t output_dim) {
  std::ostringstream out;
  out << "regionscope-inventory 1\ninput_dim " << input_dim << "\noutput_dim " << output_dim
      << "\nactivation_count " << inventory.activation_count << "\nmerged_count ";
  if (inventory.merged) {
    out << inventory.merged_count;
  } else {
    out << '-';
  }
  out << '\n';
  for (std::size_t i = 0; i < inventory.regions.size(); ++i) {
    const auto& r = inventory.regions[i];
    out << "region " << i << " pattern " << r.pattern.to_string() << " component ";
    if (inventory.merged) {
      out << inventory.component[i];
    } else {
      out << '-';
    }
    out << " witness";
    put_values(out, r.witness);
    out << " jacobian";
    for (std::size_t row = 0; row < r.map.linear.rows(); ++row) put_values(out, r.map.linear.row_vector(row));
    out << " offset";
    put_values(out, r.map.offset);
    out << '\n';
  }
  return out.str();
}

RegionInventory read_inventory(std::string_view text) {
  Cursor in(text, "inventory");
  in.header("regionscope-inventory");
  auto natural = [&](const std::string& key) {
    const Line& line = in.expect(key, 1);
    return parse_natural(line.tokens[1], line, key);
  };
  const std::size_t n_in = natural("input_dim");
  const std::size_t n_out = natural("output_dim");
  RegionInventory inv;
  inv.activation_count = natural("activation_count");
  const Line& merged_line = in.expect("merged_count", 1);
  inv.merged = merged_line.tokens[1] != "-";
  inv.merged_count = inv.merged ? parse_natural(merged_line.tokens[1], merged_line, "merged_count") : 0;
  const std::size_t fields = 9 + n_in + n_in * n_out + n_out;
  while (!in.done()) {
    const Line& line = in.expect("region", -1);
    const auto& t = line.tokens;
    if (t.size() != fields) {
      throw FormatError("region record has " + std::to_string(t.size()) + " fields, expected " +
                            std::to_string(fields),
                        line.number);
    }
    auto keyword = [&](std::size_t at, const char* key) {
      if (t[at] != key) {
        throw FormatError("region record: expected '" + std::string(key) + "' at field " + std::to_string(at + 1) +
                              ", found '" + t[at] + "'",
                          line.number);
      }
    };
    keyword(2, "pattern");
    keyword(4, "component");
    keyword(6, "witness");
    keyword(7 + n_in, "jacobian");
    keyword(8 + n_in + n_in * n_out, "offset");
    if (parse_natural(t[1], line, "region") != inv.regions.size()) {
      throw FormatError("region record: index " + t[1] + " out of sequence", line.number);
    }
    LinearRegion r;
    try {
      r.pattern = ActivationPattern::parse(t[3]);
    } catch (const FormatError& e) {
      throw FormatError(std::string("field 'pattern': ") + e.what(), line.number);
    }
    if (inv.merged) {
      inv.component.push_back(parse_natural(t[5], line, "component"));
    } else if (t[5] != "-") {
      throw FormatError("field 'component': must be '-' in an unmerged inventory", line.number);
    }
    r.witness = parse_values(line, 7, n_in, "witness");
    const Vector jac = parse_values(line, 8 + n_in, n_in * n_out, "jacobian");
    Matrix m(n_out, n_in);
    for (std::size_t row = 0; row < n_out; ++row)
      for (std::size_t col = 0; col < n_in; ++col) m(row, col) = jac[row * n_in + col];
    r.map = {std::move(m), parse_values(line, 9 + n_in + n_in * n_out, n_out, "offset")};
    r.region = ConstraintSystem(n_in);
    inv.regions.push_back(std::move(r));
  }
  if (inv.regions.size() != inv.activation_count) {
    throw FormatError("inventory: activation_count " + std::to_string(inv.activation_count) + " but " +
                          std::to_string(inv.regions.size()) + " region records",
                      in.last_line());
  }
  return inv;
}

ConstructionManifest ConstructionManifest::from_report(const ConstructionReport& report) {
  return {report.construction,     report.n0,       report.k,
          report.widths,           report.seed,     report.claimed_bound,
          report.activation_count, report.enumerated_merged, report.satisfied};
}

std::string write_manifest(const ConstructionManifest& m) {
  std::ostringstream out;
  out << "regionscope-manifest 1\n"
      << "construction " << m.construction << '\n'
      << "n0 " << m.n0 << '\n'
      << "k " << m.k << '\n'
      << "widths " << join(m.widths) << '\n'
      << "seed " << m.seed << '\n'
      << "claimed_bound " << m.claimed_bound.get_str() << '\n'
      << "activation_count " << m.activation_count << '\n'
      << "enumerated_merged " << m.enumerated_merged << '\n'
      << "satisfied " << (m.satisfied ? "true" : "false") << '\n';
  return out.str();
}

ConstructionManifest read_manifest(std::string_view text) {
  Cursor in(text, "manifest");
  in.header("regionscope-manifest");
  ConstructionManifest m;
  m.construction = in.expect("construction", 1).tokens[1];
  auto natural = [&](const std::string& key) {
    const Line& line = in.expect(key, 1);
    return parse_natural(line.tokens[1], line, key);
  };
  m.n0 = natural("n0");
  m.k = natural("k");
  const Line& widths = in.expect("widths", 1);
  for (std::size_t pos = 0; pos <= widths.tokens[1].size();) {
    const std::size_t end = std::min(widths.tokens[1].find(',', pos), widths.tokens[1].size());
    m.widths.push_back(parse_natural(widths.tokens[1].substr(pos, end - pos), widths, "widths"));
    pos = end + 1;
  }
  m.seed = natural("seed");
  const Line& bound = in.expect("claimed_bound", 1);
  if (m.claimed_bound.set_str(bound.tokens[1], 10) != 0 || sgn(m.claimed_bound) < 0) {
    throw FormatError("field 'claimed_bound': expected a natural number", bound.number);
  }
  m.activation_count = natural("activation_count");
  m.enumerated_merged = natural("enumerated_merged");
  const Line& sat = in.expect("satisfied", 1);
  if (sat.tokens[1] != "true" && sat.tokens[1] != "false") {
    throw FormatError("field 'satisfied': expected true or false", sat.number);
  }
  m.satisfied = sat.tokens[1] == "true";
  if (!in.done()) throw FormatError("manifest: unexpected trailing content", in.peek().number);
  return m;
}

std::vector<HeatmapCell> heatmap_grid(const RectifierNet& net, const RegionInventory& inventory,
                                      const Vector& lo, const Vector& hi, std::size_t resolution) {
  if (!inventory.merged) throw PreconditionError("heatmap_grid: inventory is not merged");
  std::map<std::string, std::size_t> component;
  for (std::size_t i = 0; i < inventory.regions.size(); ++i) {
    component.emplace(inventory.regions[i].pattern.to_string(), inventory.component[i]);
  }
  std::vector<HeatmapCell> cells;
  for (auto& x : grid_points(lo, hi, resolution)) {
    const std::string key = perturbed_pattern(net, x).to_string();
    const auto it = component.find(key);
    if (it == component.end()) throw Error("heatmap_grid: pattern " + key + " is not in the inventory");
    Rational value = evaluate(net, x).front();
    cells.push_back({std::move(x), std::move(value), it->second});
  }
  return cells;
}

std::string write_heatmap_csv(const std::vector<HeatmapCell>& cells, int digits, bool exact) {
  std::ostringstream out;
  const std::size_t dim = cells.empty() ? 2 : cells.front().x.size();
  for (std::size_t j = 0; j < dim; ++j) out << 'x' << j + 1 << ',';
  out << "f,region\n";
  auto render = [&](const Rational& v) { return exact ? to_string(v) : to_decimal(v, digits); };
  for (const auto& c : cells) {
    for (const auto& x : c.x) out << render(x) << ',';
    out << render(c.value) << ',' << c.region << '\n';
  }
  return out.str();
}

std::string write_bounds_csv(const std::vector<RatioRow>& rows) {
  std::ostringstream out;
  out << "n0,n,k,deep_bound,shallow_max,deep_params,shallow_params_stated,shallow_params_literal,"
         "deep_ratio,shallow_ratio_stated,shallow_ratio_literal,dominant\n";
  for (const auto& r : rows) {
    out << r.n0 << ',' << r.n << ',' << r.k << ',' << r.deep_bound.get_str() << ',' << r.shallow_max.get_str()
        << ',' << r.deep_params.get_str() << ',' << r.shallow_params_stated.get_str() << ','
        << r.shallow_params_literal.get_str() << ',' << to_string(r.deep_ratio) << ','
        << to_string(r.shallow_ratio_stated) << ',' << to_string(r.shallow_ratio_literal) << ',' << r.dominant
        << '\n';
  }
  return out.str();
}

}  // namespace regionscope
