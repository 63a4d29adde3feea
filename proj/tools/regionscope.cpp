// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Uses only the C interface.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "regionscope/regionscope.h"

namespace {

constexpr int kOk = 0;
constexpr int kClaimFails = 1;
constexpr int kUsage = 2;
constexpr int kFormat = 3;

// Carries an exit status up to main.
struct Exit {
  int code;
};

struct Freer {
  void operator()(char* s) const { rgs_string_free(s); }
  void operator()(rgs_net* p) const { rgs_net_free(p); }
  void operator()(rgs_inventory* p) const { rgs_inventory_free(p); }
  void operator()(rgs_report* p) const { rgs_report_free(p); }
  void operator()(rgs_arrangement* p) const { rgs_arrangement_free(p); }
};
template <typename T>
using Owned = std::unique_ptr<T, Freer>;

void check(rgs_status status, const std::string& context) {
  if (status == RGS_OK) return;
  std::cerr << "regionscope: " << context << ": " << rgs_last_error() << '\n';
  throw Exit{status == RGS_ERR_FORMAT ? kFormat : kUsage};
}

std::string take(char* s) {
  Owned<char> owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "regionscope: cannot open '" << path << "'\n";
    throw Exit{kUsage};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    std::cerr << "regionscope: cannot write '" << path << "'\n";
    throw Exit{kUsage};
  }
}

Owned<rgs_net> load_net(const std::string& path) {
  const std::string text = read_file(path);
  rgs_net* net = nullptr;
  check(rgs_net_from_text(text.c_str(), &net), path);
  return Owned<rgs_net>(net);
}

Owned<rgs_arrangement> load_arrangement(const std::string& path) {
  const std::string text = read_file(path);
  rgs_arrangement* arr = nullptr;
  check(rgs_arrangement_from_text(text.c_str(), &arr), path);
  return Owned<rgs_arrangement>(arr);
}

std::vector<std::uint64_t> parse_list(const std::string& text, const char* flag) {
  std::vector<std::uint64_t> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      std::cerr << "regionscope: " << flag << ": '" << item << "' is not a natural number\n";
      throw Exit{kUsage};
    }
  }
  if (out.empty()) {
    std::cerr << "regionscope: " << flag << ": empty list\n";
    throw Exit{kUsage};
  }
  return out;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("REGIONSCOPE_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(env, &used);
    if (used == std::string(env).size()) return v;
  } catch (const std::exception&) {
  }
  std::cerr << "regionscope: REGIONSCOPE_SEED='" << env << "' is not a natural number\n";
  throw Exit{kUsage};
}

struct GlobalOptions {
  std::size_t jobs = 1;
  std::size_t max_dim = 0;
  rgs_enum_options enumeration() const { return {jobs, max_dim}; }
};

// Runs a call that returns a library-allocated string.
template <typename Call>
std::string text_of(Call&& call, const std::string& what) {
  char* s = nullptr;
  check(call(&s), what);
  return take(s);
}

// ---- bounds

struct BoundsArgs {
  std::uint64_t n0 = 2, n = 4, k = 2, n_out = 1;
  bool table = false;
  std::string n_range, k_range, out;
};

int run_bounds(const BoundsArgs& a) {
  if (a.table) {
    const auto ns = a.n_range.empty() ? std::vector<std::uint64_t>{a.n} : parse_list(a.n_range, "--n-range");
    std::vector<std::uint64_t> ks;
    if (a.k_range.empty()) {
      for (std::uint64_t k = 1; k <= a.k; ++k) ks.push_back(k);
    } else {
      ks = parse_list(a.k_range, "--k-range");
    }
    write_output(a.out, text_of([&](char** s) {
      return rgs_bounds_table_csv(a.n0, ns.data(), ns.size(), ks.data(), ks.size(), s);
    }, "bounds table"));
    return kOk;
  }
  const std::vector<std::uint64_t> widths(a.k, a.n);
  const std::string shallow =
      text_of([&](char** s) { return rgs_shallow_max_regions(a.n0, a.k * a.n, s); }, "shallow bound");
  const std::string deep =
      text_of([&](char** s) { return rgs_deep_lower_bound(a.n0, widths.data(), widths.size(), s); }, "deep bound");
  const std::string folding = text_of([&](char** s) { return rgs_folding_lower_bound(a.n0, a.k, s); }, "folding bound");
  const std::string folding_shallow =
      text_of([&](char** s) { return rgs_shallow_max_regions(a.n0, 2 * a.n0 * a.k, s); }, "shallow bound");
  auto params = [&](rgs_param_kind kind) {
    return text_of([&](char** s) { return rgs_param_count(a.n0, widths.data(), widths.size(), a.n_out, kind, s); },
                   "parameter count");
  };
  const std::string deep_params = params(RGS_PARAMS_DEEP);
  const std::string stated = params(RGS_PARAMS_SHALLOW_STATED);
  const std::string literal = params(RGS_PARAMS_SHALLOW_LITERAL);
  std::uint64_t width_for_deep = 0, width_for_folding = 0;
  check(rgs_min_shallow_width(a.n0, deep.c_str(), &width_for_deep), "min shallow width");
  check(rgs_min_shallow_width(a.n0, folding.c_str(), &width_for_folding), "min shallow width");
  std::ostringstream out;
  out << "n0 " << a.n0 << " n " << a.n << " k " << a.k << " n_out " << a.n_out << '\n'
      << "shallow_max_regions(units=" << a.k * a.n << ") " << shallow << '\n'
      << "deep_lower_bound(widths=" << a.n << "x" << a.k << ") " << deep << '\n'
      << "shallow_max_regions(units=" << 2 * a.n0 * a.k << ") " << folding_shallow << '\n'
      << "folding_lower_bound(widths=" << 2 * a.n0 << "x" << a.k << ") " << folding << '\n'
      << "deep_params " << deep_params << '\n'
      << "shallow_params_stated " << stated << '\n'
      << "shallow_params_literal " << literal << '\n'
      << "min_shallow_width(deep_lower_bound) " << width_for_deep << '\n'
      << "min_shallow_width(folding_lower_bound) " << width_for_folding << '\n';
  write_output(a.out, out.str());
  return kOk;
}

// ---- build

struct BuildArgs {
  std::string construction;
  std::uint64_t n0 = 2, k = 2, m = 0;
  std::string widths;
  std::optional<std::uint64_t> seed;
  std::string out, manifest;
};

int run_build(const BuildArgs& a, const GlobalOptions& g) {
  const std::uint64_t seed = a.seed ? *a.seed : default_seed();
  const rgs_enum_options opts = g.enumeration();
  rgs_report* raw = nullptr;
  if (a.construction == "folding") {
    check(rgs_build_folding(a.n0, a.k, seed, &opts, &raw), "build folding");
  } else if (a.construction == "deep") {
    if (a.widths.empty()) {
      std::cerr << "regionscope: build --construction deep needs --widths\n";
      return kUsage;
    }
    const auto w64 = parse_list(a.widths, "--widths");
    const std::vector<std::size_t> w(w64.begin(), w64.end());
    check(rgs_build_deep(a.n0, w.data(), w.size(), seed, &opts, &raw), "build deep");
  } else {
    std::uint64_t m = a.m;
    if (m == 0 && !a.widths.empty()) {
      const auto w = parse_list(a.widths, "--widths");
      if (w.size() != 1) {
        std::cerr << "regionscope: shallow construction takes a single width\n";
        return kUsage;
      }
      m = w.front();
    }
    if (m == 0) {
      std::cerr << "regionscope: build --construction shallow needs --m or --widths\n";
      return kUsage;
    }
    check(rgs_build_shallow(a.n0, m, seed, &opts, &raw), "build shallow");
  }
  Owned<rgs_report> report(raw);
  rgs_net* net_raw = nullptr;
  check(rgs_report_net(report.get(), &net_raw), "build");
  Owned<rgs_net> net(net_raw);
  char* s = nullptr;
  check(rgs_net_to_text(net.get(), &s), "build");
  write_output(a.out, take(s));
  check(rgs_report_manifest(report.get(), &s), "build");
  const std::string manifest = take(s);
  const std::string manifest_path = !a.manifest.empty() ? a.manifest : (a.out.empty() || a.out == "-" ? "" : a.out + ".manifest");
  if (!manifest_path.empty()) write_output(manifest_path, manifest);
  char* claimed = nullptr;
  std::size_t merged = 0;
  int satisfied = 0;
  check(rgs_report_summary(report.get(), &claimed, &merged, &satisfied), "build");
  std::ostream& log = (a.out.empty() || a.out == "-") ? std::cerr : std::cout;
  log << a.construction << " claimed_bound " << take(claimed) << " enumerated_merged " << merged << " satisfied "
      << (satisfied ? "true" : "false") << '\n';
  return satisfied ? kOk : kClaimFails;
}

// ---- enumerate / verify / heatmap

Owned<rgs_inventory> enumerate(const rgs_net* net, const GlobalOptions& g, bool merge) {
  const rgs_enum_options opts = g.enumeration();
  rgs_inventory* inv = nullptr;
  check(rgs_enumerate(net, &opts, merge ? 1 : 0, &inv), "enumerate");
  return Owned<rgs_inventory>(inv);
}

int run_enumerate(const std::string& net_path, bool merged, const std::string& out, const GlobalOptions& g) {
  auto net = load_net(net_path);
  auto inv = enumerate(net.get(), g, merged);
  std::size_t activation = 0, merged_count = 0;
  check(rgs_inventory_counts(inv.get(), &activation, &merged_count), "enumerate");
  if (!out.empty()) {
    char* s = nullptr;
    check(rgs_inventory_to_text(inv.get(), &s), "enumerate");
    write_output(out, take(s));
  }
  std::ostream& log = out == "-" ? std::cerr : std::cout;
  log << "activation_count " << activation << '\n';
  if (merged) log << "merged_count " << merged_count << '\n';
  return kOk;
}

int run_verify(const std::string& net_path, std::uint64_t claim, const GlobalOptions& g) {
  auto net = load_net(net_path);
  auto inv = enumerate(net.get(), g, true);
  std::size_t activation = 0, merged = 0;
  check(rgs_inventory_counts(inv.get(), &activation, &merged), "verify");
  const bool holds = merged >= claim;
  std::cout << "claim " << claim << " merged_count " << merged << " activation_count " << activation << ' '
            << (holds ? "holds" : "fails") << '\n';
  return holds ? kOk : kClaimFails;
}

struct HeatmapArgs {
  std::string net, box, out;
  std::size_t res = 201;
  int digits = 6;
  bool exact = false;
};

int run_heatmap(const HeatmapArgs& a, const GlobalOptions& g) {
  const auto colon = a.box.find(':');
  if (colon == std::string::npos) {
    std::cerr << "regionscope: --box must look like lo1,lo2:hi1,hi2\n";
    return kUsage;
  }
  const std::string lo = a.box.substr(0, colon), hi = a.box.substr(colon + 1);
  auto net = load_net(a.net);
  auto inv = enumerate(net.get(), g, true);
  char* csv = nullptr;
  check(rgs_heatmap_csv(net.get(), inv.get(), lo.c_str(), hi.c_str(), a.res, a.digits, a.exact ? 1 : 0, &csv),
        "heatmap");
  write_output(a.out, take(csv));
  return kOk;
}

// ---- arrangement

struct ArrangementArgs {
  std::string in, out, radius = "1", center;
  std::size_t n = 4, n0 = 2;
};

int run_arr_enumerate(const ArrangementArgs& a, const GlobalOptions& g) {
  auto arr = load_arrangement(a.in);
  std::size_t count = 0;
  char* text = nullptr;
  check(rgs_arrangement_regions(arr.get(), g.jobs, &count, &text), "arrangement enumerate");
  const std::string body = take(text);
  if (a.out.empty() || a.out == "-") {
    std::cout << body << "count " << count << '\n';
  } else {
    write_output(a.out, body);
    std::cout << "count " << count << '\n';
  }
  return kOk;
}

int run_arr_check_gp(const ArrangementArgs& a) {
  auto arr = load_arrangement(a.in);
  int gp = 0;
  check(rgs_arrangement_is_general_position(arr.get(), &gp), "arrangement check-gp");
  std::cout << "general_position " << (gp ? "true" : "false") << '\n';
  return gp ? kOk : kClaimFails;
}

int run_arr_tangent(const ArrangementArgs& a) {
  rgs_arrangement* raw = nullptr;
  check(rgs_arrangement_tangent(a.n, a.n0, &raw), "arrangement tangent");
  Owned<rgs_arrangement> arr(raw);
  char* s = nullptr;
  check(rgs_arrangement_to_text(arr.get(), &s), "arrangement tangent");
  write_output(a.out, take(s));
  return kOk;
}

int run_arr_scale(const ArrangementArgs& a) {
  auto arr = load_arrangement(a.in);
  std::string center = a.center;
  if (center.empty()) {
    // Origin of the ambient space.
    char* s = nullptr;
    check(rgs_arrangement_to_text(arr.get(), &s), "arrangement scale");
    std::istringstream in(take(s));
    std::string line, key;
    std::size_t dim = 0;
    while (std::getline(in, line)) {
      std::istringstream fields(line);
      if (fields >> key && key == "ambient_dim") fields >> dim;
    }
    for (std::size_t i = 0; i < dim; ++i) center += i ? ",0" : "0";
  }
  rgs_arrangement* raw = nullptr;
  check(rgs_arrangement_scale(arr.get(), a.radius.c_str(), center.c_str(), &raw), "arrangement scale");
  Owned<rgs_arrangement> scaled(raw);
  char* s = nullptr;
  check(rgs_arrangement_to_text(scaled.get(), &s), "arrangement scale");
  write_output(a.out, take(s));
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact region counting for rectifier networks and hyperplane arrangements", "regionscope"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--jobs", g.jobs, "Parallel enumeration workers")->check(CLI::PositiveNumber);
  app.add_option("--max-dim", g.max_dim, "Input-dimension guard for network enumeration (default 3)");

  BoundsArgs bounds;
  auto* cmd_bounds = app.add_subcommand("bounds", "Closed-form region and parameter counts");
  cmd_bounds->add_option("--n0", bounds.n0, "Input dimension")->check(CLI::PositiveNumber);
  cmd_bounds->add_option("--n", bounds.n, "Hidden width per layer")->check(CLI::PositiveNumber);
  cmd_bounds->add_option("--k", bounds.k, "Number of hidden layers")->check(CLI::PositiveNumber);
  cmd_bounds->add_option("--n-out", bounds.n_out, "Output dimension");
  cmd_bounds->add_flag("--table", bounds.table, "Emit the regions-per-parameter CSV table");
  cmd_bounds->add_option("--n-range", bounds.n_range, "Comma list of widths for --table");
  cmd_bounds->add_option("--k-range", bounds.k_range, "Comma list of depths for --table (default 1..k)");
  cmd_bounds->add_option("--out", bounds.out, "Output file (default stdout)");

  BuildArgs build;
  auto* cmd_build = app.add_subcommand("build", "Build a construction, write its network file and manifest");
  cmd_build->add_option("--construction", build.construction)
      ->required()
      ->check(CLI::IsMember({"shallow", "deep", "folding"}));
  cmd_build->add_option("--n0", build.n0, "Input dimension")->check(CLI::PositiveNumber);
  cmd_build->add_option("--k", build.k, "Hidden layers (folding)")->check(CLI::PositiveNumber);
  cmd_build->add_option("--m", build.m, "Hidden units (shallow)");
  cmd_build->add_option("--widths", build.widths, "Comma list of hidden widths (deep, shallow)");
  cmd_build->add_option("--seed", build.seed, "Seed (default: REGIONSCOPE_SEED or 0)");
  cmd_build->add_option("--out", build.out, "Network file (default stdout)");
  cmd_build->add_option("--manifest", build.manifest, "Manifest file (default <out>.manifest)");

  std::string enum_net, enum_out;
  bool enum_merged = false;
  auto* cmd_enum = app.add_subcommand("enumerate", "Enumerate the regions of a network file");
  cmd_enum->add_option("--net", enum_net)->required();
  cmd_enum->add_flag("--merged", enum_merged, "Merge regions with equal maps across facets");
  cmd_enum->add_option("--out", enum_out, "Inventory file ('-' for stdout)");

  std::string verify_net;
  std::uint64_t claim = 0;
  auto* cmd_verify = app.add_subcommand("verify", "Exit 0 iff the merged region count reaches the claim");
  cmd_verify->add_option("--net", verify_net)->required();
  cmd_verify->add_option("--claim", claim)->required();

  HeatmapArgs heat;
  auto* cmd_heat = app.add_subcommand("heatmap", "Grid of output values and region ids as CSV");
  cmd_heat->add_option("--net", heat.net)->required();
  cmd_heat->add_option("--box", heat.box, "lo1,lo2:hi1,hi2")->required();
  cmd_heat->add_option("--res", heat.res, "Points per axis")->check(CLI::Range(2, 100000));
  cmd_heat->add_option("--out", heat.out, "CSV file (default stdout)");
  cmd_heat->add_option("--digits", heat.digits, "Decimal places")->check(CLI::Range(0, 60));
  cmd_heat->add_flag("--exact", heat.exact, "Write exact p/q values");

  ArrangementArgs arr;
  auto* cmd_arr = app.add_subcommand("arrangement", "Hyperplane arrangement tools");
  cmd_arr->require_subcommand(1);
  auto* arr_enum = cmd_arr->add_subcommand("enumerate", "List the regions of an arrangement file");
  arr_enum->add_option("--in", arr.in)->required();
  arr_enum->add_option("--out", arr.out);
  auto* arr_gp = cmd_arr->add_subcommand("check-gp", "Exit 0 iff the arrangement is in general position");
  arr_gp->add_option("--in", arr.in)->required();
  auto* arr_tan = cmd_arr->add_subcommand("tangent", "Arrangement with every consecutive active set");
  arr_tan->add_option("--n", arr.n)->check(CLI::PositiveNumber);
  arr_tan->add_option("--n0", arr.n0)->check(CLI::Range(2, 64));
  arr_tan->add_option("--out", arr.out);
  auto* arr_scale = cmd_arr->add_subcommand("scale", "Move every region into a ball");
  arr_scale->add_option("--in", arr.in)->required();
  arr_scale->add_option("--radius", arr.radius);
  arr_scale->add_option("--center", arr.center, "Comma list (default origin)");
  arr_scale->add_option("--out", arr.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*cmd_bounds) return run_bounds(bounds);
  if (*cmd_build) return run_build(build, g);
  if (*cmd_enum) return run_enumerate(enum_net, enum_merged, enum_out, g);
  if (*cmd_verify) return run_verify(verify_net, claim, g);
  if (*cmd_heat) return run_heatmap(heat, g);
  if (*arr_enum) return run_arr_enumerate(arr, g);
  if (*arr_gp) return run_arr_check_gp(arr);
  if (*arr_tan) return run_arr_tangent(arr);
  if (*arr_scale) return run_arr_scale(arr);
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Exit& e) {
    return e.code;
  }
}
