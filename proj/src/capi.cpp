// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#include "regionscope/regionscope.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <string>

#include "regionscope/arrangement.hpp"
#include "regionscope/bounds.hpp"
#include "regionscope/constructions.hpp"
#include "regionscope/errors.hpp"
#include "regionscope/formats.hpp"
#include "regionscope/network.hpp"

struct rgs_net {
  regionscope::RectifierNet net;
};
struct rgs_arrangement {
  regionscope::Arrangement arr;
};
struct rgs_inventory {
  regionscope::RegionInventory inv;
  std::size_t input_dim;
  std::size_t output_dim;
};
struct rgs_report {
  regionscope::ConstructionReport report;
};

namespace {

using namespace regionscope;

thread_local std::string g_error;
thread_local std::size_t g_error_line = 0;

class NullArgument : public Error {
 public:
  using Error::Error;
};

template <typename F>
rgs_status guarded(F&& body) {
  g_error.clear();
  g_error_line = 0;
  try {
    body();
    return RGS_OK;
  } catch (const FormatError& e) {
    g_error = e.what();
    g_error_line = e.line();
    return RGS_ERR_FORMAT;
  } catch (const NullArgument& e) {
    g_error = e.what();
    return RGS_ERR_ARGUMENT;
  } catch (const DimensionError& e) {
    g_error = e.what();
    return RGS_ERR_DIMENSION;
  } catch (const GuardError& e) {
    g_error = e.what();
    return RGS_ERR_GUARD;
  } catch (const PreconditionError& e) {
    g_error = e.what();
    return RGS_ERR_PRECONDITION;
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
    return RGS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_error = e.what();
    return RGS_ERR_INTERNAL;
  }
}


template <typename T>
void require(const T* p, const char* name) {
  if (p == nullptr) throw NullArgument(std::string("null argument '") + name + "'");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

EnumerationOptions enum_options(const rgs_enum_options* o) {
  EnumerationOptions out;
  if (o != nullptr) {
    out.jobs = o->jobs == 0 ? 1 : o->jobs;
    if (o->max_input_dim != 0) out.max_input_dim = o->max_input_dim;
  }
  return out;
}

ConstructionOptions construction_options(std::uint64_t seed, const rgs_enum_options* o) {
  return {seed, enum_options(o)};
}

std::string join(const Vector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v[i]);
  return out;
}

std::vector<std::uint64_t> widths_of(const std::uint64_t* w, std::size_t count) {
  if (count > 0) require(w, "widths");
  return {w, w + count};
}

}  // namespace

extern "C" {

const char* rgs_version(void) { return "1.0.0"; }
const char* rgs_last_error(void) { return g_error.c_str(); }
size_t rgs_last_error_line(void) { return g_error_line; }
void rgs_string_free(char* s) { std::free(s); }

rgs_status rgs_net_from_text(const char* text, rgs_net** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new rgs_net{read_net(text)};
  });
}

rgs_status rgs_net_to_text(const rgs_net* net, char** out) {
  return guarded([&] {
    require(net, "net");
    require(out, "out");
    *out = dup(write_net(net->net));
  });
}

rgs_status rgs_net_input_dim(const rgs_net* net, size_t* out) {
  return guarded([&] {
    require(net, "net");
    require(out, "out");
    *out = net->net.input_dim();
  });
}

rgs_status rgs_net_evaluate(const rgs_net* net, const char* x, char** out) {
  return guarded([&] {
    require(net, "net");
    require(x, "x");
    require(out, "out");
    *out = dup(join(evaluate(net->net, parse_rational_list(x))));
  });
}

void rgs_net_free(rgs_net* net) { delete net; }

rgs_status rgs_enumerate(const rgs_net* net, const rgs_enum_options* options, int merge, rgs_inventory** out) {
  return guarded([&] {
    require(net, "net");
    require(out, "out");
    const EnumerationOptions opts = enum_options(options);
    RegionInventory inv = enumerate_activation_regions(net->net, opts);
    if (merge != 0) inv = merge_linearity_regions(std::move(inv), opts.feasibility);
    *out = new rgs_inventory{std::move(inv), net->net.input_dim(), net->net.output_dim()};
  });
}

rgs_status rgs_inventory_counts(const rgs_inventory* inv, size_t* activation, size_t* merged) {
  return guarded([&] {
    require(inv, "inv");
    if (activation != nullptr) *activation = inv->inv.activation_count;
    if (merged != nullptr) *merged = inv->inv.merged ? inv->inv.merged_count : std::numeric_limits<size_t>::max();
  });
}

rgs_status rgs_inventory_to_text(const rgs_inventory* inv, char** out) {
  return guarded([&] {
    require(inv, "inv");
    require(out, "out");
    *out = dup(write_inventory(inv->inv, inv->input_dim, inv->output_dim));
  });
}

void rgs_inventory_free(rgs_inventory* inv) { delete inv; }

rgs_status rgs_sample_affine_pieces(const rgs_net* net, const char* lo, const char* hi, size_t resolution,
                                    size_t* out) {
  return guarded([&] {
    require(net, "net");
    require(lo, "lo");
    require(hi, "hi");
    require(out, "out");
    *out = sample_affine_pieces(net->net, parse_rational_list(lo), parse_rational_list(hi), resolution);
  });
}

rgs_status rgs_heatmap_csv(const rgs_net* net, const rgs_inventory* inv, const char* lo, const char* hi,
                           size_t resolution, int digits, int exact, char** out) {
  return guarded([&] {
    require(net, "net");
    require(inv, "inv");
    require(lo, "lo");
    require(hi, "hi");
    require(out, "out");
    const auto cells = heatmap_grid(net->net, inv->inv, parse_rational_list(lo), parse_rational_list(hi), resolution);
    *out = dup(write_heatmap_csv(cells, digits, exact != 0));
  });
}

rgs_status rgs_build_shallow(size_t n0, size_t m, uint64_t seed, const rgs_enum_options* options,
                             rgs_report** out) {
  return guarded([&] {
    require(out, "out");
    *out = new rgs_report{report_shallow_generic(n0, m, construction_options(seed, options))};
  });
}

rgs_status rgs_build_deep(size_t n0, const size_t* widths, size_t count, uint64_t seed,
                          const rgs_enum_options* options, rgs_report** out) {
  return guarded([&] {
    require(out, "out");
    if (count > 0) require(widths, "widths");
    const std::vector<std::size_t> w(widths, widths + count);
    *out = new rgs_report{build_deep_theorem_net(n0, w, construction_options(seed, options))};
  });
}

rgs_status rgs_build_folding(size_t n0, size_t k, uint64_t seed, const rgs_enum_options* options,
                             rgs_report** out) {
  return guarded([&] {
    require(out, "out");
    *out = new rgs_report{build_folding_net(n0, k, construction_options(seed, options))};
  });
}

rgs_status rgs_report_net(const rgs_report* report, rgs_net** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = new rgs_net{report->report.net};
  });
}

rgs_status rgs_report_manifest(const rgs_report* report, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = dup(write_manifest(ConstructionManifest::from_report(report->report)));
  });
}

rgs_status rgs_report_summary(const rgs_report* report, char** claimed_bound, size_t* merged, int* satisfied) {
  return guarded([&] {
    require(report, "report");
    if (claimed_bound != nullptr) *claimed_bound = dup(report->report.claimed_bound.get_str());
    if (merged != nullptr) *merged = report->report.enumerated_merged;
    if (satisfied != nullptr) *satisfied = report->report.satisfied ? 1 : 0;
  });
}

rgs_status rgs_report_verify(const rgs_report* report, const rgs_enum_options* options, int* ok,
                             char** diagnostic) {
  return guarded([&] {
    require(report, "report");
    require(ok, "ok");
    const VerificationResult r =
        verify_construction(report->report, construction_options(report->report.seed, options));
    *ok = r.ok ? 1 : 0;
    if (diagnostic != nullptr) *diagnostic = dup(r.diagnostic);
  });
}

void rgs_report_free(rgs_report* report) { delete report; }

rgs_status rgs_shallow_max_regions(uint64_t n0, uint64_t m, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = dup(shallow_max_regions(n0, m).get_str());
  });
}

rgs_status rgs_deep_lower_bound(uint64_t n0, const uint64_t* widths, size_t count, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = dup(deep_lower_bound(n0, widths_of(widths, count)).get_str());
  });
}

rgs_status rgs_folding_lower_bound(uint64_t n0, uint64_t k, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = dup(folding_lower_bound(n0, k).get_str());
  });
}

rgs_status rgs_param_count(uint64_t n0, const uint64_t* widths, size_t count, uint64_t n_out, rgs_param_kind kind,
                           char** out) {
  return guarded([&] {
    require(out, "out");
    if (kind < RGS_PARAMS_DEEP || kind > RGS_PARAMS_SUMMED) throw PreconditionError("unknown parameter-count kind");
    const ArchSpec arch{n0, widths_of(widths, count), n_out};
    *out = dup(param_count(arch, static_cast<ParamCountKind>(kind)).get_str());
  });
}

rgs_status rgs_min_shallow_width(uint64_t n0, const char* target, uint64_t* out) {
  return guarded([&] {
    require(target, "target");
    require(out, "out");
    BigInt t;
    if (t.set_str(target, 10) != 0) throw FormatError(std::string("not an integer: '") + target + "'");
    *out = min_shallow_width(n0, t);
  });
}

rgs_status rgs_bounds_table_csv(uint64_t n0, const uint64_t* ns, size_t n_count, const uint64_t* ks,
                                size_t k_count, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = dup(write_bounds_csv(regions_per_param_table(n0, widths_of(ns, n_count), widths_of(ks, k_count))));
  });
}

rgs_status rgs_arrangement_from_text(const char* text, rgs_arrangement** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new rgs_arrangement{read_arrangement(text)};
  });
}

rgs_status rgs_arrangement_to_text(const rgs_arrangement* arr, char** out) {
  return guarded([&] {
    require(arr, "arr");
    require(out, "out");
    *out = dup(write_arrangement(arr->arr));
  });
}

rgs_status rgs_arrangement_regions(const rgs_arrangement* arr, size_t jobs, size_t* count, char** text) {
  return guarded([&] {
    require(arr, "arr");
    ArrangementEnumerationOptions opts;
    opts.jobs = jobs == 0 ? 1 : jobs;
    const auto regions = enumerate_arrangement_regions(arr->arr, opts);
    if (count != nullptr) *count = regions.size();
    if (text != nullptr) *text = dup(write_regions(regions));
  });
}

rgs_status rgs_arrangement_is_general_position(const rgs_arrangement* arr, int* out) {
  return guarded([&] {
    require(arr, "arr");
    require(out, "out");
    *out = is_general_position(arr->arr) ? 1 : 0;
  });
}

rgs_status rgs_arrangement_formula(uint64_t m, uint64_t n0, char** regions, char** bounded) {
  return guarded([&] {
    const GeneralPositionCounts c = regions_formula_general_position(m, n0);
    if (regions != nullptr) *regions = dup(c.regions.get_str());
    if (bounded != nullptr) *bounded = dup(c.bounded.get_str());
  });
}

rgs_status rgs_arrangement_tangent(size_t n, size_t n0, rgs_arrangement** out) {
  return guarded([&] {
    require(out, "out");
    *out = new rgs_arrangement{build_tangent_arrangement(n, n0)};
  });
}

rgs_status rgs_arrangement_scale(const rgs_arrangement* arr, const char* radius, const char* center,
                                 rgs_arrangement** out) {
  return guarded([&] {
    require(arr, "arr");
    require(radius, "radius");
    require(center, "center");
    require(out, "out");
    *out = new rgs_arrangement{scale_into_ball(arr->arr, parse_rational(radius), parse_rational_list(center))};
  });
}

void rgs_arrangement_free(rgs_arrangement* arr) { delete arr; }

}  // extern "C"
