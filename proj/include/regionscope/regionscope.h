/* Copyright 2026 The regionscope Authors
 * SPDX-License-Identifier: Apache-2.0 */

/* C interface to regionscope. Every function returns an rgs_status; on a
 * non-OK status rgs_last_error() describes the failure (thread-local).
 * Strings returned through char** are owned by the caller and released with
 * rgs_string_free. Rationals cross the boundary as text "p/q" and vectors as
 * comma-separated lists of rationals. */

#ifndef REGIONSCOPE_REGIONSCOPE_H_
#define REGIONSCOPE_REGIONSCOPE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(RGS_BUILDING)
#define RGS_API __attribute__((visibility("default")))
#else
#define RGS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  RGS_OK = 0,
  RGS_ERR_DIMENSION = 1,
  RGS_ERR_PRECONDITION = 2,
  RGS_ERR_FORMAT = 3,
  RGS_ERR_GUARD = 4,
  RGS_ERR_ARGUMENT = 5,
  RGS_ERR_INTERNAL = 6
} rgs_status;

typedef struct rgs_net rgs_net;
typedef struct rgs_arrangement rgs_arrangement;
typedef struct rgs_inventory rgs_inventory;
typedef struct rgs_report rgs_report;

typedef struct {
  size_t jobs;          /* 0 or 1: sequential */
  size_t max_input_dim; /* 0: default guard (3) */
} rgs_enum_options;

typedef enum {
  RGS_PARAMS_DEEP = 0,
  RGS_PARAMS_SHALLOW_STATED = 1,
  RGS_PARAMS_SHALLOW_LITERAL = 2,
  RGS_PARAMS_SUMMED = 3
} rgs_param_kind;

RGS_API const char* rgs_version(void);
RGS_API const char* rgs_last_error(void);
/* Source line of the last RGS_ERR_FORMAT, 0 when unknown. */
RGS_API size_t rgs_last_error_line(void);
RGS_API void rgs_string_free(char* s);

/* Networks */
RGS_API rgs_status rgs_net_from_text(const char* text, rgs_net** out);
RGS_API rgs_status rgs_net_to_text(const rgs_net* net, char** out);
RGS_API rgs_status rgs_net_input_dim(const rgs_net* net, size_t* out);
RGS_API rgs_status rgs_net_evaluate(const rgs_net* net, const char* x, char** out);
RGS_API void rgs_net_free(rgs_net* net);

/* Region enumeration; merge != 0 joins facet-adjacent regions with equal maps. */
RGS_API rgs_status rgs_enumerate(const rgs_net* net, const rgs_enum_options* options, int merge,
                                 rgs_inventory** out);
/* merged is SIZE_MAX for an unmerged inventory. */
RGS_API rgs_status rgs_inventory_counts(const rgs_inventory* inv, size_t* activation, size_t* merged);
RGS_API rgs_status rgs_inventory_to_text(const rgs_inventory* inv, char** out);
RGS_API void rgs_inventory_free(rgs_inventory* inv);

RGS_API rgs_status rgs_sample_affine_pieces(const rgs_net* net, const char* lo, const char* hi,
                                            size_t resolution, size_t* out);
/* CSV x1,...,xn,f,region over [lo, hi]; inv must be merged. */
RGS_API rgs_status rgs_heatmap_csv(const rgs_net* net, const rgs_inventory* inv, const char* lo,
                                   const char* hi, size_t resolution, int digits, int exact, char** out);

/* Constructions (the report owns the built net and its exact counts). */
RGS_API rgs_status rgs_build_shallow(size_t n0, size_t m, uint64_t seed, const rgs_enum_options* options,
                                     rgs_report** out);
RGS_API rgs_status rgs_build_deep(size_t n0, const size_t* widths, size_t count, uint64_t seed,
                                  const rgs_enum_options* options, rgs_report** out);
RGS_API rgs_status rgs_build_folding(size_t n0, size_t k, uint64_t seed, const rgs_enum_options* options,
                                     rgs_report** out);
RGS_API rgs_status rgs_report_net(const rgs_report* report, rgs_net** out);
RGS_API rgs_status rgs_report_manifest(const rgs_report* report, char** out);
RGS_API rgs_status rgs_report_summary(const rgs_report* report, char** claimed_bound, size_t* merged,
                                      int* satisfied);
RGS_API rgs_status rgs_report_verify(const rgs_report* report, const rgs_enum_options* options, int* ok,
                                     char** diagnostic);
RGS_API void rgs_report_free(rgs_report* report);

/* Bounds; large integers are returned as decimal text. */
RGS_API rgs_status rgs_shallow_max_regions(uint64_t n0, uint64_t m, char** out);
RGS_API rgs_status rgs_deep_lower_bound(uint64_t n0, const uint64_t* widths, size_t count, char** out);
RGS_API rgs_status rgs_folding_lower_bound(uint64_t n0, uint64_t k, char** out);
RGS_API rgs_status rgs_param_count(uint64_t n0, const uint64_t* widths, size_t count, uint64_t n_out,
                                   rgs_param_kind kind, char** out);
RGS_API rgs_status rgs_min_shallow_width(uint64_t n0, const char* target, uint64_t* out);
RGS_API rgs_status rgs_bounds_table_csv(uint64_t n0, const uint64_t* ns, size_t n_count, const uint64_t* ks,
                                        size_t k_count, char** out);

/* Arrangements */
RGS_API rgs_status rgs_arrangement_from_text(const char* text, rgs_arrangement** out);
RGS_API rgs_status rgs_arrangement_to_text(const rgs_arrangement* arr, char** out);
RGS_API rgs_status rgs_arrangement_regions(const rgs_arrangement* arr, size_t jobs, size_t* count, char** text);
RGS_API rgs_status rgs_arrangement_is_general_position(const rgs_arrangement* arr, int* out);
/* Zaslavsky counts for m hyperplanes in general position in dimension n0. */
RGS_API rgs_status rgs_arrangement_formula(uint64_t m, uint64_t n0, char** regions, char** bounded);
RGS_API rgs_status rgs_arrangement_tangent(size_t n, size_t n0, rgs_arrangement** out);
RGS_API rgs_status rgs_arrangement_scale(const rgs_arrangement* arr, const char* radius, const char* center,
                                         rgs_arrangement** out);
RGS_API void rgs_arrangement_free(rgs_arrangement* arr);

#ifdef __cplusplus
}
#endif

#endif /* REGIONSCOPE_REGIONSCOPE_H_ */
