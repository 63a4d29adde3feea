// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regionscope/rational.hpp"

namespace regionscope {

struct ArchSpec {
  std::uint64_t n0 = 0;
  std::vector<std::uint64_t> hidden_widths;
  std::uint64_t n_out = 1;
};

/// Σ_{j=0}^{n0} C(m, j): the most regions m rectifiers on n0 inputs can cut.
BigInt shallow_max_regions(std::uint64_t n0, std::uint64_t m);

/// (Π_{i<k} ⌊n_i / n0⌋) · Σ_{j≤n0} C(n_k, j).
BigInt deep_lower_bound(std::uint64_t n0, const std::vector<std::uint64_t>& widths);

/// 2^{(k-1) n0} · Σ_{j≤n0} C(2 n0, j).
BigInt folding_lower_bound(std::uint64_t n0, std::uint64_t k);

enum class ParamCountKind {
  Deep,            ///< (k-1) n^2 + (k + n0 + n_out) n + n_out; equal widths only
  ShallowStated,   ///< (n0 + n_out) k n + n + n_out, closed form
  ShallowLiteral,  ///< k n n0 + k n + k n n_out + n_out, entry by entry
  Summed,          ///< Σ over layers of (fan_in + 1) * width, any widths
};

/// Parameter counts. For the shallow kinds `arch.hidden_widths` is read as
/// [n] repeated k times (the deep architecture being compared), i.e. a single
/// hidden layer of k·n units. PreconditionError when Deep is asked for
/// unequal widths.
BigInt param_count(const ArchSpec& arch, ParamCountKind kind);

struct RatioRow {
  std::uint64_t n0 = 0;
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  BigInt deep_bound;
  BigInt shallow_max;
  BigInt deep_params;
  BigInt shallow_params_stated;
  BigInt shallow_params_literal;
  Rational deep_ratio;
  Rational shallow_ratio_stated;
  Rational shallow_ratio_literal;
  std::string dominant;  ///< "deep", "shallow" or "tie", by regions per parameter (stated)
};

/// One row per (n, k) in the given order; n_out = 1.
std::vector<RatioRow> regions_per_param_table(std::uint64_t n0, const std::vector<std::uint64_t>& n_range,
                                              const std::vector<std::uint64_t>& k_range);

/// Smallest m with shallow_max_regions(n0, m) >= target.
std::uint64_t min_shallow_width(std::uint64_t n0, const BigInt& target);

/// deep_lower_bound(n0, [n]*k) / shallow_max_regions(n0, k n).
Rational depth_advantage(std::uint64_t n0, std::uint64_t n, std::uint64_t k);

}  // namespace regionscope
