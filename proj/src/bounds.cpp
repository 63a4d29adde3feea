// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#include "regionscope/bounds.hpp"

#include "regionscope/combinatorics.hpp"
#include "regionscope/errors.hpp"

namespace regionscope {

BigInt shallow_max_regions(std::uint64_t n0, std::uint64_t m) { return binomial_prefix_sum(m, n0); }

BigInt deep_lower_bound(std::uint64_t n0, const std::vector<std::uint64_t>& widths) {
  if (widths.empty()) throw PreconditionError("deep_lower_bound: no hidden layers");
  if (n0 == 0) throw PreconditionError("deep_lower_bound: n0 must be positive");
  BigInt product = 1;
  for (std::size_t i = 0; i + 1 < widths.size(); ++i) product *= widths[i] / n0;
  return product * shallow_max_regions(n0, widths.back());
}

BigInt folding_lower_bound(std::uint64_t n0, std::uint64_t k) {
  if (k == 0) throw PreconditionError("folding_lower_bound: k must be at least 1");
  BigInt factor;
  mpz_ui_pow_ui(factor.get_mpz_t(), 2, (k - 1) * n0);
  return factor * shallow_max_regions(n0, 2 * n0);
}

BigInt param_count(const ArchSpec& arch, ParamCountKind kind) {
  const auto& w = arch.hidden_widths;
  if (w.empty()) throw PreconditionError("param_count: no hidden layers");
  const BigInt n0 = arch.n0;
  const BigInt nout = arch.n_out;
  const BigInt k = static_cast<unsigned long>(w.size());
  const BigInt n = w.front();
  switch (kind) {
    case ParamCountKind::Deep:
      for (auto x : w) {
        if (x != w.front()) {
          throw PreconditionError(
              "param_count: the closed form needs equal hidden widths; use the summed count");
        }
      }
      return (k - 1) * n * n + (k + n0 + nout) * n + nout;
    case ParamCountKind::ShallowStated:
      return (n0 + nout) * k * n + n + nout;
    case ParamCountKind::ShallowLiteral:
      return k * n * n0 + k * n + k * n * nout + nout;
    case ParamCountKind::Summed: {
      BigInt total = 0;
      std::uint64_t fan_in = arch.n0;
      for (auto x : w) {
        total += BigInt(fan_in + 1) * x;
        fan_in = x;
      }
      return total + BigInt(fan_in + 1) * nout;
    }
  }
  return 0;
}

std::vector<RatioRow> regions_per_param_table(std::uint64_t n0, const std::vector<std::uint64_t>& n_range,
                                              const std::vector<std::uint64_t>& k_range) {
  if (n_range.empty() || k_range.empty()) throw PreconditionError("regions_per_param_table: empty range");
  std::vector<RatioRow> rows;
  for (auto n : n_range) {
    for (auto k : k_range) {
      RatioRow r;
      r.n0 = n0;
      r.n = n;
      r.k = k;
      const ArchSpec arch{n0, std::vector<std::uint64_t>(k, n), 1};
      r.deep_bound = deep_lower_bound(n0, arch.hidden_widths);
      r.shallow_max = shallow_max_regions(n0, k * n);
      r.deep_params = param_count(arch, ParamCountKind::Deep);
      r.shallow_params_stated = param_count(arch, ParamCountKind::ShallowStated);
      r.shallow_params_literal = param_count(arch, ParamCountKind::ShallowLiteral);
      r.deep_ratio = ratio(r.deep_bound, r.deep_params);
      r.shallow_ratio_stated = ratio(r.shallow_max, r.shallow_params_stated);
      r.shallow_ratio_literal = ratio(r.shallow_max, r.shallow_params_literal);
      const int c = cmp(r.deep_ratio, r.shallow_ratio_stated);
      r.dominant = c > 0 ? "deep" : (c < 0 ? "shallow" : "tie");
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

std::uint64_t min_shallow_width(std::uint64_t n0, const BigInt& target) {
  if (target < 1) throw PreconditionError("min_shallow_width: target must be at least 1");
  if (target == 1) return 0;
  if (n0 == 0) throw PreconditionError("min_shallow_width: n0 = 0 never exceeds one region");
  // Doubling then bisection; shallow_max_regions is increasing in m for n0 >= 1.
  std::uint64_t hi = 1;
  while (shallow_max_regions(n0, hi) < target) hi *= 2;
  std::uint64_t lo = hi / 2;  // shallow_max_regions(n0, lo) < target
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (shallow_max_regions(n0, mid) < target ? lo : hi) = mid;
  }
  return hi;
}

Rational depth_advantage(std::uint64_t n0, std::uint64_t n, std::uint64_t k) {
  return ratio(deep_lower_bound(n0, std::vector<std::uint64_t>(k, n)), shallow_max_regions(n0, k * n));
}

}  // namespace regionscope
