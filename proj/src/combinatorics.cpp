// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#include "regionscope/combinatorics.hpp"

#include <numeric>

namespace regionscope {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  BigInt out;
  if (k > n) return out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

BigInt binomial_prefix_sum(std::uint64_t n, std::uint64_t upto) {
  BigInt acc = 0;
  for (std::uint64_t j = 0; j <= upto && j <= n; ++j) acc += binomial(n, j);
  return acc;
}

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (;;) {
    if (!visit(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace regionscope
