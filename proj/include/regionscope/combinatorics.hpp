// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "regionscope/rational.hpp"

namespace regionscope {

/// C(n, k); zero when k > n.
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// Σ_{j=0}^{upto} C(n, j).
BigInt binomial_prefix_sum(std::uint64_t n, std::uint64_t upto);

/// Calls `visit` with every k-subset of {0..n-1} in lexicographic order.
/// Stops early when `visit` returns false.
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<bool(const std::vector<std::size_t>&)>& visit);

}  // namespace regionscope
