// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

#include "regionscope/linalg.hpp"

namespace regionscope {

/// Deterministic source of small rationals for "generic" choices.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : engine_(seed) {}

  /// Numerator uniform in [-max_num, max_num], denominator in [1, max_den].
  Rational next(long max_num, long max_den);
  /// As next(), never zero.
  Rational next_nonzero(long max_num, long max_den);
  Vector vector(std::size_t n, long max_num, long max_den);

 private:
  std::mt19937_64 engine_;
};

}  // namespace regionscope
