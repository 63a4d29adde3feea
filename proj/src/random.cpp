// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#include "regionscope/random.hpp"

namespace regionscope {

Rational RationalSampler::next(long max_num, long max_den) {
  std::uniform_int_distribution<long> num(-max_num, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  const long n = num(engine_);
  const long d = den(engine_);
  return ratio(n, d);
}

Rational RationalSampler::next_nonzero(long max_num, long max_den) {
  for (;;) {
    Rational r = next(max_num, max_den);
    if (sgn(r) != 0) return r;
  }
}

Vector RationalSampler::vector(std::size_t n, long max_num, long max_den) {
  Vector v(n);
  for (auto& x : v) x = next(max_num, max_den);
  return v;
}

}  // namespace regionscope
