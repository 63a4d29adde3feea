// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace regionscope {

/// Exact fraction. GMP keeps every result canonical (denominator > 0, reduced).
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p", "-p" or "p/q" (q > 0). Non-canonical input such as "2/4" is
/// accepted and reduced. Throws FormatError on anything else.
/// num/den in canonical form. PreconditionError when den = 0.
Rational ratio(const BigInt& num, const BigInt& den);

Rational parse_rational(std::string_view text);

/// "p/q", or "p" when q = 1; the sign is carried by the numerator.
std::string to_string(const Rational& value);

/// Rounds half away from zero to `digits` fractional digits.
std::string to_decimal(const Rational& value, int digits);

int sign(const Rational& value);

}  // namespace regionscope
