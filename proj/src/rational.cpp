// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#include "regionscope/rational.hpp"

#include <algorithm>
#include <cctype>

#include "regionscope/errors.hpp"

namespace regionscope {
namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

}  // namespace

Rational ratio(const BigInt& num, const BigInt& den) {
  if (sgn(den) == 0) throw PreconditionError("zero denominator");
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num, true)) {
    throw FormatError("malformed rational '" + std::string(text) + "'");
  }
  std::string num_str(num.front() == '+' ? num.substr(1) : num);
  Rational out;
  if (slash == std::string_view::npos) {
    out = Rational(BigInt(num_str));
    return out;
  }
  const std::string_view den = text.substr(slash + 1);
  if (!is_integer_literal(den, false)) {
    throw FormatError("malformed rational '" + std::string(text) + "'");
  }
  BigInt d(std::string{den});
  if (d == 0) throw FormatError("zero denominator in '" + std::string(text) + "'");
  out = Rational(BigInt(num_str), d);
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::string to_decimal(const Rational& value, int digits) {
  if (digits < 0) digits = 0;
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const bool negative = sgn(value) < 0;
  const Rational magnitude = abs(value);
  // round(|v| * 10^digits), half away from zero
  BigInt scaled = (magnitude.get_num() * scale * 2 + magnitude.get_den()) / (magnitude.get_den() * 2);
  std::string body = scaled.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative && scaled != 0) body.insert(0, "-");
  return body;
}

int sign(const Rational& value) { return sgn(value); }

}  // namespace regionscope
