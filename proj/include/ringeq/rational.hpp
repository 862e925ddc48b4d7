// Copyright 2026 The ringeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RINGEQ_RATIONAL_HPP_
#define RINGEQ_RATIONAL_HPP_

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace ringeq {

// Every quantity that enters a verdict is an exact rational.
using Rational = mpq_class;

inline Rational make_rational(long numerator, long denominator = 1) {
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

// Parses "p", "-p", "p/q" or a terminating decimal such as "1.5".
// Returns nullopt on malformed text or a zero denominator.
inline std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  auto digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    }
    return true;
  };
  const std::size_t slash = text.find('/');
  const std::size_t dot = text.find('.');
  Rational value;
  if (slash != std::string_view::npos) {
    if (dot != std::string_view::npos) return std::nullopt;
    if (!digits(pos, slash) || !digits(slash + 1, text.size())) {
      return std::nullopt;
    }
    mpz_class num(std::string(text.substr(pos, slash - pos)), 10);
    mpz_class den(std::string(text.substr(slash + 1)), 10);
    if (den == 0) return std::nullopt;
    value = Rational(num, den);
  } else if (dot != std::string_view::npos) {
    const bool int_ok = dot == pos || digits(pos, dot);
    if (!int_ok || !digits(dot + 1, text.size())) return std::nullopt;
    std::string all(text.substr(pos, dot - pos));
    std::string frac(text.substr(dot + 1));
    if (all.empty()) all = "0";
    mpz_class num(all + frac, 10);
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    value = Rational(num, den);
  } else {
    if (!digits(pos, text.size())) return std::nullopt;
    value = Rational(mpz_class(std::string(text.substr(pos)), 10));
  }
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

// Canonical machine form: "p" or "p/q" in lowest terms.
inline std::string to_string(const Rational& q) { return q.get_str(10); }

// Human form: exact decimal when the expansion terminates, else "p/q".
inline std::string to_display(const Rational& q) {
  mpz_class den = q.get_den();
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return to_string(q);
  const int places = std::max(twos, fives);
  if (places == 0) return q.get_num().get_str();
  mpz_class scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  mpz_class scaled = q.get_num() * scale / q.get_den();
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
  }
  digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  while (digits.back() == '0') digits.pop_back();
  if (digits.back() == '.') digits.pop_back();
  return negative ? "-" + digits : digits;
}

}  // namespace ringeq

#endif  // RINGEQ_RATIONAL_HPP_
