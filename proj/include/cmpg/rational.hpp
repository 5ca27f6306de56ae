/*
 * Copyright 2026 The cmpg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cmpg {

/**
 * Exact rational number. GMP keeps every mpq_class produced by arithmetic in
 * lowest terms with a positive denominator; values built from raw
 * numerator/denominator pairs go through make_rational() which canonicalizes.
 *
 * Beware of gmpxx expression templates: bind results to `Rational`, never `auto`.
 */
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long num, long den = 1);

/// Parses "p/q", "-p/q" or an integer literal. Returns nullopt on malformed input
/// or a zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

/// Canonical text form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// q^e for a non-negative machine exponent.
Rational pow(const Rational& q, unsigned long e);

/// q^e for a (possibly negative) exponent.
Rational pow_signed(const Rational& q, long e);

/// floor(q * 2^bits) / 2^bits, i.e. q rounded down onto the dyadic grid.
Rational floor_dyadic(const Rational& q, unsigned bits);

/**
 * Decides base^exponent >= value exactly for base > 1, value > 0 without
 * materializing base^exponent when the exponent is astronomically large.
 */
bool power_at_least(const Rational& base, const Integer& exponent, const Rational& value);

/// Approximation for display only.
double to_double(const Rational& q);

} // namespace cmpg
