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

#include "cmpg/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace cmpg {

Rational
make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational
make_rational(long num, long den)
{
    return make_rational(Integer(num), Integer(den));
}

namespace {

bool
all_digits(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

} // namespace

std::optional<Rational>
parse_rational(std::string_view text)
{
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    Integer n(std::string(num), 10);
    Integer d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    if (negative) n = -n;
    return make_rational(n, d);
}

std::string
to_string(const Rational& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string
to_string(const Integer& z)
{
    return z.get_str();
}

Rational
pow(const Rational& q, unsigned long e)
{
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), e);
    // q is canonical, so num/den is canonical as well
    Rational r;
    mpq_set_num(r.get_mpq_t(), num.get_mpz_t());
    mpq_set_den(r.get_mpq_t(), den.get_mpz_t());
    return r;
}

Rational
pow_signed(const Rational& q, long e)
{
    if (e >= 0) return pow(q, static_cast<unsigned long>(e));
    if (q == 0) throw std::domain_error("zero to a negative power");
    Rational inv = 1 / q;
    return pow(inv, static_cast<unsigned long>(-e));
}

Rational
floor_dyadic(const Rational& q, unsigned bits)
{
    Integer scaled = q.get_num();
    scaled <<= bits;
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
    Integer den = 1;
    den <<= bits;
    return make_rational(fl, den);
}

bool
power_at_least(const Rational& base, const Integer& exponent, const Rational& value)
{
    if (base <= 1) throw std::domain_error("power_at_least needs base > 1");
    if (value <= 1) return true;
    if (exponent <= 0) return value <= 1;

    // smallest k with base^k >= 2, so base^e >= 2^floor(e/k)
    unsigned long k = 1;
    Rational acc = base;
    while (acc < 2) {
        acc *= base;
        ++k;
    }
    Integer ceil_value;
    mpz_cdiv_q(ceil_value.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
    Integer bits = static_cast<unsigned long>(mpz_sizeinbase(ceil_value.get_mpz_t(), 2));
    Integer doublings = exponent / k;
    if (doublings >= bits) return true;

    // exponent is now below k * (bits + 1); small enough to evaluate
    return pow(base, exponent.get_ui()) >= value;
}

double
to_double(const Rational& q)
{
    return q.get_d();
}

} // namespace cmpg
