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

#include "cmpg/random.hpp"
#include "cmpg/rational.hpp"
#include "cmpg/state_set.hpp"

#include <doctest.h>

using namespace cmpg;

TEST_CASE("parse and print rationals")
{
    CHECK(parse_rational("3/4") == make_rational(3, 4));
    CHECK(parse_rational("-2/6") == make_rational(-1, 3));
    CHECK(parse_rational("7") == Rational(7));
    CHECK_FALSE(parse_rational("1/0"));
    CHECK_FALSE(parse_rational("x"));
    CHECK_FALSE(parse_rational(""));
    CHECK_FALSE(parse_rational("1/"));
    CHECK(to_string(make_rational(6, 8)) == "3/4");
    CHECK(to_string(Rational(5)) == "5");
}

TEST_CASE("powers")
{
    CHECK(pow(make_rational(1, 2), 10) == make_rational(1, 1024));
    CHECK(pow(Rational(3), 0) == 1);
    CHECK(pow_signed(make_rational(2, 3), -2) == make_rational(9, 4));
    CHECK(floor_dyadic(make_rational(1, 3), 4) == make_rational(5, 16));
}

TEST_CASE("power_at_least compares without materializing huge powers")
{
    CHECK(power_at_least(Rational(2), Integer(10), Rational(1024)));
    CHECK_FALSE(power_at_least(Rational(2), Integer(9), Rational(1024)));
    Integer huge = 1;
    huge <<= 200;
    CHECK(power_at_least(Rational(2), huge, Rational(1000000)));
    CHECK_THROWS(power_at_least(Rational(1), huge, Rational(2)));
}

TEST_CASE("state sets")
{
    StateSet a(5, {0, 2, 4});
    StateSet b(5, {2, 3});
    CHECK((a & b) == StateSet(5, {2}));
    CHECK((a | b).size() == 4);
    CHECK((a - b) == StateSet(5, {0, 4}));
    CHECK(a.complement() == StateSet(5, {1, 3}));
    CHECK(StateSet(5, {2}).subset_of(a));
    CHECK_FALSE(b.subset_of(a));
    CHECK(StateSet::empty(3).is_empty());
}

TEST_CASE("rng is reproducible and bounded")
{
    Rng x(42), y(42);
    for (int i = 0; i < 100; ++i) {
        auto u = x.below(7);
        CHECK(u == y.below(7));
        CHECK(u < 7);
    }
    Rng z(1);
    int hits = 0;
    for (int i = 0; i < 4000; ++i) hits += z.chance(make_rational(1, 4));
    CHECK(hits > 800);
    CHECK(hits < 1200);
}
