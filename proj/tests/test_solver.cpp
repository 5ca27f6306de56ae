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

#include "cmpg/errors.hpp"
#include "cmpg/generators.hpp"
#include "cmpg/random.hpp"
#include "cmpg/solver.hpp"

#include <doctest.h>

#include <algorithm>

using namespace cmpg;

namespace {

using Actions = std::vector<ActionId>;

GameStructure
random_game(std::uint64_t seed, unsigned states = 6)
{
    RandomGameParams p;
    p.states = states;
    p.max_actions = 3;
    p.branching = 3;
    p.seed = seed;
    return gen_random(p);
}

StateSet
random_subset(Rng& rng, std::size_t n, const StateSet& within)
{
    StateSet out(n);
    for (StateId s : within.members()) {
        if (rng.below(3) != 0) out.insert(s);
    }
    return out;
}

/// Same supports, different positive probabilities.
GameStructure
reweighted(const GameStructure& g, std::uint64_t seed)
{
    Rng rng(seed);
    GameData d = g.data();
    for (auto& row : d.moves) {
        for (auto& mv : row) {
            long total = 0;
            std::vector<long> w;
            for (std::size_t i = 0; i < mv.distribution.size(); ++i) total += w.emplace_back(static_cast<long>(rng.between(1, 9)));
            for (std::size_t i = 0; i < w.size(); ++i) mv.distribution[i].probability = make_rational(w[i], total);
        }
    }
    return GameStructure(std::move(d));
}

} // namespace

TEST_CASE("operator examples on G1")
{
    GameStructure g = gen_gn(1);
    StateSet S = g.all_states();
    StateSet none = g.no_states();
    CHECK(allow1(g, 1, S) == Actions{0, 1});
    CHECK(allow1(g, 1, StateSet(2, {1})) == Actions{1});
    CHECK(good1(g, 1, S, none, S).empty());
    CHECK(bad2(g, 1, S, none).empty());
    CHECK(asp(g, S, none, S) == StateSet(2, {0}));
    CHECK(asp(g, none, none, none) == none);
    CHECK(asp(g, S, StateSet(2, {0}), S) == S);
    CHECK_THROWS_AS(bad2(g, 1, StateSet(2, {1}), StateSet(2, {0})), ContractViolation);
}

TEST_CASE("operator examples on Gn")
{
    for (unsigned n = 1; n <= 5; ++n) {
        GameStructure g = gen_gn(n);
        StateSet S = g.all_states();
        for (unsigned i = 1; i <= n; ++i) {
            StateSet Y(n + 1), Z(n + 1);
            for (unsigned j = 0; j < i; ++j) Y.insert(j);
            Z = Y;
            Z.insert(i);
            CHECK(bad2(g, i, S, Y) == Actions{0});
            CHECK(good1(g, i, S, Y, Z) == Actions{1});
        }
    }
}

TEST_CASE("operators on Gbar")
{
    // (a1,b2) and (a2,b1) both leave for v0, so neither action is safe in {v1, v}
    GameStructure g = gen_gbar();
    StateSet X(3, {1, 2});
    CHECK(allow1(g, 2, X).empty());
    CHECK(bad2(g, 2, X, StateSet(3, {1})).empty());
    StateSet S = g.all_states();
    CHECK(bad2(g, 2, S, StateSet(3, {1})) == Actions{0});
    CHECK(good1(g, 2, S, StateSet(3, {1}), StateSet(3, {1, 2})) == Actions{1});
}

TEST_CASE("paper examples: winning sets")
{
    for (unsigned n = 1; n <= 6; ++n) {
        GameStructure g = gen_gn(n);
        CHECK(almost_set_naive(g).winning == g.all_states());
        CHECK(almost_set_improved(g).winning == g.all_states());
        CHECK(positive_set(g).winning == g.all_states());
    }
    GameStructure gb = gen_gbar();
    SolveReport pb = positive_set(gb);
    CHECK(pb.winning == StateSet(3, {1, 2}));
    REQUIRE(pb.y_chain.size() == 2);
    CHECK(pb.y_chain[0] == StateSet(3, {1}));
    for (unsigned m = 2; m <= 5; ++m) {
        GameStructure g = gen_gm(m);
        CHECK(positive_set(g).winning.is_empty());
        CHECK(almost_set_naive(g).winning.is_empty());
        CHECK(almost_set_improved(g).levels[0] == 0);
    }
    GameStructure v = gen_pennies(true);
    CHECK(almost_set_naive(v).winning == v.all_states());
    // s0 reaches the rewarding sink with probability 1 under the uniform mix
    GameStructure c = gen_pennies(false);
    CHECK(almost_set_naive(c).winning == c.all_states());
    CHECK(almost_set_improved(c).winning == c.all_states());
}

TEST_CASE("all-zero rewards win nothing")
{
    GameData d = gen_gn(3).data();
    for (auto& row : d.moves) {
        for (auto& mv : row) mv.reward = 0;
    }
    GameStructure g(std::move(d));
    CHECK(almost_set_naive(g).winning.is_empty());
    CHECK(almost_set_improved(g).winning.is_empty());
    CHECK(positive_set(g).winning.is_empty());
}

TEST_CASE("levels match the naive chain")
{
    for (unsigned n = 1; n <= 6; ++n) {
        GameStructure g = gen_gn(n);
        SolveReport a = almost_set_naive(g);
        SolveReport b = almost_set_improved(g);
        const unsigned N = static_cast<unsigned>(g.num_states());
        for (StateId s = 0; s < N; ++s) CHECK(b.levels[s] == N + 1 - a.levels[s]);
        CHECK(chain_from_levels(g, b.levels) == a.y_chain);
    }
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        GameStructure g = random_game(seed);
        SolveReport a = almost_set_naive(g);
        SolveReport b = almost_set_improved(g);
        REQUIRE(a.winning == b.winning);
        const unsigned N = static_cast<unsigned>(g.num_states());
        for (StateId s : a.winning.members()) CHECK(b.levels[s] == N + 1 - a.levels[s]);
        CHECK(chain_from_levels(g, b.levels) == a.y_chain);
    }
}

TEST_CASE("fixpoint and inclusion properties")
{
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        GameStructure g = random_game(seed);
        SolveReport a = almost_set_naive(g);
        SolveReport p = positive_set(g);
        CHECK(a.winning.subset_of(p.winning));
        // X* is reproduced by one more outer evaluation
        StateSet Y = g.no_states();
        for (;;) {
            StateSet Z = a.winning;
            for (;;) {
                StateSet next = asp(g, a.winning, Y, Z) & a.winning;
                if (next == Z) break;
                Z = next;
            }
            if (Z == Y) break;
            Y = Z;
        }
        CHECK(Y == a.winning);
        for (std::size_t i = 1; i < a.y_chain.size(); ++i) {
            CHECK(a.y_chain[i - 1].subset_of(a.y_chain[i]));
            CHECK(a.y_chain[i - 1] != a.y_chain[i]);
        }
        for (std::size_t i = 1; i < a.x_chain.size(); ++i) CHECK(a.x_chain[i].subset_of(a.x_chain[i - 1]));
        CHECK(a.counters.outer_iterations <= g.num_states() + 1);
    }
}

TEST_CASE("operator monotonicity")
{
    Rng rng(7);
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        GameStructure g = random_game(seed, 5);
        const std::size_t n = g.num_states();
        for (int trial = 0; trial < 10; ++trial) {
            StateSet X2 = random_subset(rng, n, g.all_states());
            StateSet X1 = random_subset(rng, n, X2);
            StateSet Y2 = random_subset(rng, n, X1);
            StateSet Y1 = random_subset(rng, n, Y2);
            StateSet Z1 = Y2 | random_subset(rng, n, X1);
            StateSet Z2 = Z1 | random_subset(rng, n, X1);
            for (StateId s = 0; s < n; ++s) {
                auto a1 = allow1(g, s, X1), a2 = allow1(g, s, X2);
                CHECK(std::includes(a2.begin(), a2.end(), a1.begin(), a1.end()));
                auto b1 = bad2(g, s, X1, Y1), b2 = bad2(g, s, X1, Y2);
                CHECK(std::includes(b2.begin(), b2.end(), b1.begin(), b1.end()));
            }
            CHECK(asp(g, X1, Y2, Z1).subset_of(asp(g, X1, Y2, Z2)));
        }
    }
}

TEST_CASE("support-only dependence")
{
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        GameStructure g = random_game(seed);
        GameStructure h = reweighted(g, seed + 1000);
        CHECK(almost_set_naive(g).winning == almost_set_naive(h).winning);
        CHECK(almost_set_improved(g).winning == almost_set_improved(h).winning);
        CHECK(positive_set(g).winning == positive_set(h).winning);
    }
}

TEST_CASE("improved algorithm: order independence and counters")
{
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        GameStructure g = random_game(seed, 7);
        const std::size_t n = g.num_states();
        SolveReport base = almost_set_improved(g);
        std::vector<StateId> order(n);
        for (StateId s = 0; s < n; ++s) order[s] = s;
        Rng rng(seed);
        for (int k = 0; k < 3; ++k) {
            for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
            CHECK(almost_set_improved(g, order).levels == base.levels);
        }
        for (std::size_t c : base.counters.process_calls) CHECK(c <= 2 * n + 1);
        CHECK(base.counters.max_remove() <= n);
    }
}

TEST_CASE("report formatting is sorted")
{
    GameStructure g = gen_gn(2);
    std::string text = format_report(g, almost_set_naive(g));
    CHECK(text == "v0 level=1 in_winning=yes\nv1 level=2 in_winning=yes\nv2 level=3 in_winning=yes\n");
}
