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

#include "cmpg/dmpg.hpp"
#include "cmpg/errors.hpp"
#include "cmpg/generators.hpp"
#include "cmpg/markov.hpp"
#include "cmpg/random.hpp"

#include <doctest.h>

#include <map>

using namespace cmpg;

namespace {

Dmpg
self_loop(long r)
{
    return Dmpg("loop", {"x"}, {Player::One}, {{0, 0, r}});
}

Dmpg
two_cycle()
{
    return Dmpg("cycle", {"x", "y"}, {Player::One, Player::Two}, {{0, 1, 1}, {1, 0, 3}});
}

/// Walk the choice from s until a node repeats; mean of the closed cycle.
Rational
walk_mean(const Dmpg& d, const EdgeChoice& choice, NodeId s)
{
    std::map<NodeId, std::size_t> seen;
    std::vector<long> rewards;
    NodeId v = s;
    while (!seen.count(v)) {
        seen[v] = rewards.size();
        const DmpgEdge& e = d.edges()[choice[v]];
        rewards.push_back(e.reward);
        v = e.target;
    }
    long sum = 0;
    for (std::size_t i = seen[v]; i < rewards.size(); ++i) sum += rewards[i];
    return make_rational(sum, static_cast<long>(rewards.size() - seen[v]));
}

Rational
outcome(const GameStructure& g, StateId from, StateId to)
{
    for (const Outcome& o : g.move(from, 0, 0).distribution) {
        if (o.target == to) return o.probability;
    }
    return Rational(0);
}

} // namespace

TEST_CASE("brute-force values")
{
    CHECK(dmpg_value_bruteforce(self_loop(5), 0) == 5);
    CHECK(dmpg_value_bruteforce(two_cycle(), 0) == 2);
    Dmpg choose("choose", {"x", "y"}, {Player::One, Player::One}, {{0, 0, 0}, {0, 1, 0}, {1, 1, 3}});
    CHECK(dmpg_value_bruteforce(choose, 0) == 3);
    // player 2 picks the worse cycle
    Dmpg spoil("spoil", {"x", "y"}, {Player::Two, Player::One}, {{0, 0, 1}, {0, 1, 0}, {1, 1, 3}});
    CHECK(dmpg_value_bruteforce(spoil, 0) == 1);
    CHECK_THROWS_AS(dmpg_values_bruteforce(gen_random_dmpg(6, 3, 4, 1), 1), BoundExceeded);
}

TEST_CASE("gadget probabilities")
{
    Dmpg d("g", {"x", "y"}, {Player::One, Player::Two}, {{0, 1, 2}, {1, 0, 0}, {1, 1, 3}});
    Reduction r = reduce_dmpg(d);
    REQUIRE(r.M == 3);
    const GameStructure& g = r.game;
    auto e0 = r.map.edge_states[0];
    CHECK(outcome(g, e0[0], e0[1]) == make_rational(2, 3));
    CHECK(outcome(g, e0[0], e0[2]) == make_rational(1, 3));
    for (int k : {1, 2}) {
        CHECK(outcome(g, e0[k], e0[3]) == make_rational(2, 3));
        CHECK(outcome(g, e0[k], r.map.node_state[1]) == make_rational(1, 3));
    }
    CHECK(g.reward(e0[1], 0, 0) == 1);
    CHECK(g.reward(e0[2], 0, 0) == 0);
    CHECK(outcome(g, e0[3], e0[0]) == 1);
    // r = 0 and r = M drop the empty branch
    auto e1 = r.map.edge_states[1];
    CHECK(g.move(e1[0], 0, 0).distribution.size() == 1);
    CHECK(outcome(g, e1[0], e1[2]) == 1);
    auto e2 = r.map.edge_states[2];
    CHECK(outcome(g, e2[0], e2[1]) == 1);
    CHECK(g.is_boolean());
    // the owner picks the edge
    CHECK(g.num_actions(Player::One, r.map.node_state[0]) == 1);
    CHECK(g.num_actions(Player::Two, r.map.node_state[1]) == 2);
    CHECK(g.num_actions(Player::One, r.map.node_state[1]) == 1);

    std::string map = format_gadget_map(d, r);
    CHECK(map.find("node x -> x") != std::string::npos);
    CHECK(map.find("edge 0 -> v1=e0_v1 v2=e0_v2 v3=e0_v3 v4=e0_v4") != std::string::npos);
}

TEST_CASE("gadget expectations")
{
    Rng rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        long M = static_cast<long>(rng.between(1, 5));
        long r = static_cast<long>(rng.between(0, static_cast<std::uint64_t>(M)));
        Dmpg d("e", {"x", "y"}, {Player::One, Player::One}, {{0, 1, r}, {1, 1, M}});
        Reduction red = reduce_dmpg(d);
        Accumulation acc = gadget_expectation(d, red, 0);
        CHECK(acc.reward == r);
        CHECK(acc.steps == 3 * M);
    }
}

TEST_CASE("transported values")
{
    Dmpg loop = self_loop(2);
    Reduction r1 = reduce_dmpg(loop);
    CHECK(r1.M == 2);
    CHECK(transported_value(loop, r1, 0) == make_rational(1, 3));
    ChainAnalysis a = mc_mean_payoff(transported_chain(loop, r1, {0}));
    CHECK(a.almost_sure[r1.map.node_state[0]] == make_rational(1, 3));

    Dmpg cyc = two_cycle();
    Reduction r2 = reduce_dmpg(cyc);
    CHECK(transported_value(cyc, r2, 0) == make_rational(2, 9));
    CHECK(transported_value(cyc, r2, 1) == make_rational(2, 9));
}

TEST_CASE("every positional pair transports its lasso mean")
{
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        Dmpg d = gen_random_dmpg(4, 2, 4, seed);
        Reduction r = reduce_dmpg(d);
        const Rational scale(3 * r.M);
        EdgeChoice choice(d.num_nodes());
        for (NodeId v = 0; v < d.num_nodes(); ++v) choice[v] = d.out_edges(v)[0];
        for (;;) {
            ChainAnalysis a = mc_mean_payoff(transported_chain(d, r, choice));
            for (NodeId v = 0; v < d.num_nodes(); ++v) {
                Rational mean = walk_mean(d, choice, v);
                CHECK(lasso_value(d, choice, v) == mean);
                CHECK(a.almost_sure[r.map.node_state[v]] == mean / scale);
                CHECK(a.expected[r.map.node_state[v]] == mean / scale);
            }
            NodeId v = 0;
            for (; v < d.num_nodes(); ++v) {
                const auto& out = d.out_edges(v);
                auto it = std::find(out.begin(), out.end(), choice[v]);
                if (++it != out.end()) {
                    choice[v] = *it;
                    break;
                }
                choice[v] = out[0];
            }
            if (v == d.num_nodes()) break;
        }
    }
}

TEST_CASE("reduction iff across a lambda sweep")
{
    Dmpg cyc = two_cycle();
    for (long num = 0; num <= 16; ++num) {
        Rational lambda = make_rational(num, 4);
        ReductionCheck c = verify_reduction(cyc, 0, lambda);
        CHECK(c.scaled);
        CHECK(c.iff);
        CHECK(c.value == 2);
    }
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        Dmpg d = gen_random_dmpg(5, 3, 4, seed);
        ReductionCheck c = verify_reduction(d, 0, make_rational(3, 2));
        CHECK(c.scaled);
        CHECK(c.iff);
    }
}
