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
#include "cmpg/solver.hpp"
#include "cmpg/synthesis.hpp"

#include <doctest.h>

using namespace cmpg;

namespace {

const Rational quarter = make_rational(1, 4);

GameStructure
absorbing()
{
    GameData d;
    d.name = "abs";
    d.states = {"s"};
    d.actions1 = {{"a"}};
    d.actions2 = {{"b"}};
    d.moves = {{JointMove{{{0, Rational(1)}}, Rational(1)}}};
    return GameStructure(std::move(d));
}

/// Exact T-step minimizing value iteration, no rounding.
Rational
exact_worst_total(const GameStructure& g, const StationaryStrategy& sigma, const StateSet& X, std::uint64_t T)
{
    std::vector<Rational> V(g.num_states(), Rational(0));
    for (std::uint64_t t = 0; t < T; ++t) {
        std::vector<Rational> W(g.num_states(), Rational(0));
        for (StateId s : X.members()) {
            bool first = true;
            for (ActionId b = 0; b < g.num_actions(Player::Two, s); ++b) {
                Rational v = 0;
                for (ActionId a = 0; a < g.num_actions(Player::One, s); ++a) {
                    const Rational& w = sigma.dist[s][a];
                    if (w == 0) continue;
                    v += w * g.reward(s, a, b);
                    for (const Outcome& o : g.move(s, a, b).distribution) v += w * o.probability * V[o.target];
                }
                if (first || v < W[s]) W[s] = v;
                first = false;
            }
        }
        V = std::move(W);
    }
    Rational worst = V[X.members().front()];
    for (StateId s : X.members()) worst = std::min(worst, V[s]);
    return worst;
}

} // namespace

TEST_CASE("beta values")
{
    CHECK(beta(2, 2, 2, Rational(1), quarter) == make_rational(1, 512));
    CHECK(beta(2, 2, 2, Rational(1), Rational(1)) == make_rational(1, 8));
    for (unsigned j = 2; j < 4; ++j) CHECK(beta(j + 1, 2, 2, Rational(1), make_rational(1, 3)) < beta(j, 2, 2, Rational(1), make_rational(1, 3)));
    CHECK_THROWS_AS(beta(1, 2, 2, Rational(1), quarter), ContractViolation);
}

TEST_CASE("eps-stationary strategy on G1")
{
    GameStructure g = gen_gn(1);
    StationaryStrategy sigma = synth_eps_stationary(g, almost_set_naive(g), quarter);
    CHECK(sigma.dist[0] == ActionDistribution{Rational(1)});
    CHECK(sigma.dist[1] == ActionDistribution{quarter, make_rational(3, 4)});
    CHECK(patience(sigma) == 4);
    CHECK_THROWS_AS(synth_eps_stationary(g, almost_set_naive(g), Rational(1)), ContractViolation);
}

TEST_CASE("eps-stationary strategy on deeper Gn")
{
    GameStructure g = gen_gn(3);
    const Rational eps = make_rational(1, 8);
    StationaryStrategy sigma = synth_eps_stationary(g, almost_set_naive(g), eps);
    CHECK(sigma.dist[3][1] == 1 - eps);
    // inner layers use beta_{k+1}
    CHECK(sigma.dist[2][0] == beta(2, 4, 2, Rational(1), eps));
    CHECK(sigma.dist[1][0] == beta(3, 4, 2, Rational(1), eps));
    CHECK(patience_within_bound(patience(sigma), 4, 2, Rational(1), eps));
}

TEST_CASE("patience bound comparison")
{
    CHECK(patience_within_bound(Rational(8), 1, 2, Rational(1), quarter)); // 8^1
    CHECK_FALSE(patience_within_bound(Rational(9), 1, 2, Rational(1), quarter));
    CHECK(patience_within_bound(pow(Rational(10), 19), 2, 2, Rational(1), quarter)); // 16^16
    CHECK_FALSE(patience_within_bound(pow(Rational(10), 20), 2, 2, Rational(1), quarter));
}

TEST_CASE("horizons")
{
    GameStructure a = absorbing();
    StationaryStrategy u = uniform_strategy(a, Player::One);
    CHECK(compute_horizon(a, u, a.all_states(), quarter) == 1);
    CHECK(compute_horizon(a, u, a.all_states(), make_rational(1, 1000)) == 1);

    GameStructure g = gen_gn(1);
    SolveReport rep = almost_set_naive(g);
    std::uint64_t prev = 0;
    for (unsigned i = 0; i < 4; ++i) {
        Rational eps = quarter / pow(Rational(2), i);
        StationaryStrategy sigma = synth_eps_stationary(g, rep, eps);
        std::uint64_t J = compute_horizon(g, sigma, rep.winning, eps);
        CHECK(J >= prev);
        prev = J;
        CHECK(exact_worst_total(g, sigma, rep.winning, J) / Rational(static_cast<long>(J)) >= 1 - 2 * eps);
    }
    // monotone in eps for a fixed strategy
    StationaryStrategy sigma = synth_eps_stationary(g, rep, make_rational(1, 16));
    CHECK(compute_horizon(g, sigma, rep.winning, make_rational(1, 8)) <= compute_horizon(g, sigma, rep.winning, make_rational(1, 16)));

    HorizonOptions tight;
    tight.cap = 3;
    CHECK_THROWS_AS(compute_horizon(g, sigma, rep.winning, make_rational(1, 16), tight), HorizonExceeded);
}

TEST_CASE("Markov almost-sure schedule on G1")
{
    auto g = std::make_shared<const GameStructure>(gen_gn(1));
    SolveReport rep = almost_set_naive(*g);
    RoundIndexedStrategy m = synth_markov_almost(g, rep);
    CHECK(m.kind() == MarkovKind::EpsilonHalvingAlmostSure);
    Segment first = m.segment(0);
    CHECK(first.strategy->dist == synth_eps_stationary(*g, rep, quarter).dist);
    CHECK(first.length == compute_horizon(*g, *first.strategy, rep.winning, quarter));
    Rational eps = quarter;
    std::uint64_t start = 1;
    for (std::size_t i = 0; i < 5; ++i) {
        Segment s = m.segment(i);
        CHECK(s.strategy->dist[1][1] == 1 - eps);
        CHECK(m.at_round(start)->dist == s.strategy->dist);
        CHECK(m.at_round(start + s.length - 1)->dist == s.strategy->dist);
        start += s.length;
        eps /= 2;
    }
    CHECK(RoundIndexedStrategy::memory_for(1234) == 1234);
}

TEST_CASE("spoiler strategies")
{
    GameStructure g2 = gen_gm(2);
    CHECK(spoiler_gap(g2) == make_rational(1, 2));
    auto gp = std::make_shared<const GameStructure>(gen_gm(3));
    SolveReport almost = almost_set_naive(*gp);
    RoundIndexedStrategy sp = synth_spoiler_markov(gp, almost);
    for (std::uint64_t r = 1; r <= 4; ++r) CHECK(sp.at_round(r)->dist[0] == ActionDistribution(3, make_rational(1, 3)));

    SolveReport pos = positive_set(*gp);
    StationaryStrategy st = synth_positive_spoiler_stationary(*gp, pos);
    CHECK(st.dist[0] == ActionDistribution(3, make_rational(1, 3)));
    CHECK(patience(st) <= 3);

    GameStructure gb = gen_gbar();
    StationaryStrategy sb = synth_positive_spoiler_stationary(gb, positive_set(gb));
    CHECK(sb.dist[0] == ActionDistribution{Rational(1)});

    CHECK_THROWS_AS(synth_spoiler_markov(std::make_shared<const GameStructure>(gen_gn(2)), almost_set_naive(gen_gn(2))),
                    ContractViolation);
}

TEST_CASE("spoiler coin on a nested chain")
{
    // find a fuzzed game whose outer chain has an inner layer
    bool found = false;
    for (std::uint64_t seed = 1; seed <= 400 && !found; ++seed) {
        RandomGameParams p;
        p.states = 6;
        p.max_actions = 3;
        p.branching = 2;
        p.seed = seed;
        GameStructure g = gen_random(p);
        SolveReport rep = almost_set_naive(g);
        if (rep.x_chain.size() < 3) continue;
        for (StateId s : (rep.x_chain[1] - rep.x_chain[2]).members()) {
            auto bad = bad2(g, s, rep.x_chain[1], rep.x_chain[2]);
            if (bad.empty()) continue;
            const std::size_t k2 = g.num_actions(Player::Two, s);
            StationaryStrategy r3 = spoiler_round(g, rep, make_rational(1, 2), 3);
            CHECK(r3.dist[s][bad[0]] == make_rational(1, 16) / Rational(static_cast<long>(k2)));
            found = true;
            break;
        }
    }
    CHECK(found);
}

TEST_CASE("positive Markov strategy")
{
    GameStructure gb = gen_gbar();
    SolveReport pos = positive_set(gb);
    const StateSet S = gb.all_states();
    // a2 is the good action at v: a1 against b2 leaves for v0
    CHECK(good1(gb, 2, S, pos.y_chain[0], pos.y_chain[1]) == std::vector<ActionId>{1});
    auto gp = std::make_shared<const GameStructure>(gb);
    RoundIndexedStrategy pm = synth_positive_markov(gp, pos);
    CHECK(pm.round_mode());
    CHECK(pm.at_round(1)->dist[2] == ActionDistribution{quarter, make_rational(3, 4)});
    for (std::uint64_t k = 1; k < 6; ++k) CHECK(pm.at_round(k + 1)->dist[2][0] * 2 == pm.at_round(k)->dist[2][0]);
    CHECK_THROWS_AS(synth_positive_markov(std::make_shared<const GameStructure>(gen_gm(2)), positive_set(gen_gm(2))),
                    ContractViolation);
}
