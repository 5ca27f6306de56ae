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
#include "cmpg/io.hpp"
#include "cmpg/solver.hpp"
#include "cmpg/synthesis.hpp"

#include <doctest.h>

using namespace cmpg;

TEST_CASE("game text round-trips")
{
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        RandomGameParams p;
        p.states = 5;
        p.max_actions = 3;
        p.branching = 3;
        p.seed = seed;
        GameStructure g = gen_random(p);
        std::string text = serialize_game(g);
        GameStructure h = parse_game(text);
        CHECK(serialize_game(h) == text);
    }
    std::string g1 = serialize_game(gen_gn(1));
    GameStructure h = parse_game(g1);
    CHECK(h.num_states() == 2);
    CHECK(h.actions(Player::One, 1).size() == 2);
}

TEST_CASE("forward references and comments")
{
    const char* text = "game fwd   # comment\n"
                       "trans s a b r=1/2 -> t:1/3 s:2/3\n"
                       "trans t a b r=0 -> t:1\n"
                       "state s\nstate t\n"
                       "actions1 s a\nactions2 s b\nactions1 t a\nactions2 t b\n";
    GameStructure g = parse_game(text);
    CHECK(g.num_states() == 2);
    CHECK(g.reward(0, 0, 0) == make_rational(1, 2));
}

TEST_CASE("errors carry line numbers")
{
    const char* sum = "game x\nstate s\nactions1 s a\nactions2 s b\ntrans s a b r=1 -> s:5/6\n";
    try {
        parse_game(sum);
        FAIL("expected an error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("line 5") != std::string::npos);
        CHECK(std::string(e.what()).find("5/6") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_game("game x\nstate s\nbogus s\n"), ParseError);
    try {
        parse_game("game x\nstate s\nactions1 s a\nactions2 s b\ntrans s a b r=1 -> s:1/0\n");
        FAIL("expected an error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 5);
    }
    CHECK_THROWS(parse_game("game x\nstate s\nactions1 s a\nactions2 s b\n"));
}

TEST_CASE("dmpg text round-trips")
{
    Dmpg d = gen_random_dmpg(5, 3, 4, 3);
    std::string text = serialize_dmpg(d);
    CHECK(serialize_dmpg(parse_dmpg(text)) == text);
    Dmpg e = parse_dmpg("dmpg two\nnode x owner=1\nnode y owner=2\nedge x y r=1\nedge y x r=3\n");
    CHECK(e.num_nodes() == 2);
    CHECK(e.owner(1) == Player::Two);
    CHECK(e.max_reward() == 3);
}

TEST_CASE("strategy files round-trip")
{
    GameStructure g = gen_gn(2);
    SolveReport almost = almost_set_naive(g);
    StationaryStrategy sigma = synth_eps_stationary(g, almost, make_rational(1, 4));
    StrategyFile f = parse_strategy(g, serialize_strategy(g, sigma));
    CHECK(f.kind == StrategyFileKind::Stationary);
    CHECK(f.stationary.dist == sigma.dist);

    auto gp = std::make_shared<const GameStructure>(g);
    RoundIndexedStrategy markov = synth_markov_almost(gp, almost);
    std::string text = serialize_strategy(g, markov, 20);
    StrategyFile m = parse_strategy(g, text);
    REQUIRE(m.kind == StrategyFileKind::Markov);
    CHECK(m.markov.kind == MarkovKind::EpsilonHalvingAlmostSure);
    CHECK(m.markov.segments.size() >= 1);
    CHECK(m.markov.segments[0].strategy->dist == markov.at_round(1)->dist);

    FiniteMemoryStrategy fm = as_finite_memory(g, sigma);
    fm.memory.push_back("m1");
    for (auto& row : fm.next_move) row.push_back(row[0]);
    for (auto& per_state : fm.update) {
        for (auto& per_pair : per_state) per_pair.push_back(0);
    }
    validate_strategy(g, fm);
    StrategyFile h = parse_strategy(g, serialize_strategy(g, fm));
    REQUIRE(h.kind == StrategyFileKind::FiniteMemory);
    CHECK(h.finite.update == fm.update);
    CHECK(h.finite.next_move == fm.next_move);

    CHECK_THROWS(parse_strategy(g, "stationary player=1\nat v0: a=1\n"));
    CHECK_THROWS(parse_strategy(g, "markov player=1 kind=Nope\n"));
}
