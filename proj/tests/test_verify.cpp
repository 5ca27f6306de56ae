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

#include "cmpg/cobuchi.hpp"
#include "cmpg/errors.hpp"
#include "cmpg/finite_memory.hpp"
#include "cmpg/generators.hpp"
#include "cmpg/markov.hpp"
#include "cmpg/mdp.hpp"
#include "cmpg/random.hpp"
#include "cmpg/simulate.hpp"
#include "cmpg/solver.hpp"
#include "cmpg/synthesis.hpp"
#include "cmpg/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace cmpg;

namespace {

const Rational quarter = make_rational(1, 4);
const Rational half = make_rational(1, 2);

MarkovChain
random_chain(Rng& rng, std::size_t n)
{
    MarkovChain c;
    c.step.resize(n);
    c.reward.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
        c.reward[s] = make_rational(static_cast<long>(rng.below(3)), 2);
        std::size_t width = 1 + rng.below(std::min<std::size_t>(2, n));
        std::vector<StateId> targets;
        while (targets.size() < width) {
            StateId t = static_cast<StateId>(rng.below(n));
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
        }
        std::sort(targets.begin(), targets.end());
        long total = 0;
        std::vector<long> w;
        for (std::size_t i = 0; i < width; ++i) total += w.emplace_back(static_cast<long>(1 + rng.below(3)));
        for (std::size_t i = 0; i < width; ++i) c.step[s].push_back({targets[i], make_rational(w[i], total)});
    }
    return c;
}

Mdp
random_mdp(Rng& rng, std::size_t n)
{
    Mdp m;
    m.choices.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t k = 1 + rng.below(3);
        for (std::size_t a = 0; a < k; ++a) {
            MarkovChain one = random_chain(rng, n);
            m.choices[s].push_back({one.step[s], one.reward[s]});
        }
    }
    return m;
}

/// Cesaro average of P^t r in floating point, an independent estimate of the gain.
std::vector<double>
cesaro(const MarkovChain& c, int horizon)
{
    const std::size_t n = c.size();
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t s = 0; s < n; ++s) dist[s][s] = 1.0;
    std::vector<double> acc(n, 0.0);
    for (int t = 0; t < horizon; ++t) {
        for (std::size_t s = 0; s < n; ++s) {
            for (std::size_t u = 0; u < n; ++u) acc[s] += dist[s][u] * c.reward[u].get_d();
            std::vector<double> next(n, 0.0);
            for (std::size_t u = 0; u < n; ++u) {
                if (dist[s][u] == 0.0) continue;
                for (const Outcome& o : c.step[u]) next[o.target] += dist[s][u] * o.probability.get_d();
            }
            dist[s] = std::move(next);
        }
    }
    for (double& a : acc) a /= horizon;
    return acc;
}

StationaryStrategy
g1_strategy(const Rational& w1)
{
    StationaryStrategy s = uniform_strategy(gen_gn(1), Player::One);
    s.dist[1] = {w1, 1 - w1};
    return s;
}

FiniteMemoryStrategy
one_state_fm(const GameStructure& g, ActionDistribution at_decision, StateId decision)
{
    StationaryStrategy s = uniform_strategy(g, Player::One);
    s.dist[decision] = std::move(at_decision);
    return as_finite_memory(g, s);
}

} // namespace

TEST_CASE("linear solve")
{
    Matrix A = {{Rational(2), Rational(1)}, {Rational(1), Rational(3)}};
    std::vector<Rational> x = solve_linear(A, std::vector<Rational>{Rational(3), Rational(5)});
    CHECK(x[0] == make_rational(4, 5));
    CHECK(x[1] == make_rational(7, 5));
    CHECK_THROWS_AS(solve_linear(Matrix{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}, std::vector<Rational>{Rational(1), Rational(1)}),
                    ConsistencyError);
}

TEST_CASE("Markov chain examples")
{
    MarkovChain loop{{{{0, Rational(1)}}}, {Rational(1)}};
    ChainAnalysis a = mc_mean_payoff(loop);
    CHECK(a.expected[0] == 1);
    CHECK(a.almost_sure[0] == 1);

    MarkovChain split{{{{1, half}, {2, half}}, {{1, Rational(1)}}, {{2, Rational(1)}}}, {Rational(0), Rational(0), Rational(1)}};
    ChainAnalysis b = mc_mean_payoff(split);
    CHECK(b.expected[0] == half);
    CHECK(b.almost_sure[0] == 0);
    CHECK(b.best_case[0] == 1);
    CHECK(b.classes.size() == 2);
    CHECK(b.class_of[0] == -1);

    MarkovChain cycle{{{{1, Rational(1)}}, {{0, Rational(1)}}}, {Rational(0), Rational(1)}};
    CHECK(mc_mean_payoff(cycle).expected == std::vector<Rational>{half, half});

    Accumulation acc = expected_until(split, 0, {false, true, true});
    CHECK(acc.steps == 1);
    CHECK(acc.reward == 0);
    CHECK_THROWS_AS(expected_until(split, 0, {false, false, true}), ContractViolation);
}

TEST_CASE("Markov chain gains agree with Cesaro averages")
{
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        MarkovChain c = random_chain(rng, 2 + rng.below(5));
        ChainAnalysis a = mc_mean_payoff(c);
        std::vector<double> est = cesaro(c, 4000);
        for (std::size_t s = 0; s < c.size(); ++s) {
            CHECK(std::abs(a.expected[s].get_d() - est[s]) < 0.01);
            CHECK(a.almost_sure[s] <= a.expected[s]);
            CHECK(a.expected[s] <= a.best_case[s]);
            Rational total = 0;
            for (const Rational& p : a.absorption[s]) total += p;
            CHECK(total == 1);
        }
    }
}

TEST_CASE("Markov chain analysis is invariant under relabelling")
{
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + rng.below(5);
        MarkovChain c = random_chain(rng, n);
        std::vector<StateId> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<StateId>(i);
        for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        MarkovChain d;
        d.step.resize(n);
        d.reward.resize(n);
        for (std::size_t s = 0; s < n; ++s) {
            d.reward[perm[s]] = c.reward[s];
            for (const Outcome& o : c.step[s]) d.step[perm[s]].push_back({perm[o.target], o.probability});
            std::sort(d.step[perm[s]].begin(), d.step[perm[s]].end(), [](const Outcome& x, const Outcome& y) { return x.target < y.target; });
        }
        ChainAnalysis a = mc_mean_payoff(c), b = mc_mean_payoff(d);
        for (std::size_t s = 0; s < n; ++s) {
            CHECK(a.expected[s] == b.expected[perm[s]]);
            CHECK(a.almost_sure[s] == b.almost_sure[perm[s]]);
        }
    }
}

TEST_CASE("fixing a strategy yields the opponent's MDP")
{
    GameStructure g = gen_gn(1);
    Mdp m = fix_strategy(g, uniform_strategy(g, Player::One));
    CHECK(m.controller == Player::Two);
    REQUIRE(m.choices[1].size() == 2);
    CHECK(m.choices[1][1].reward == half);
    REQUIRE(m.choices[1][1].next.size() == 1);
    CHECK(m.choices[1][1].next[0].target == 1);
    CHECK(m.choices[1][1].next[0].probability == 1);
    CHECK(m.choices[1][0].next.size() == 2);
}

TEST_CASE("MDP values")
{
    Mdp single;
    single.choices = {{MdpChoice{{{0, Rational(1)}}, Rational(1)}}};
    CHECK(mdp_min_mean_payoff(single) == std::vector<Rational>{Rational(1)});

    Mdp cycle;
    cycle.choices = {{MdpChoice{{{1, Rational(1)}}, Rational(0)}}, {MdpChoice{{{0, Rational(1)}}, Rational(1)}}};
    CHECK(mdp_max_mean_payoff(cycle) == std::vector<Rational>{half, half});

    GameStructure g = gen_gn(1);
    Mdp m = fix_strategy(g, uniform_strategy(g, Player::One));
    MdpSolution lo = mdp_mean_payoff(m, Objective::Minimize);
    CHECK(lo.value[1] == half);
    CHECK(lo.policy[1] == 1);
    CHECK(mdp_max_mean_payoff(m)[1] == 1);
}

TEST_CASE("policy iteration agrees with enumeration")
{
    Rng rng(2026);
    MdpOptions pi, en, both;
    pi.method = MdpMethod::PolicyIteration;
    en.method = MdpMethod::Enumerate;
    both.method = MdpMethod::Both;
    for (int trial = 0; trial < 150; ++trial) {
        Mdp m = random_mdp(rng, 1 + rng.below(6));
        for (Objective obj : {Objective::Minimize, Objective::Maximize}) {
            MdpSolution a = mdp_mean_payoff(m, obj, pi);
            MdpSolution b = mdp_mean_payoff(m, obj, en);
            CHECK(a.value == b.value);
            CHECK_FALSE(a.enumerated);
            CHECK(b.enumerated);
            CHECK_NOTHROW(mdp_mean_payoff(m, obj, both));
            // the returned policy attains the value
            ChainAnalysis ca = mc_mean_payoff(fix_policy(m, a.policy));
            CHECK(ca.expected == a.value);
        }
    }
}

TEST_CASE("reachable part of an MDP")
{
    Mdp m;
    m.choices = {{MdpChoice{{{1, Rational(1)}}, Rational(0)}}, {MdpChoice{{{1, Rational(1)}}, Rational(1)}},
                 {MdpChoice{{{0, Rational(1)}}, Rational(0)}}};
    SubMdp sub = reachable_part(m, StateSet(3, {0}));
    CHECK(sub.states == std::vector<StateId>{0, 1});
    CHECK(sub.local[2] == SIZE_MAX);
    CHECK(mdp_min_mean_payoff(sub.mdp) == std::vector<Rational>{Rational(1), Rational(1)});
}

TEST_CASE("eps claims")
{
    GameStructure g = gen_gn(1);
    SolveReport rep = almost_set_naive(g);
    VerificationReport ok = verify_eps_claim(g, synth_eps_stationary(g, rep, quarter), g.all_states(), quarter);
    CHECK(ok.passed());
    CHECK(ok.find(1)->value == make_rational(3, 4));
    CHECK(ok.claim == "eps-as");

    VerificationReport bad = verify_eps_claim(g, uniform_strategy(g, Player::One), g.all_states(), quarter);
    CHECK_FALSE(bad.passed());
    CHECK(bad.find(1)->value == half);
    REQUIRE(bad.witness);
    CHECK((*bad.witness)[1] == ActionId(1));
    std::string text = format_report(g, bad);
    CHECK(text.find("v1 value=1/2 pass=no") != std::string::npos);
    CHECK(text.find("witness player=2") != std::string::npos);

    // a1 can leave {v1}
    VerificationReport unsafe = verify_eps_claim(g, g1_strategy(quarter), StateSet(2, {1}), quarter);
    CHECK_FALSE(unsafe.passed());
    CHECK_FALSE(unsafe.find(1)->safe);
}

TEST_CASE("stationary spoiler claims")
{
    GameStructure g = gen_gm(2);
    StationaryStrategy u = uniform_strategy(g, Player::Two);
    VerificationReport r = verify_spoiler_stationary(g, u, g.all_states(), half);
    CHECK(r.passed());
    CHECK(r.find(0)->value == half);

    GameStructure g3 = gen_gm(3);
    StationaryStrategy thin = uniform_strategy(g3, Player::Two);
    thin.dist[0] = {half, half, Rational(0)};
    CHECK_FALSE(verify_spoiler_stationary(g3, thin, g3.all_states(), spoiler_gap(g3)).passed());

    GameStructure gb = gen_gbar();
    SolveReport pos = positive_set(gb);
    VerificationReport rb = verify_spoiler_stationary(gb, synth_positive_spoiler_stationary(gb, pos), gb.all_states() - pos.winning,
                                                      spoiler_gap(gb));
    CHECK(rb.passed());
    CHECK(rb.find(0)->value == 0);
}

TEST_CASE("patience floor")
{
    CHECK(below_patience_floor(Rational(2), 1, quarter));
    CHECK_FALSE(below_patience_floor(Rational(4), 1, quarter));
    CHECK(below_patience_floor(Rational(7), 2, quarter)); // 7^2 < 4^3
    CHECK_FALSE(below_patience_floor(Rational(8), 2, quarter));

    CHECK(patience_floor_check(1, quarter, g1_strategy(half)));
    CHECK_FALSE(verify_eps_claim(gen_gn(1), g1_strategy(half), gen_gn(1).all_states(), quarter).passed());
    GameStructure g2 = gen_gn(2);
    StationaryStrategy sigma = synth_eps_stationary(g2, almost_set_naive(g2), quarter);
    CHECK_FALSE(below_patience_floor(patience(sigma), 2, quarter));
    CHECK(patience_floor_check(2, quarter, sigma));
    // never playing a1 somewhere fails outright
    StationaryStrategy greedy = uniform_strategy(g2, Player::One);
    greedy.dist[1] = {Rational(0), Rational(1)};
    greedy.dist[2] = {Rational(0), Rational(1)};
    CHECK_FALSE(verify_eps_claim(g2, greedy, g2.all_states(), quarter).passed());
    CHECK(patience_floor_check(2, quarter, greedy));
}

TEST_CASE("finite-memory spoiling examples")
{
    GameStructure g = gen_gn(1);
    SpoilResult mixed = spoil_finite_memory(g, one_state_fm(g, {half, half}, 1));
    CHECK(mixed.game == WitnessGame::G1);
    CHECK(mixed.p == half);
    CHECK(mixed.value <= half);
    CHECK(mixed.report.passed());
    CHECK(mixed.responder.next_move[1][0] == ActionDistribution{Rational(0), Rational(1)});

    SpoilResult pure = spoil_finite_memory(g, one_state_fm(g, {Rational(0), Rational(1)}, 1));
    CHECK(pure.value == 0);
    CHECK(pure.responder.next_move[1][0] == ActionDistribution{Rational(1), Rational(0)});

    GameStructure gb = gen_gbar();
    std::size_t count = 0;
    for_each_finite_memory(gb, 2, {Rational(0), half, Rational(1)}, [&](const FiniteMemoryStrategy& fm) {
        ++count;
        SpoilResult r = spoil_finite_memory(gb, fm);
        CHECK(r.game == WitnessGame::GBar);
        CHECK(r.value < 1);
    });
    CHECK(count > 10);
    CHECK_THROWS(spoil_finite_memory(gen_gm(2), as_finite_memory(gen_gm(2), uniform_strategy(gen_gm(2), Player::One))));
}

TEST_CASE("coBuchi oracle agrees with the positive set")
{
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        GameStructure g = gen_random_turn_based(7, 3, half, seed);
        CHECK(cobuchi_winning_set(g) == positive_set(g).winning);
    }
    CHECK_THROWS_AS(cobuchi_winning_set(gen_gn(2)), ContractViolation);
}

TEST_CASE("simulation is seed-deterministic")
{
    GameStructure g = gen_gn(1);
    StationaryStrategy sigma = synth_eps_stationary(g, almost_set_naive(g), quarter);
    StationaryStrategy u = uniform_strategy(g, Player::Two);
    SimulationStats a = simulate(g, sigma, u, 1, 5000, 9);
    SimulationStats b = simulate(g, sigma, u, 1, 5000, 9);
    CHECK(a.total_reward == b.total_reward);
    CHECK(a.visits == b.visits);
    CHECK(a.checkpoints.size() == 4);
    CHECK(a.checkpoints.back().first == 5000);
    CHECK(a.visits[0] + a.visits[1] == 5000);
    CHECK_THROWS(simulate(g, u, u, 1, 10, 1));

    // v0 is absorbing with reward 1
    SimulationStats c = simulate(g, sigma, u, 0, 100, 3);
    CHECK(c.final_average == 1);
}

TEST_CASE("fixed gap is too strong without choices")
{
    // a 2-cycle paying 1 then 0, no choices: outside Y*, yet the average is 1/2
    GameData d;
    d.name = "cycle";
    d.states = {"s0", "s1"};
    d.actions1 = {{"a"}, {"a"}};
    d.actions2 = {{"b"}, {"b"}};
    d.moves = {{JointMove{{{1, Rational(1)}}, Rational(1)}}, {JointMove{{{0, Rational(1)}}, Rational(0)}}};
    GameStructure g(std::move(d));
    SolveReport pos = positive_set(g);
    CHECK(pos.winning.is_empty());
    StationaryStrategy sp = synth_positive_spoiler_stationary(g, pos);
    CHECK(spoiler_gap(g) == 1);
    VerificationReport at_c = verify_spoiler_stationary(g, sp, g.all_states(), spoiler_gap(g));
    CHECK_FALSE(at_c.passed());
    CHECK(at_c.find(0)->value == half);
    CHECK(verify_spoiler_stationary(g, sp, g.all_states(), spoiler_gap(g) / 2).passed());
}
