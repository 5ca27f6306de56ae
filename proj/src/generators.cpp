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

#include "cmpg/generators.hpp"

#include "cmpg/errors.hpp"
#include "cmpg/random.hpp"

#include <numeric>

namespace cmpg {

namespace {

std::vector<std::string>
numbered(const std::string& prefix, unsigned count)
{
    std::vector<std::string> out;
    for (unsigned i = 1; i <= count; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

JointMove
dirac(StateId t, long reward)
{
    return JointMove{{{t, Rational(1)}}, Rational(reward)};
}

/// Adds a state with singleton action sets that moves to t with the given reward.
void
add_trivial(GameData& d, const std::string& name, StateId t, long reward)
{
    d.states.push_back(name);
    d.actions1.push_back({"a"});
    d.actions2.push_back({"b"});
    d.moves.push_back({dirac(t, reward)});
}

} // namespace

GameStructure
gen_gn(unsigned n)
{
    if (n < 1) throw ContractViolation("gen_gn needs n >= 1");
    GameData d;
    d.name = "G" + std::to_string(n);
    add_trivial(d, "v0", 0, 1);
    for (unsigned l = 1; l <= n; ++l) {
        d.states.push_back("v" + std::to_string(l));
        d.actions1.push_back({"a1", "a2"});
        d.actions2.push_back({"b1", "b2"});
        d.moves.push_back({
            dirac(l - 1, 0), // a1 b1
            dirac(n, 0),     // a1 b2
            dirac(n, 0),     // a2 b1
            dirac(l, 1),     // a2 b2
        });
    }
    return GameStructure(std::move(d));
}

GameStructure
gen_gbar()
{
    GameData d;
    d.name = "Gbar";
    add_trivial(d, "v0", 0, 0);
    add_trivial(d, "v1", 1, 1);
    d.states.push_back("v");
    d.actions1.push_back({"a1", "a2"});
    d.actions2.push_back({"b1", "b2"});
    d.moves.push_back({dirac(1, 0), dirac(0, 0), dirac(0, 0), dirac(2, 1)});
    return GameStructure(std::move(d));
}

GameStructure
gen_gm(unsigned m)
{
    if (m < 1) throw ContractViolation("gen_gm needs m >= 1");
    GameData d;
    d.name = "Gm" + std::to_string(m);
    d.states.push_back("v");
    d.actions1.push_back(numbered("a", m));
    d.actions2.push_back(numbered("b", m));
    d.moves.emplace_back();
    for (unsigned i = 0; i < m; ++i) {
        for (unsigned j = 0; j < m; ++j) d.moves[0].push_back(dirac(0, i == j ? 0 : 1));
    }
    return GameStructure(std::move(d));
}

GameStructure
gen_pennies(bool variant)
{
    GameData d;
    d.name = variant ? "pennies_variant" : "pennies";
    d.states = {"s0", "s1"};
    d.actions1 = {{"h", "t"}, {"a"}};
    d.actions2 = {{"h", "t"}, {"b"}};
    if (variant) {
        d.moves = {{dirac(0, 1), dirac(0, 0), dirac(0, 0), dirac(1, 1)}, {dirac(1, 1)}};
    } else {
        d.moves = {{dirac(1, 0), dirac(0, 0), dirac(0, 0), dirac(1, 0)}, {dirac(1, 1)}};
    }
    return GameStructure(std::move(d));
}

GameStructure
gen_random(const RandomGameParams& p)
{
    if (p.states < 1 || p.max_actions < 1 || p.branching < 1) throw ContractViolation("gen_random: parameters must be positive");
    Rng rng(p.seed);
    GameData d;
    d.name = "random_" + std::to_string(p.seed);
    const unsigned n = p.states;
    for (unsigned s = 0; s < n; ++s) d.states.push_back("s" + std::to_string(s));
    std::vector<StateId> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (unsigned s = 0; s < n; ++s) {
        unsigned k1 = static_cast<unsigned>(rng.between(1, p.max_actions));
        unsigned k2 = static_cast<unsigned>(rng.between(1, p.max_actions));
        d.actions1.push_back(numbered("a", k1));
        d.actions2.push_back(numbered("b", k2));
        std::vector<JointMove> moves;
        for (unsigned k = 0; k < k1 * k2; ++k) {
            unsigned width = static_cast<unsigned>(rng.between(1, std::min(p.branching, n)));
            // partial Fisher-Yates for distinct targets
            for (unsigned i = 0; i < width; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
            std::vector<long> weights(width);
            long total = 0;
            for (auto& w : weights) total += (w = static_cast<long>(rng.between(1, 4)));
            JointMove mv;
            for (unsigned i = 0; i < width; ++i) mv.distribution.push_back({pool[i], make_rational(weights[i], total)});
            mv.reward = rng.chance(p.reward_density) ? 1 : 0;
            moves.push_back(std::move(mv));
        }
        d.moves.push_back(std::move(moves));
    }
    return GameStructure(std::move(d));
}

GameStructure
gen_random_turn_based(unsigned states, unsigned max_actions, const Rational& reward_density, std::uint64_t seed)
{
    if (states < 1 || max_actions < 1) throw ContractViolation("gen_random_turn_based: parameters must be positive");
    Rng rng(seed);
    GameData d;
    d.name = "turn_based_" + std::to_string(seed);
    for (unsigned s = 0; s < states; ++s) d.states.push_back("s" + std::to_string(s));
    for (unsigned s = 0; s < states; ++s) {
        bool owner1 = rng.below(2) == 0;
        unsigned k = static_cast<unsigned>(rng.between(1, max_actions));
        d.actions1.push_back(owner1 ? numbered("a", k) : std::vector<std::string>{"a"});
        d.actions2.push_back(owner1 ? std::vector<std::string>{"b"} : numbered("b", k));
        std::vector<JointMove> moves;
        for (unsigned i = 0; i < k; ++i) {
            StateId t = static_cast<StateId>(rng.below(states));
            moves.push_back(dirac(t, rng.chance(reward_density) ? 1 : 0));
        }
        d.moves.push_back(std::move(moves));
    }
    return GameStructure(std::move(d));
}

Dmpg
gen_random_dmpg(unsigned nodes, unsigned max_out, long max_reward, std::uint64_t seed)
{
    if (nodes < 1 || max_out < 1 || max_reward < 0) throw ContractViolation("gen_random_dmpg: bad parameters");
    Rng rng(seed);
    std::vector<std::string> names;
    std::vector<Player> owners;
    std::vector<DmpgEdge> edges;
    for (unsigned v = 0; v < nodes; ++v) {
        names.push_back("u" + std::to_string(v));
        owners.push_back(rng.below(2) == 0 ? Player::One : Player::Two);
    }
    std::vector<NodeId> pool(nodes);
    std::iota(pool.begin(), pool.end(), 0);
    for (unsigned v = 0; v < nodes; ++v) {
        unsigned k = static_cast<unsigned>(rng.between(1, std::min(max_out, nodes)));
        for (unsigned i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(nodes - i)]);
        for (unsigned i = 0; i < k; ++i) {
            edges.push_back({v, pool[i], static_cast<long>(rng.below(static_cast<std::uint64_t>(max_reward) + 1))});
        }
    }
    bool positive = false;
    for (const auto& e : edges) positive = positive || e.reward > 0;
    if (!positive && max_reward >= 1) {
        edges[rng.below(edges.size())].reward = static_cast<long>(rng.between(1, static_cast<std::uint64_t>(max_reward)));
    }
    return Dmpg("random_" + std::to_string(seed), std::move(names), std::move(owners), std::move(edges));
}

} // namespace cmpg
