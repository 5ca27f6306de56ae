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

#include "cmpg/finite_memory.hpp"

#include "cmpg/errors.hpp"
#include "cmpg/generators.hpp"

#include <map>
#include <tuple>

namespace cmpg {

ProductChain
product_chain(const GameStructure& g, const FiniteMemoryStrategy& fm1, const FiniteMemoryStrategy& fm2, StateId start)
{
    validate_strategy(g, fm1);
    validate_strategy(g, fm2);
    if (fm1.player != Player::One || fm2.player != Player::Two) throw ContractViolation("product_chain needs one strategy per player");
    if (start >= g.num_states()) throw ContractViolation("start state out of range");

    ProductChain pc;
    std::map<std::tuple<StateId, std::size_t, std::size_t>, StateId> index;
    auto intern = [&](StateId s, std::size_t m1, std::size_t m2) {
        auto [it, fresh] = index.try_emplace({s, m1, m2}, static_cast<StateId>(pc.nodes.size()));
        if (fresh) pc.nodes.push_back({s, m1, m2});
        return it->second;
    };
    intern(start, fm1.initial, fm2.initial);
    for (std::size_t i = 0; i < pc.nodes.size(); ++i) {
        const ProductNode node = pc.nodes[i];
        const StateId s = node.state;
        const std::size_t k2 = g.num_actions(Player::Two, s);
        const auto& d1 = fm1.next_move[s][node.memory1];
        const auto& d2 = fm2.next_move[s][node.memory2];
        std::map<StateId, Rational> next;
        Rational reward = 0;
        for (ActionId a = 0; a < d1.size(); ++a) {
            if (d1[a] == 0) continue;
            for (ActionId b = 0; b < d2.size(); ++b) {
                if (d2[b] == 0) continue;
                Rational w = d1[a] * d2[b];
                const JointMove& mv = g.move(s, a, b);
                reward += w * mv.reward;
                std::size_t m1 = fm1.update[s][a * k2 + b][node.memory1];
                std::size_t m2 = fm2.update[s][a * k2 + b][node.memory2];
                for (const Outcome& o : mv.distribution) next[intern(o.target, m1, m2)] += w * o.probability;
            }
        }
        std::vector<Outcome> row;
        for (const auto& [t, p] : next) row.push_back({t, p});
        pc.chain.step.push_back(std::move(row));
        pc.chain.reward.push_back(reward);
    }
    return pc;
}

namespace {

bool
same_structure(const GameStructure& g, const GameStructure& ref)
{
    if (g.num_states() != ref.num_states()) return false;
    for (StateId s = 0; s < g.num_states(); ++s) {
        const std::size_t k1 = g.num_actions(Player::One, s), k2 = g.num_actions(Player::Two, s);
        if (k1 != ref.num_actions(Player::One, s) || k2 != ref.num_actions(Player::Two, s)) return false;
        for (ActionId a = 0; a < k1; ++a) {
            for (ActionId b = 0; b < k2; ++b) {
                const JointMove& x = g.move(s, a, b);
                const JointMove& y = ref.move(s, a, b);
                if (x.reward != y.reward || x.distribution.size() != y.distribution.size()) return false;
                for (std::size_t i = 0; i < x.distribution.size(); ++i) {
                    if (x.distribution[i].target != y.distribution[i].target ||
                        x.distribution[i].probability != y.distribution[i].probability) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

StateId
decision_state(WitnessGame w)
{
    return w == WitnessGame::G1 ? 1 : 2;
}

FiniteMemoryStrategy
trivial_automaton(const GameStructure& g, Player p, std::size_t memory)
{
    FiniteMemoryStrategy fm;
    fm.player = p;
    for (std::size_t m = 0; m < memory; ++m) fm.memory.push_back("m" + std::to_string(m));
    fm.next_move.resize(g.num_states());
    fm.update.resize(g.num_states());
    for (StateId s = 0; s < g.num_states(); ++s) {
        const std::size_t k = g.num_actions(p, s);
        ActionDistribution first(k, Rational(0));
        first[0] = 1;
        fm.next_move[s].assign(memory, first);
        std::vector<std::size_t> identity(memory);
        for (std::size_t m = 0; m < memory; ++m) identity[m] = m;
        fm.update[s].assign(g.num_actions(Player::One, s) * g.num_actions(Player::Two, s), identity);
    }
    return fm;
}

} // namespace

std::optional<WitnessGame>
detect_witness_game(const GameStructure& g)
{
    if (same_structure(g, gen_gn(1))) return WitnessGame::G1;
    if (same_structure(g, gen_gbar())) return WitnessGame::GBar;
    return std::nullopt;
}

SpoilResult
spoil_finite_memory(const GameStructure& g, const FiniteMemoryStrategy& fm)
{
    auto which = detect_witness_game(g);
    if (!which) throw ContractViolation("spoil_finite_memory works on the G1 and Gbar witness games only");
    if (fm.player != Player::One) throw ContractViolation("spoil_finite_memory needs a player-1 automaton");
    validate_strategy(g, fm);

    SpoilResult res;
    res.game = *which;
    const StateId v = decision_state(*which);
    const std::size_t memory = fm.memory.size();

    res.responder = trivial_automaton(g, Player::Two, memory);
    res.responder.memory = fm.memory;
    res.responder.initial = fm.initial;
    res.responder.update = fm.update;
    res.p = 1;
    for (std::size_t m = 0; m < memory; ++m) {
        const Rational& w1 = fm.next_move[v][m][0];
        ActionDistribution answer{Rational(0), Rational(0)};
        answer[w1 == 0 ? 0 : 1] = 1;
        res.responder.next_move[v][m] = answer;
        if (w1 > 0 && w1 < res.p) res.p = w1;
    }

    ProductChain pc = product_chain(g, fm, res.responder, v);
    ChainAnalysis a = mc_mean_payoff(pc.chain);

    VerificationEntry e;
    e.state = v;
    if (*which == WitnessGame::G1) {
        res.value = a.almost_sure[0];
        res.report.claim = "finite-memory-g1";
        res.report.threshold = 1 - res.p;
        e.pass = res.value <= res.report.threshold;
    } else {
        res.value = a.best_case[0];
        res.report.claim = "finite-memory-gbar";
        res.report.threshold = 1;
        e.pass = res.value < 1;
    }
    e.value = res.value;
    res.report.entries.push_back(e);
    return res;
}

void
for_each_finite_memory(const GameStructure& g, unsigned max_memory, const std::vector<Rational>& grid,
                       const std::function<void(const FiniteMemoryStrategy&)>& f)
{
    auto which = detect_witness_game(g);
    if (!which) throw ContractViolation("for_each_finite_memory works on the G1 and Gbar witness games only");
    for (const Rational& w : grid) {
        if (w < 0 || w > 1) throw ContractViolation("grid weights must lie in [0,1]");
    }
    const StateId v = decision_state(*which);
    const std::size_t k2 = 2;

    for (std::size_t memory = 1; memory <= max_memory; ++memory) {
        FiniteMemoryStrategy fm = trivial_automaton(g, Player::One, memory);
        // per memory state: grid index, then targets for its relevant joint moves
        std::vector<std::size_t> weight(memory, 0);
        std::vector<std::vector<std::size_t>> targets(memory);

        auto relevant = [&](std::size_t m) -> std::vector<std::size_t> {
            const Rational& w = grid[weight[m]];
            if (w == 0) return {1 * k2 + 0};            // a2 against b1
            if (w == 1) return {0 * k2 + 1};            // a1 against b2
            return {0 * k2 + 1, 1 * k2 + 1};            // a1, a2 against b2
        };
        auto load = [&]() {
            for (std::size_t m = 0; m < memory; ++m) {
                const Rational& w = grid[weight[m]];
                fm.next_move[v][m] = {w, 1 - w};
                for (std::size_t e = 0; e < 4; ++e) fm.update[v][e][m] = m;
                auto entries = relevant(m);
                for (std::size_t i = 0; i < entries.size(); ++i) fm.update[v][entries[i]][m] = targets[m][i];
            }
        };
        // odometer: the innermost digits are the update targets
        auto reset_targets = [&](std::size_t m) { targets[m].assign(relevant(m).size(), 0); };
        for (std::size_t m = 0; m < memory; ++m) reset_targets(m);

        for (;;) {
            load();
            f(fm);
            std::size_t m = 0;
            for (; m < memory; ++m) {
                bool carried = true;
                for (auto& t : targets[m]) {
                    if (++t < memory) {
                        carried = false;
                        break;
                    }
                    t = 0;
                }
                if (!carried) break;
                if (++weight[m] < grid.size()) {
                    reset_targets(m);
                    break;
                }
                weight[m] = 0;
                reset_targets(m);
            }
            if (m == memory) break;
        }
    }
}

} // namespace cmpg
