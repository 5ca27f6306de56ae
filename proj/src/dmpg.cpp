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

#include <map>
#include <set>
#include <sstream>

namespace cmpg {

namespace {

/// Edges taken from s until the first repeated node: a prefix followed by the cycle.
/// Returns the edge sequence and the position where the cycle starts.
std::pair<std::vector<std::size_t>, std::size_t>
lasso(const Dmpg& d, const EdgeChoice& choice, NodeId s)
{
    std::vector<std::size_t> seen(d.num_nodes(), SIZE_MAX);
    std::vector<std::size_t> path;
    NodeId v = s;
    while (seen[v] == SIZE_MAX) {
        seen[v] = path.size();
        path.push_back(choice[v]);
        v = d.edges()[choice[v]].target;
    }
    return {path, seen[v]};
}

/// Odometer over the out-edges of the given nodes. Returns false after the last one.
bool
advance(const Dmpg& d, const std::vector<NodeId>& nodes, std::vector<std::size_t>& pos, EdgeChoice& choice)
{
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& out = d.out_edges(nodes[i]);
        if (++pos[i] < out.size()) {
            choice[nodes[i]] = out[pos[i]];
            return true;
        }
        pos[i] = 0;
        choice[nodes[i]] = out[0];
    }
    return false;
}

std::uint64_t
pair_count(const Dmpg& d)
{
    std::uint64_t count = 1;
    for (NodeId v = 0; v < d.num_nodes(); ++v) {
        std::uint64_t k = d.out_edges(v).size();
        if (count > UINT64_MAX / k) return UINT64_MAX;
        count *= k;
    }
    return count;
}

/**
 * max over player-1 choices of min over player-2 choices of value(choice, s),
 * for every s at once.
 */
template <class F>
std::vector<Rational>
max_min(const Dmpg& d, std::uint64_t bound, F value)
{
    if (pair_count(d) > bound) throw BoundExceeded("more than " + std::to_string(bound) + " positional strategy pairs");
    std::vector<NodeId> mine, theirs;
    for (NodeId v = 0; v < d.num_nodes(); ++v) (d.owner(v) == Player::One ? mine : theirs).push_back(v);
    EdgeChoice choice(d.num_nodes());
    for (NodeId v = 0; v < d.num_nodes(); ++v) choice[v] = d.out_edges(v)[0];
    std::vector<std::size_t> pos1(mine.size(), 0), pos2(theirs.size(), 0);

    const std::size_t n = d.num_nodes();
    std::vector<Rational> best(n);
    bool first1 = true;
    do {
        std::vector<Rational> worst(n);
        bool first2 = true;
        do {
            for (NodeId s = 0; s < n; ++s) {
                Rational x = value(choice, s);
                if (first2 || x < worst[s]) worst[s] = x;
            }
            first2 = false;
        } while (advance(d, theirs, pos2, choice));
        for (NodeId s = 0; s < n; ++s) {
            if (first1 || worst[s] > best[s]) best[s] = worst[s];
        }
        first1 = false;
    } while (advance(d, mine, pos1, choice));
    return best;
}

std::string
fresh_name(const std::set<std::string>& taken, std::string name)
{
    while (taken.count(name)) name = "_" + name;
    return name;
}

} // namespace

Rational
lasso_value(const Dmpg& d, const EdgeChoice& choice, NodeId s)
{
    auto [path, start] = lasso(d, choice, s);
    Integer sum = 0;
    for (std::size_t i = start; i < path.size(); ++i) sum += d.edges()[path[i]].reward;
    Rational v(sum, Integer(static_cast<unsigned long>(path.size() - start)));
    v.canonicalize();
    return v;
}

std::vector<Rational>
dmpg_values_bruteforce(const Dmpg& d, std::uint64_t bound)
{
    return max_min(d, bound, [&](const EdgeChoice& c, NodeId s) { return lasso_value(d, c, s); });
}

Rational
dmpg_value_bruteforce(const Dmpg& d, NodeId s, std::uint64_t bound)
{
    if (s >= d.num_nodes()) throw ContractViolation("node out of range");
    return dmpg_values_bruteforce(d, bound)[s];
}

Reduction
reduce_dmpg(const Dmpg& d)
{
    const long M = d.max_reward();
    if (M < 1) throw ContractViolation("reduce_dmpg needs a positive edge reward");
    const std::size_t n = d.num_nodes();
    const auto& edges = d.edges();

    GameData data;
    data.name = d.name() + "_reduced";
    std::set<std::string> taken;
    for (NodeId v = 0; v < n; ++v) taken.insert(d.node_name(v));
    GadgetMap map;
    for (NodeId v = 0; v < n; ++v) {
        map.node_state.push_back(static_cast<StateId>(data.states.size()));
        data.states.push_back(d.node_name(v));
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
        std::array<StateId, 4> ids{};
        for (int k = 0; k < 4; ++k) {
            std::string name = fresh_name(taken, "e" + std::to_string(e) + "_v" + std::to_string(k + 1));
            taken.insert(name);
            ids[k] = static_cast<StateId>(data.states.size());
            data.states.push_back(name);
        }
        map.edge_states.push_back(ids);
    }
    data.actions1.resize(data.states.size(), {"a"});
    data.actions2.resize(data.states.size(), {"b"});
    data.moves.resize(data.states.size());
    map.edge_action.assign(edges.size(), 0);

    for (NodeId v = 0; v < n; ++v) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < d.out_edges(v).size(); ++i) {
            std::size_t e = d.out_edges(v)[i];
            names.push_back("e" + std::to_string(e));
            map.edge_action[e] = static_cast<ActionId>(i);
            data.moves[v].push_back(JointMove{{{map.edge_states[e][0], Rational(1)}}, Rational(0)});
        }
        (d.owner(v) == Player::One ? data.actions1 : data.actions2)[v] = names;
    }

    const Rational leave = make_rational(1, M);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto& [v1, v2, v3, v4] = map.edge_states[e];
        const StateId t = map.node_state[edges[e].target];
        const Rational up = make_rational(edges[e].reward, M);

        auto branch = [](std::initializer_list<Outcome> outs) {
            std::vector<Outcome> kept;
            for (const Outcome& o : outs) {
                if (o.probability != 0) kept.push_back(o);
            }
            return kept;
        };
        data.moves[v1] = {JointMove{branch({{v2, up}, {v3, 1 - up}}), Rational(0)}};
        data.moves[v2] = {JointMove{branch({{v4, 1 - leave}, {t, leave}}), Rational(1)}};
        data.moves[v3] = {JointMove{branch({{v4, 1 - leave}, {t, leave}}), Rational(0)}};
        data.moves[v4] = {JointMove{{{v1, Rational(1)}}, Rational(0)}};
    }
    for (auto& row : data.moves) {
        for (auto& mv : row) mv.reward.canonicalize();
    }
    return Reduction{GameStructure(std::move(data)), std::move(map), M};
}

std::string
format_gadget_map(const Dmpg& d, const Reduction& r)
{
    std::ostringstream out;
    const GameStructure& g = r.game;
    for (NodeId v = 0; v < d.num_nodes(); ++v) out << "node " << d.node_name(v) << " -> " << g.state_name(r.map.node_state[v]) << "\n";
    for (std::size_t e = 0; e < d.edges().size(); ++e) {
        const auto& ids = r.map.edge_states[e];
        out << "edge " << e << " -> v1=" << g.state_name(ids[0]) << " v2=" << g.state_name(ids[1]) << " v3=" << g.state_name(ids[2])
            << " v4=" << g.state_name(ids[3]) << "\n";
    }
    return out.str();
}

MarkovChain
transported_chain(const Dmpg& d, const Reduction& r, const EdgeChoice& choice)
{
    if (choice.size() != d.num_nodes()) throw ContractViolation("edge choice has the wrong size");
    const GameStructure& g = r.game;
    MarkovChain c;
    c.step.resize(g.num_states());
    c.reward.resize(g.num_states());
    for (StateId s = 0; s < g.num_states(); ++s) {
        ActionId a = 0, b = 0;
        if (s < d.num_nodes()) {
            std::size_t e = choice[s];
            if (d.edges()[e].source != s) throw ContractViolation("edge choice picks an edge of another node");
            (d.owner(s) == Player::One ? a : b) = r.map.edge_action[e];
        }
        const JointMove& mv = g.move(s, a, b);
        c.step[s] = mv.distribution;
        c.reward[s] = mv.reward;
    }
    return c;
}

Accumulation
gadget_expectation(const Dmpg& d, const Reduction& r, std::size_t edge)
{
    if (edge >= d.edges().size()) throw ContractViolation("edge out of range");
    EdgeChoice choice(d.num_nodes());
    for (NodeId v = 0; v < d.num_nodes(); ++v) choice[v] = d.out_edges(v)[0];
    const NodeId s = d.edges()[edge].source;
    choice[s] = edge;
    MarkovChain c = transported_chain(d, r, choice);
    std::vector<bool> target(c.size(), false);
    target[r.map.node_state[d.edges()[edge].target]] = true;
    // the first round moves from s into v1(e)
    Accumulation acc = expected_until(c, r.map.edge_states[edge][0], target);
    acc.reward += c.reward[r.map.node_state[s]];
    acc.steps += 1;
    return acc;
}

Rational
transported_value(const Dmpg& d, const Reduction& r, NodeId s, std::uint64_t bound)
{
    if (s >= d.num_nodes()) throw ContractViolation("node out of range");
    // The chain from a node only visits the gadgets along its lasso, so values
    // are cached per lasso edge sequence.
    std::map<std::vector<std::size_t>, Rational> memo;
    auto value = [&](const EdgeChoice& choice, NodeId start) {
        auto key = lasso(d, choice, start).first;
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        MarkovChain full = transported_chain(d, r, choice);
        // restrict to the part reachable from the start node
        std::vector<std::size_t> local(full.size(), SIZE_MAX);
        std::vector<StateId> order{r.map.node_state[start]};
        local[order[0]] = 0;
        for (std::size_t i = 0; i < order.size(); ++i) {
            for (const Outcome& o : full.step[order[i]]) {
                if (local[o.target] == SIZE_MAX) {
                    local[o.target] = order.size();
                    order.push_back(o.target);
                }
            }
        }
        MarkovChain sub;
        for (StateId x : order) {
            std::vector<Outcome> row;
            for (const Outcome& o : full.step[x]) row.push_back({static_cast<StateId>(local[o.target]), o.probability});
            sub.step.push_back(std::move(row));
            sub.reward.push_back(full.reward[x]);
        }
        Rational v = mc_mean_payoff(sub).almost_sure[0];
        memo.emplace(std::move(key), v);
        return v;
    };
    return max_min(d, bound, value)[s];
}

ReductionCheck
verify_reduction(const Dmpg& d, NodeId s, const Rational& lambda, std::uint64_t bound)
{
    Reduction r = reduce_dmpg(d);
    ReductionCheck out;
    out.value = dmpg_value_bruteforce(d, s, bound);
    out.transported = transported_value(d, r, s, bound);
    Rational scale(3 * r.M);
    out.scaled = out.transported == out.value / scale;
    out.iff = (out.value >= lambda) == (out.transported >= lambda / scale);
    return out;
}

} // namespace cmpg
