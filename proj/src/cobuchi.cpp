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

#include <deque>

namespace cmpg {

namespace {

struct Arena
{
    std::vector<Player> owner;
    std::vector<std::vector<std::size_t>> succ;
    std::vector<std::vector<std::size_t>> pred;
    std::vector<bool> marked;

    std::size_t size() const { return owner.size(); }
};

/// Vertices of `alive` from which p forces a visit to `target`.
std::vector<bool>
attractor(const Arena& ar, const std::vector<bool>& alive, const std::vector<bool>& target, Player p)
{
    const std::size_t n = ar.size();
    std::vector<bool> in(n, false);
    std::vector<std::size_t> count(n, 0);
    std::deque<std::size_t> queue;
    for (std::size_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        for (std::size_t w : ar.succ[v]) count[v] += alive[w];
        if (target[v]) {
            in[v] = true;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        std::size_t w = queue.front();
        queue.pop_front();
        for (std::size_t v : ar.pred[w]) {
            if (!alive[v] || in[v]) continue;
            if (ar.owner[v] == p || --count[v] == 0) {
                in[v] = true;
                queue.push_back(v);
            }
        }
    }
    return in;
}

} // namespace

StateSet
cobuchi_winning_set(const GameStructure& g)
{
    if (!g.is_turn_based() || !g.is_deterministic() || !g.is_boolean()) {
        throw ContractViolation("cobuchi_winning_set needs a turn-based deterministic boolean game");
    }
    const std::size_t n = g.num_states();
    Arena ar;
    ar.owner.resize(n, Player::One);
    ar.succ.resize(n);
    ar.marked.assign(n, false);
    for (StateId s = 0; s < n; ++s) {
        const std::size_t k1 = g.num_actions(Player::One, s), k2 = g.num_actions(Player::Two, s);
        ar.owner[s] = k2 > 1 ? Player::Two : Player::One;
        for (ActionId a = 0; a < k1; ++a) {
            for (ActionId b = 0; b < k2; ++b) {
                StateId t = g.succ(s, a, b)[0];
                if (g.pays_top(s, a, b)) {
                    ar.succ[s].push_back(t);
                } else {
                    std::size_t mid = ar.owner.size();
                    ar.owner.push_back(Player::One);
                    ar.succ.push_back({t});
                    ar.marked.push_back(true);
                    ar.succ[s].push_back(mid);
                }
            }
        }
    }
    ar.pred.resize(ar.size());
    for (std::size_t v = 0; v < ar.size(); ++v) {
        for (std::size_t w : ar.succ[v]) ar.pred[w].push_back(v);
    }

    // Büchi for player 2 on the marked vertices; player 1 collects what it escapes to.
    std::vector<bool> alive(ar.size(), true), won1(ar.size(), false);
    for (;;) {
        std::vector<bool> target(ar.size(), false);
        for (std::size_t v = 0; v < ar.size(); ++v) target[v] = alive[v] && ar.marked[v];
        auto reach = attractor(ar, alive, target, Player::Two);
        std::vector<bool> escape(ar.size(), false);
        bool any = false;
        for (std::size_t v = 0; v < ar.size(); ++v) {
            escape[v] = alive[v] && !reach[v];
            any = any || escape[v];
        }
        if (!any) break;
        auto lost = attractor(ar, alive, escape, Player::One);
        for (std::size_t v = 0; v < ar.size(); ++v) {
            if (lost[v]) {
                won1[v] = true;
                alive[v] = false;
            }
        }
    }
    StateSet out(n);
    for (StateId s = 0; s < n; ++s) {
        if (won1[s]) out.insert(s);
    }
    return out;
}

} // namespace cmpg
