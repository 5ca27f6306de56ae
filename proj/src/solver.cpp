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

#include "cmpg/solver.hpp"

#include "cmpg/errors.hpp"

#include <algorithm>
#include <sstream>

namespace cmpg {

namespace {

bool
subset(std::span<const StateId> succ, const StateSet& X)
{
    for (StateId t : succ) {
        if (!X.contains(t)) return false;
    }
    return true;
}

bool
meets(std::span<const StateId> succ, const StateSet& Y)
{
    for (StateId t : succ) {
        if (Y.contains(t)) return true;
    }
    return false;
}

std::vector<bool>
allow_mask(const GameStructure& g, StateId s, const StateSet& X)
{
    const std::size_t k1 = g.num_actions(Player::One, s), k2 = g.num_actions(Player::Two, s);
    std::vector<bool> mask(k1, true);
    for (ActionId a = 0; a < k1; ++a) {
        for (ActionId b = 0; b < k2 && mask[a]; ++b) mask[a] = subset(g.succ(s, a, b), X);
    }
    return mask;
}

std::vector<bool>
bad_mask(const GameStructure& g, StateId s, const std::vector<bool>& allow, const StateSet& Y)
{
    const std::size_t k1 = g.num_actions(Player::One, s), k2 = g.num_actions(Player::Two, s);
    std::vector<bool> mask(k2, false);
    for (ActionId b = 0; b < k2; ++b) {
        for (ActionId a = 0; a < k1 && !mask[b]; ++a) mask[b] = allow[a] && meets(g.succ(s, a, b), Y);
    }
    return mask;
}

bool
is_good(const GameStructure& g, StateId s, ActionId a, const std::vector<bool>& bad, const StateSet& Z)
{
    const std::size_t k2 = g.num_actions(Player::Two, s);
    for (ActionId b = 0; b < k2; ++b) {
        if (bad[b]) continue;
        if (!g.pays_top(s, a, b) || !subset(g.succ(s, a, b), Z)) return false;
    }
    return true;
}

std::vector<ActionId>
indices(const std::vector<bool>& mask)
{
    std::vector<ActionId> out;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) out.push_back(static_cast<ActionId>(i));
    }
    return out;
}

void
require_subset(const StateSet& A, const StateSet& B, const char* what)
{
    if (!A.subset_of(B)) throw ContractViolation(std::string("predecessor operator: ") + what);
}

/// Operator state for a fixed X: allow masks are computed once.
struct FixedX
{
    const GameStructure& g;
    const StateSet& X;
    std::vector<std::vector<bool>> allow;

    FixedX(const GameStructure& game, const StateSet& x) : g(game), X(x)
    {
        for (StateId s = 0; s < g.num_states(); ++s) allow.push_back(allow_mask(g, s, X));
    }

    /// νZ. ASP(X,Y,Z), iterated downwards from Z = X (intersected with X).
    StateSet nu(const StateSet& Y, SolveCounters& c, std::size_t& rounds) const
    {
        std::vector<std::vector<bool>> bad;
        for (StateId s = 0; s < g.num_states(); ++s) bad.push_back(bad_mask(g, s, allow[s], Y));
        StateSet Z = X;
        rounds = 0;
        for (;;) {
            ++rounds;
            ++c.nu_iterations;
            StateSet next(g.num_states());
            for (StateId s : Z.members()) {
                for (ActionId a = 0; a < allow[s].size(); ++a) {
                    if (allow[s][a] && is_good(g, s, a, bad[s], Z)) {
                        next.insert(s);
                        break;
                    }
                }
            }
            if (next == Z) return Z;
            Z = std::move(next);
        }
    }

    /// μY. νZ. ASP(X,Y,Z) with its chain of distinct iterates.
    StateSet mu(SolveCounters& c, std::vector<StateSet>& chain) const
    {
        chain.clear();
        StateSet Y(g.num_states());
        std::size_t rounds = 0;
        for (;;) {
            ++c.mu_iterations;
            ++rounds;
            std::size_t nu_rounds = 0;
            StateSet next = nu(Y, c, nu_rounds);
            c.max_nu_per_mu = std::max(c.max_nu_per_mu, nu_rounds);
            if (next == Y) break;
            chain.push_back(next);
            Y = std::move(next);
        }
        c.max_mu_per_outer = std::max(c.max_mu_per_outer, rounds);
        return Y;
    }
};

std::vector<unsigned>
levels_from_chain(std::size_t n, const std::vector<StateSet>& chain)
{
    std::vector<unsigned> levels(n, 0);
    for (std::size_t i = chain.size(); i-- > 0;) {
        for (StateId s : chain[i].members()) levels[s] = static_cast<unsigned>(i + 1);
    }
    return levels;
}

} // namespace

std::vector<ActionId>
allow1(const GameStructure& g, StateId s, const StateSet& X)
{
    return indices(allow_mask(g, s, X));
}

std::vector<ActionId>
bad2(const GameStructure& g, StateId s, const StateSet& X, const StateSet& Y)
{
    require_subset(Y, X, "Bad2 needs Y ⊆ X");
    return indices(bad_mask(g, s, allow_mask(g, s, X), Y));
}

std::vector<ActionId>
good1(const GameStructure& g, StateId s, const StateSet& X, const StateSet& Y, const StateSet& Z)
{
    require_subset(Y, Z, "Good1 needs Y ⊆ Z");
    require_subset(Z, X, "Good1 needs Z ⊆ X");
    auto allow = allow_mask(g, s, X);
    auto bad = bad_mask(g, s, allow, Y);
    std::vector<ActionId> out;
    for (ActionId a = 0; a < allow.size(); ++a) {
        if (allow[a] && is_good(g, s, a, bad, Z)) out.push_back(a);
    }
    return out;
}

StateSet
asp(const GameStructure& g, const StateSet& X, const StateSet& Y, const StateSet& Z)
{
    require_subset(Y, Z, "ASP needs Y ⊆ Z");
    require_subset(Z, X, "ASP needs Z ⊆ X");
    StateSet out(g.num_states());
    for (StateId s = 0; s < g.num_states(); ++s) {
        auto allow = allow_mask(g, s, X);
        auto bad = bad_mask(g, s, allow, Y);
        for (ActionId a = 0; a < allow.size(); ++a) {
            if (allow[a] && is_good(g, s, a, bad, Z)) {
                out.insert(s);
                break;
            }
        }
    }
    return out;
}

std::size_t
SolveCounters::total_process() const
{
    std::size_t t = 0;
    for (auto c : process_calls) t += c;
    return t;
}

std::size_t
SolveCounters::total_remove() const
{
    std::size_t t = 0;
    for (const auto& row : remove_calls) {
        for (auto c : row) t += c;
    }
    return t;
}

std::size_t
SolveCounters::max_remove() const
{
    std::size_t m = 0;
    for (const auto& row : remove_calls) {
        for (auto c : row) m = std::max(m, c);
    }
    return m;
}

SolveReport
almost_set_naive(const GameStructure& g)
{
    SolveReport r;
    r.algorithm = Algorithm::Naive;
    StateSet X = g.all_states();
    r.x_chain.push_back(X);
    std::vector<StateSet> chain;
    for (;;) {
        ++r.counters.outer_iterations;
        FixedX op(g, X);
        StateSet next = op.mu(r.counters, chain);
        if (next == X) break;
        if (!next.subset_of(X)) throw ConsistencyError("outer fixpoint iteration is not decreasing");
        r.x_chain.push_back(next);
        X = std::move(next);
    }
    r.winning = X;
    r.y_chain = std::move(chain);
    r.levels = levels_from_chain(g.num_states(), r.y_chain);
    return r;
}

SolveReport
positive_set(const GameStructure& g)
{
    SolveReport r;
    r.algorithm = Algorithm::Naive;
    StateSet S = g.all_states();
    ++r.counters.outer_iterations;
    FixedX op(g, S);
    r.winning = op.mu(r.counters, r.y_chain);
    r.levels = levels_from_chain(g.num_states(), r.y_chain);
    return r;
}

std::vector<StateSet>
chain_from_levels(const GameStructure& g, const std::vector<unsigned>& levels)
{
    const std::size_t n = g.num_states();
    std::vector<StateSet> chain;
    for (std::size_t i = 1; i <= n; ++i) {
        StateSet Y(n);
        for (StateId s = 0; s < n; ++s) {
            if (levels[s] > 0 && levels[s] + i >= n + 1) Y.insert(s);
        }
        if (Y.is_empty() || (!chain.empty() && chain.back() == Y)) continue;
        chain.push_back(std::move(Y));
    }
    return chain;
}

std::string
format_report(const GameStructure& g, const SolveReport& r)
{
    std::ostringstream out;
    for (StateId s = 0; s < g.num_states(); ++s) {
        out << g.state_name(s) << " level=" << r.levels[s] << " in_winning=" << (r.winning.contains(s) ? "yes" : "no") << "\n";
    }
    return out.str();
}

} // namespace cmpg
