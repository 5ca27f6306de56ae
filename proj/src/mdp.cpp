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

#include "cmpg/mdp.hpp"

#include "cmpg/errors.hpp"

#include <algorithm>
#include <map>

namespace cmpg {

namespace {

std::vector<Outcome>
flatten(const std::map<StateId, Rational>& next)
{
    std::vector<Outcome> out;
    for (const auto& [t, p] : next) {
        if (p != 0) out.push_back({t, p});
    }
    return out;
}

Rational
expect(const std::vector<Outcome>& next, const std::vector<Rational>& v)
{
    Rational sum = 0;
    for (const Outcome& o : next) sum += o.probability * v[o.target];
    return sum;
}

} // namespace

void
validate_mdp(const Mdp& m)
{
    for (const auto& row : m.choices) {
        if (row.empty()) throw ContractViolation("MDP state without choices");
        for (const MdpChoice& c : row) {
            Rational sum = 0;
            for (const Outcome& o : c.next) {
                if (o.target >= m.size() || o.probability <= 0) throw ContractViolation("malformed MDP choice");
                sum += o.probability;
            }
            if (sum != 1) throw ContractViolation("MDP choice sums to " + to_string(sum));
        }
    }
}

Mdp
fix_strategy(const GameStructure& g, const StationaryStrategy& sigma)
{
    validate_strategy(g, sigma);
    Mdp m;
    m.controller = opponent(sigma.player);
    m.choices.resize(g.num_states());
    for (StateId s = 0; s < g.num_states(); ++s) {
        const std::size_t free = g.num_actions(m.controller, s);
        const std::size_t fixed = g.num_actions(sigma.player, s);
        for (ActionId x = 0; x < free; ++x) {
            std::map<StateId, Rational> next;
            Rational reward = 0;
            for (ActionId y = 0; y < fixed; ++y) {
                const Rational& w = sigma.dist[s][y];
                if (w == 0) continue;
                const JointMove& mv = sigma.player == Player::One ? g.move(s, y, x) : g.move(s, x, y);
                reward += w * mv.reward;
                for (const Outcome& o : mv.distribution) next[o.target] += w * o.probability;
            }
            m.choices[s].push_back({flatten(next), reward});
        }
    }
    return m;
}

MarkovChain
fix_policy(const Mdp& m, const std::vector<ActionId>& policy)
{
    if (policy.size() != m.size()) throw ContractViolation("policy has the wrong size");
    MarkovChain c;
    c.step.resize(m.size());
    c.reward.resize(m.size());
    for (StateId s = 0; s < m.size(); ++s) {
        if (policy[s] >= m.choices[s].size()) throw ContractViolation("policy picks a missing choice");
        c.step[s] = m.choices[s][policy[s]].next;
        c.reward[s] = m.choices[s][policy[s]].reward;
    }
    return c;
}

MarkovChain
fix_mixture(const Mdp& m, const StationaryStrategy& sigma)
{
    if (sigma.dist.size() != m.size()) throw ContractViolation("strategy has the wrong size");
    MarkovChain c;
    c.step.resize(m.size());
    c.reward.resize(m.size());
    for (StateId s = 0; s < m.size(); ++s) {
        if (sigma.dist[s].size() != m.choices[s].size()) throw ContractViolation("strategy row has the wrong width");
        std::map<StateId, Rational> next;
        Rational reward = 0;
        for (std::size_t x = 0; x < m.choices[s].size(); ++x) {
            const Rational& w = sigma.dist[s][x];
            if (w == 0) continue;
            reward += w * m.choices[s][x].reward;
            for (const Outcome& o : m.choices[s][x].next) next[o.target] += w * o.probability;
        }
        c.step[s] = flatten(next);
        c.reward[s] = reward;
    }
    return c;
}

SubMdp
reachable_part(const Mdp& m, const StateSet& from)
{
    SubMdp sub;
    sub.local.assign(m.size(), SIZE_MAX);
    std::vector<bool> seen(m.size(), false);
    std::vector<StateId> stack = from.members();
    for (StateId s : stack) seen[s] = true;
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        for (const MdpChoice& c : m.choices[s]) {
            for (const Outcome& o : c.next) {
                if (!seen[o.target]) {
                    seen[o.target] = true;
                    stack.push_back(o.target);
                }
            }
        }
    }
    for (StateId s = 0; s < m.size(); ++s) {
        if (!seen[s]) continue;
        sub.local[s] = sub.states.size();
        sub.states.push_back(s);
    }
    sub.mdp.controller = m.controller;
    for (StateId s : sub.states) {
        std::vector<MdpChoice> row;
        for (const MdpChoice& c : m.choices[s]) {
            MdpChoice local{{}, c.reward};
            for (const Outcome& o : c.next) local.next.push_back({static_cast<StateId>(sub.local[o.target]), o.probability});
            std::sort(local.next.begin(), local.next.end(),
                      [](const Outcome& x, const Outcome& y) { return x.target < y.target; });
            row.push_back(std::move(local));
        }
        sub.mdp.choices.push_back(std::move(row));
    }
    return sub;
}

std::uint64_t
policy_count(const Mdp& m)
{
    std::uint64_t count = 1;
    for (const auto& row : m.choices) {
        if (count > UINT64_MAX / row.size()) return UINT64_MAX;
        count *= row.size();
    }
    return count;
}

namespace {

bool
better(Objective obj, const Rational& x, const Rational& y)
{
    return obj == Objective::Maximize ? x > y : x < y;
}

MdpSolution
enumerate_policies(const Mdp& m, Objective obj)
{
    const std::size_t n = m.size();
    MdpSolution sol;
    sol.enumerated = true;
    std::vector<ActionId> policy(n, 0);
    bool first = true;

    auto advance = [&]() {
        for (std::size_t s = 0; s < n; ++s) {
            if (++policy[s] < m.choices[s].size()) return true;
            policy[s] = 0;
        }
        return false;
    };

    do {
        auto values = mc_mean_payoff(fix_policy(m, policy)).expected;
        ++sol.iterations;
        if (first) {
            sol.value = values;
            first = false;
            continue;
        }
        for (std::size_t s = 0; s < n; ++s) {
            if (better(obj, values[s], sol.value[s])) sol.value[s] = values[s];
        }
    } while (advance());

    // some positional policy attains the optimum everywhere at once
    std::fill(policy.begin(), policy.end(), 0);
    do {
        if (mc_mean_payoff(fix_policy(m, policy)).expected == sol.value) {
            sol.policy = policy;
            return sol;
        }
    } while (advance());
    throw ConsistencyError("no positional policy is optimal at every state");
}

/// Bias h with g + h = r + P h and zero stationary mean on each class.
std::vector<Rational>
bias(const MarkovChain& c, const ChainAnalysis& a)
{
    const std::size_t n = c.size();
    std::vector<Rational> h(n, Rational(0));
    for (std::size_t k = 0; k < a.classes.size(); ++k) {
        const auto& cls = a.classes[k];
        const std::size_t size = cls.size();
        std::vector<std::size_t> pos(n, SIZE_MAX);
        for (std::size_t i = 0; i < size; ++i) pos[cls[i]] = i;
        Matrix A(size, std::vector<Rational>(size, Rational(0)));
        std::vector<Rational> rhs(size);
        for (std::size_t i = 0; i + 1 < size; ++i) {
            A[i][i] += 1;
            for (const Outcome& o : c.step[cls[i]]) A[i][pos[o.target]] -= o.probability;
            rhs[i] = c.reward[cls[i]] - a.class_gain[k];
        }
        for (std::size_t i = 0; i < size; ++i) A[size - 1][i] = a.stationary[k][i];
        rhs[size - 1] = 0;
        auto x = solve_linear(std::move(A), rhs);
        for (std::size_t i = 0; i < size; ++i) h[cls[i]] = x[i];
    }
    std::vector<StateId> transient;
    std::vector<std::size_t> tpos(n, SIZE_MAX);
    for (StateId s = 0; s < n; ++s) {
        if (a.class_of[s] < 0) {
            tpos[s] = transient.size();
            transient.push_back(s);
        }
    }
    if (transient.empty()) return h;
    const std::size_t t = transient.size();
    Matrix A(t, std::vector<Rational>(t, Rational(0)));
    std::vector<Rational> rhs(t);
    for (std::size_t i = 0; i < t; ++i) {
        StateId s = transient[i];
        A[i][i] += 1;
        rhs[i] = c.reward[s] - a.expected[s];
        for (const Outcome& o : c.step[s]) {
            if (tpos[o.target] != SIZE_MAX) {
                A[i][tpos[o.target]] -= o.probability;
            } else {
                rhs[i] += o.probability * h[o.target];
            }
        }
    }
    auto x = solve_linear(std::move(A), rhs);
    for (std::size_t i = 0; i < t; ++i) h[transient[i]] = x[i];
    return h;
}

/// Two-phase multichain policy iteration (gain step, then bias step among
/// gain-optimal choices), maximizing.
MdpSolution
policy_iteration_max(const Mdp& m, std::size_t cap)
{
    const std::size_t n = m.size();
    MdpSolution sol;
    std::vector<ActionId> policy(n, 0);
    for (StateId s = 0; s < n; ++s) {
        for (ActionId x = 1; x < m.choices[s].size(); ++x) {
            if (m.choices[s][x].reward > m.choices[s][policy[s]].reward) policy[s] = x;
        }
    }
    for (;;) {
        if (++sol.iterations > cap) throw ConsistencyError("policy iteration did not converge");
        MarkovChain c = fix_policy(m, policy);
        ChainAnalysis a = mc_mean_payoff(c);
        const auto& g = a.expected;

        bool changed = false;
        for (StateId s = 0; s < n; ++s) {
            Rational best = expect(m.choices[s][policy[s]].next, g);
            for (ActionId x = 0; x < m.choices[s].size(); ++x) {
                Rational v = expect(m.choices[s][x].next, g);
                if (v > best) {
                    best = v;
                    policy[s] = x;
                    changed = true;
                }
            }
        }
        if (changed) continue;

        auto h = bias(c, a);
        for (StateId s = 0; s < n; ++s) {
            const MdpChoice& cur = m.choices[s][policy[s]];
            Rational best = cur.reward + expect(cur.next, h);
            for (ActionId x = 0; x < m.choices[s].size(); ++x) {
                const MdpChoice& ch = m.choices[s][x];
                if (expect(ch.next, g) != g[s]) continue;
                Rational v = ch.reward + expect(ch.next, h);
                if (v > best) {
                    best = v;
                    policy[s] = x;
                    changed = true;
                }
            }
        }
        if (!changed) {
            sol.value = g;
            sol.policy = policy;
            return sol;
        }
    }
}

MdpSolution
policy_iteration(const Mdp& m, Objective obj, std::size_t cap)
{
    if (obj == Objective::Maximize) return policy_iteration_max(m, cap);
    Mdp neg = m;
    for (auto& row : neg.choices) {
        for (auto& c : row) c.reward = -c.reward;
    }
    MdpSolution sol = policy_iteration_max(neg, cap);
    for (auto& v : sol.value) v = -v;
    return sol;
}

} // namespace

MdpSolution
mdp_mean_payoff(const Mdp& m, Objective obj, const MdpOptions& opts)
{
    validate_mdp(m);
    if (m.size() == 0) return {};
    const std::uint64_t count = policy_count(m);
    switch (opts.method) {
    case MdpMethod::Enumerate:
        return enumerate_policies(m, obj);
    case MdpMethod::PolicyIteration:
        return policy_iteration(m, obj, opts.iteration_cap);
    case MdpMethod::Auto:
        if (count <= opts.enumeration_bound) return enumerate_policies(m, obj);
        return policy_iteration(m, obj, opts.iteration_cap);
    case MdpMethod::Both:
        break;
    }
    MdpSolution pi = policy_iteration(m, obj, opts.iteration_cap);
    if (count <= opts.enumeration_bound) {
        MdpSolution en = enumerate_policies(m, obj);
        if (en.value != pi.value) throw ConsistencyError("policy iteration and enumeration disagree");
    }
    return pi;
}

std::vector<Rational>
mdp_min_mean_payoff(const Mdp& m, const MdpOptions& opts)
{
    return mdp_mean_payoff(m, Objective::Minimize, opts).value;
}

std::vector<Rational>
mdp_max_mean_payoff(const Mdp& m, const MdpOptions& opts)
{
    return mdp_mean_payoff(m, Objective::Maximize, opts).value;
}

} // namespace cmpg
