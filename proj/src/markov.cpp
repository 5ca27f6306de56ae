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

#include "cmpg/markov.hpp"

#include "cmpg/errors.hpp"

#include <algorithm>
#include <functional>

namespace cmpg {

Matrix
solve_linear(Matrix A, Matrix B)
{
    const std::size_t n = A.size();
    if (B.size() != n) throw ContractViolation("solve_linear: dimension mismatch");
    const std::size_t k = n == 0 ? 0 : B[0].size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && A[pivot][col] == 0) ++pivot;
        if (pivot == n) throw ConsistencyError("singular linear system");
        std::swap(A[pivot], A[col]);
        std::swap(B[pivot], B[col]);
        Rational inv = 1 / A[col][col];
        for (std::size_t j = col; j < n; ++j) A[col][j] *= inv;
        for (std::size_t j = 0; j < k; ++j) B[col][j] *= inv;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || A[row][col] == 0) continue;
            Rational f = A[row][col];
            for (std::size_t j = col; j < n; ++j) {
                if (A[col][j] != 0) A[row][j] -= f * A[col][j];
            }
            for (std::size_t j = 0; j < k; ++j) {
                if (B[col][j] != 0) B[row][j] -= f * B[col][j];
            }
        }
    }
    return B;
}

std::vector<Rational>
solve_linear(Matrix A, const std::vector<Rational>& b)
{
    Matrix B(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) B[i] = {b[i]};
    Matrix X = solve_linear(std::move(A), std::move(B));
    std::vector<Rational> x(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) x[i] = X[i][0];
    return x;
}

std::vector<std::vector<std::size_t>>
strongly_connected(const std::vector<std::vector<std::size_t>>& adj)
{
    const std::size_t n = adj.size();
    std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> out;
    std::size_t counter = 0;

    // iterative Tarjan: frames of (node, next edge position)
    std::vector<std::pair<std::size_t, std::size_t>> frames;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != SIZE_MAX) continue;
        frames.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& [v, pos] = frames.back();
            if (pos < adj[v].size()) {
                std::size_t w = adj[v][pos++];
                if (index[w] == SIZE_MAX) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::vector<std::size_t> comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                out.push_back(std::move(comp));
            }
            std::size_t done = v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
        }
    }
    return out;
}

void
validate_chain(const MarkovChain& c)
{
    if (c.reward.size() != c.step.size()) throw ContractViolation("chain reward vector has the wrong size");
    for (const auto& row : c.step) {
        Rational sum = 0;
        for (const Outcome& o : row) {
            if (o.target >= c.size() || o.probability <= 0) throw ContractViolation("malformed chain row");
            sum += o.probability;
        }
        if (sum != 1) throw ContractViolation("chain row sums to " + to_string(sum));
    }
}

namespace {

std::vector<std::vector<std::size_t>>
adjacency(const MarkovChain& c)
{
    std::vector<std::vector<std::size_t>> adj(c.size());
    for (std::size_t s = 0; s < c.size(); ++s) {
        for (const Outcome& o : c.step[s]) adj[s].push_back(o.target);
    }
    return adj;
}

} // namespace

ChainAnalysis
mc_mean_payoff(const MarkovChain& c)
{
    validate_chain(c);
    const std::size_t n = c.size();
    ChainAnalysis a;
    a.class_of.assign(n, -1);

    auto comps = strongly_connected(adjacency(c));
    std::vector<int> comp_of(n);
    for (std::size_t i = 0; i < comps.size(); ++i) {
        for (std::size_t s : comps[i]) comp_of[s] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < comps.size(); ++i) {
        bool closed = true;
        for (std::size_t s : comps[i]) {
            for (const Outcome& o : c.step[s]) closed = closed && comp_of[o.target] == static_cast<int>(i);
        }
        if (!closed) continue;
        std::vector<StateId> members(comps[i].begin(), comps[i].end());
        a.classes.push_back(members);
    }
    std::sort(a.classes.begin(), a.classes.end());
    for (std::size_t k = 0; k < a.classes.size(); ++k) {
        for (StateId s : a.classes[k]) a.class_of[s] = static_cast<int>(k);
    }

    // stationary distributions: pi (P - I) = 0, sum pi = 1
    for (const auto& cls : a.classes) {
        const std::size_t k = cls.size();
        std::vector<std::size_t> pos(n, SIZE_MAX);
        for (std::size_t i = 0; i < k; ++i) pos[cls[i]] = i;
        Matrix A(k, std::vector<Rational>(k, Rational(0)));
        for (std::size_t i = 0; i < k; ++i) {
            A[i][i] -= 1;
            for (const Outcome& o : c.step[cls[i]]) A[pos[o.target]][i] += o.probability;
        }
        std::vector<Rational> rhs(k, Rational(0));
        for (std::size_t i = 0; i < k; ++i) A[k - 1][i] = 1;
        rhs[k - 1] = 1;
        auto pi = solve_linear(std::move(A), rhs);
        Rational gain = 0;
        for (std::size_t i = 0; i < k; ++i) gain += pi[i] * c.reward[cls[i]];
        a.stationary.push_back(std::move(pi));
        a.class_gain.push_back(gain);
    }

    // absorption probabilities for transient states
    const std::size_t m = a.classes.size();
    a.absorption.assign(n, std::vector<Rational>(m, Rational(0)));
    std::vector<StateId> transient;
    std::vector<std::size_t> tpos(n, SIZE_MAX);
    for (StateId s = 0; s < n; ++s) {
        if (a.class_of[s] >= 0) {
            a.absorption[s][a.class_of[s]] = 1;
        } else {
            tpos[s] = transient.size();
            transient.push_back(s);
        }
    }
    if (!transient.empty()) {
        const std::size_t t = transient.size();
        Matrix A(t, std::vector<Rational>(t, Rational(0)));
        Matrix B(t, std::vector<Rational>(m, Rational(0)));
        for (std::size_t i = 0; i < t; ++i) {
            A[i][i] += 1;
            for (const Outcome& o : c.step[transient[i]]) {
                if (a.class_of[o.target] >= 0) {
                    B[i][a.class_of[o.target]] += o.probability;
                } else {
                    A[i][tpos[o.target]] -= o.probability;
                }
            }
        }
        Matrix X = solve_linear(std::move(A), std::move(B));
        for (std::size_t i = 0; i < t; ++i) a.absorption[transient[i]] = X[i];
    }

    a.expected.assign(n, Rational(0));
    a.almost_sure.assign(n, Rational(0));
    a.best_case.assign(n, Rational(0));
    for (StateId s = 0; s < n; ++s) {
        bool first = true;
        for (std::size_t k = 0; k < m; ++k) {
            const Rational& p = a.absorption[s][k];
            if (p == 0) continue;
            a.expected[s] += p * a.class_gain[k];
            if (first || a.class_gain[k] < a.almost_sure[s]) a.almost_sure[s] = a.class_gain[k];
            if (first || a.class_gain[k] > a.best_case[s]) a.best_case[s] = a.class_gain[k];
            first = false;
        }
    }
    return a;
}

Accumulation
expected_until(const MarkovChain& c, StateId start, const std::vector<bool>& target)
{
    validate_chain(c);
    if (target.size() != c.size()) throw ContractViolation("target mask has the wrong size");
    if (target[start]) return {Rational(0), Rational(0)};

    // states from which target is reachable must be all states reachable from start
    const std::size_t n = c.size();
    std::vector<bool> seen(n, false);
    std::vector<StateId> order{start}, stack{start};
    seen[start] = true;
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        if (target[s]) continue;
        for (const Outcome& o : c.step[s]) {
            if (!seen[o.target]) {
                seen[o.target] = true;
                order.push_back(o.target);
                stack.push_back(o.target);
            }
        }
    }
    std::vector<StateId> open;
    std::vector<std::size_t> pos(n, SIZE_MAX);
    for (StateId s : order) {
        if (!target[s]) {
            pos[s] = open.size();
            open.push_back(s);
        }
    }
    const std::size_t k = open.size();
    Matrix A(k, std::vector<Rational>(k, Rational(0)));
    Matrix B(k, std::vector<Rational>(2, Rational(0)));
    for (std::size_t i = 0; i < k; ++i) {
        A[i][i] += 1;
        B[i][0] = c.reward[open[i]];
        B[i][1] = 1;
        for (const Outcome& o : c.step[open[i]]) {
            if (!target[o.target]) A[i][pos[o.target]] -= o.probability;
        }
    }
    Matrix X;
    try {
        X = solve_linear(std::move(A), std::move(B));
    } catch (const ConsistencyError&) {
        throw ContractViolation("target is not reached with probability 1");
    }
    return {X[0][0], X[0][1]};
}

} // namespace cmpg
