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

#pragma once

#include "cmpg/game.hpp"

#include <vector>

namespace cmpg {

using Matrix = std::vector<std::vector<Rational>>;

/// Solves A X = B exactly (A square). Throws ConsistencyError when A is singular.
Matrix solve_linear(Matrix A, Matrix B);
std::vector<Rational> solve_linear(Matrix A, const std::vector<Rational>& b);

/// Strongly connected components of a digraph given as adjacency lists, in
/// reverse topological order (sinks first).
std::vector<std::vector<std::size_t>> strongly_connected(const std::vector<std::vector<std::size_t>>& adj);

/// Finite Markov chain with an expected one-step reward per state.
struct MarkovChain
{
    std::vector<std::vector<Outcome>> step; ///< positive entries only, each row sums to 1
    std::vector<Rational> reward;

    std::size_t size() const { return step.size(); }
};

void validate_chain(const MarkovChain& c);

struct ChainAnalysis
{
    std::vector<std::vector<StateId>> classes;      ///< closed recurrent classes, sorted members
    std::vector<int> class_of;                      ///< -1 for transient states
    std::vector<std::vector<Rational>> stationary;  ///< per class, aligned with classes[i]
    std::vector<Rational> class_gain;
    std::vector<std::vector<Rational>> absorption;  ///< absorption[s][class]
    std::vector<Rational> expected;                 ///< expected long-run average
    std::vector<Rational> almost_sure;              ///< min gain over reachable classes
    std::vector<Rational> best_case;                ///< max gain over reachable classes
};

/**
 * From inside a closed recurrent class the long-run average equals the class
 * gain (sum of stationary weight times reward) with probability 1; from any
 * state the average converges almost surely to the gain of the class
 * eventually entered.
 */
ChainAnalysis mc_mean_payoff(const MarkovChain& c);

struct Accumulation
{
    Rational reward;
    Rational steps;
};

/// Expected total reward and number of steps from `start` until the first
/// visit to `target`. Requires `target` to be reached with probability 1.
Accumulation expected_until(const MarkovChain& c, StateId start, const std::vector<bool>& target);

} // namespace cmpg
