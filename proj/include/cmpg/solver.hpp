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

#include <cstdint>
#include <string>
#include <vector>

namespace cmpg {

// Predecessor operator. A player-1 action is "good" at s when it cannot leave
// X, and against every player-2 action that risks no progress into Y it stays
// in Z while paying reward 1.

std::vector<ActionId> allow1(const GameStructure& g, StateId s, const StateSet& X);
/// Requires Y ⊆ X.
std::vector<ActionId> bad2(const GameStructure& g, StateId s, const StateSet& X, const StateSet& Y);
/// Requires Y ⊆ Z ⊆ X.
std::vector<ActionId> good1(const GameStructure& g, StateId s, const StateSet& X, const StateSet& Y, const StateSet& Z);
/// Requires Y ⊆ Z ⊆ X.
StateSet asp(const GameStructure& g, const StateSet& X, const StateSet& Y, const StateSet& Z);

enum class Algorithm { Naive, Improved };

struct SolveCounters
{
    // nested fixpoint evaluation
    std::size_t outer_iterations = 0;  ///< evaluations of the X-body
    std::size_t mu_iterations = 0;     ///< evaluations of the Y-body, summed
    std::size_t nu_iterations = 0;     ///< ASP evaluations, summed
    std::size_t max_mu_per_outer = 0;
    std::size_t max_nu_per_mu = 0;

    // level algorithm
    std::size_t passes = 0;
    std::vector<std::size_t> process_calls;              ///< per state
    std::vector<std::vector<std::size_t>> remove_calls;  ///< per (state, player-2 action)
    std::uint64_t work = 0; ///< successor entries scanned by Process, Remove and predecessor updates

    std::size_t total_process() const;
    std::size_t total_remove() const;
    std::size_t max_remove() const;
};

struct SolveReport
{
    Algorithm algorithm = Algorithm::Naive;
    StateSet winning;
    /// Naive and positive: i with s in Y_i \ Y_{i-1} (0 outside). Improved: final level.
    std::vector<unsigned> levels;
    /// Y_1 ⊂ ... ⊂ Y_l = winning set, from the last inner evaluation.
    std::vector<StateSet> y_chain;
    /// X_0 = S ⊃ X_1 ⊃ ... ⊃ X_k = X* (almost-sure naive only).
    std::vector<StateSet> x_chain;
    SolveCounters counters;
};

/// X* = νX. μY. νZ. ASP(X,Y,Z).
SolveReport almost_set_naive(const GameStructure& g);

/// Y* = μY. νZ. ASP(S,Y,Z).
SolveReport positive_set(const GameStructure& g);

/**
 * Level-based algorithm. `order` optionally fixes the state order of every
 * pass (a permutation of the states); the final levels do not depend on it.
 */
SolveReport almost_set_improved(const GameStructure& g, const std::vector<StateId>& order = {});

/// Y-chain recovered from final levels: Y_i = { s | level(s) >= n+1-i }, trimmed to
/// the non-empty, strictly growing prefix.
std::vector<StateSet> chain_from_levels(const GameStructure& g, const std::vector<unsigned>& levels);

/// Sorted "STATE level=K in_winning=yes|no" listing.
std::string format_report(const GameStructure& g, const SolveReport& r);

} // namespace cmpg
