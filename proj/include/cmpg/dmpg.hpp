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
#include "cmpg/markov.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace cmpg {

/// Edge index (into Dmpg::edges()) chosen at every node.
using EdgeChoice = std::vector<std::size_t>;

/// Mean of the cycle reached from s when every node follows `choice`.
Rational lasso_value(const Dmpg& d, const EdgeChoice& choice, NodeId s);

/// max over player-1 positional choices of min over player-2 ones, per node.
/// Throws BoundExceeded when the number of strategy pairs exceeds `bound`.
std::vector<Rational> dmpg_values_bruteforce(const Dmpg& d, std::uint64_t bound = 1000000);
Rational dmpg_value_bruteforce(const Dmpg& d, NodeId s, std::uint64_t bound = 1000000);

struct GadgetMap
{
    std::vector<StateId> node_state;              ///< DMPG node -> game state
    std::vector<std::array<StateId, 4>> edge_states; ///< edge -> v1..v4
    /// action index at the source node (for the owner) that enters the gadget of each edge
    std::vector<ActionId> edge_action;
};

struct Reduction
{
    GameStructure game;
    GadgetMap map;
    long M = 1;
};

/**
 * Every edge e = (s,t) with reward r becomes an action of s's owner leading
 * to v1(e). From there: v2 with probability r/M, v3 otherwise (reward 0);
 * v2 and v3 move to v4 with probability 1 - 1/M and to t with 1/M (reward 1
 * from v2, 0 from v3); v4 returns to v1. One DMPG step takes 3M rounds in
 * expectation and pays r in expectation.
 */
Reduction reduce_dmpg(const Dmpg& d);

/// "node N -> SID" and "edge E -> v1=SID v2=SID v3=SID v4=SID" lines.
std::string format_gadget_map(const Dmpg& d, const Reduction& r);

/// Chain of the reduced game when every node follows `choice`.
MarkovChain transported_chain(const Dmpg& d, const Reduction& r, const EdgeChoice& choice);

/// Expected reward and rounds from entering e's gadget at its source until
/// its target is reached.
Accumulation gadget_expectation(const Dmpg& d, const Reduction& r, std::size_t edge);

/// max-min over positional pairs of the almost-sure average of the transported chain.
Rational transported_value(const Dmpg& d, const Reduction& r, NodeId s, std::uint64_t bound = 1000000);

struct ReductionCheck
{
    Rational value;       ///< brute-force DMPG value
    Rational transported; ///< transported max-min value
    bool scaled = false;  ///< transported == value / (3M)
    bool iff = false;     ///< value >= lambda  iff  transported >= lambda / (3M)
};

ReductionCheck verify_reduction(const Dmpg& d, NodeId s, const Rational& lambda, std::uint64_t bound = 1000000);

} // namespace cmpg
