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

#include "cmpg/markov.hpp"
#include "cmpg/strategy.hpp"
#include "cmpg/verify.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace cmpg {

struct ProductNode
{
    StateId state;
    std::size_t memory1;
    std::size_t memory2;
};

/// Chain over the (state, memory1, memory2) triples reachable from `start`
/// with both memories initial. Node 0 is the start.
struct ProductChain
{
    MarkovChain chain;
    std::vector<ProductNode> nodes;
};

ProductChain product_chain(const GameStructure& g, const FiniteMemoryStrategy& fm1, const FiniteMemoryStrategy& fm2, StateId start);

enum class WitnessGame { G1, GBar };

/// Whether g has the transition structure of gen_gn(1) or gen_gbar(), up to names.
std::optional<WitnessGame> detect_witness_game(const GameStructure& g);

struct SpoilResult
{
    WitnessGame game = WitnessGame::G1;
    FiniteMemoryStrategy responder;
    Rational p;     ///< smallest positive a1 weight at the decision state (1 if a1 is never played)
    Rational value; ///< G1: almost-sure value of the product; GBar: best reachable class gain
    VerificationReport report;
};

/**
 * Punishing player-2 responder that mirrors fm's memory: in a memory state
 * where fm plays a2 with probability 1 it answers b1, otherwise b2. On G1 the
 * product has almost-sure average at most 1 - p; on GBar play is absorbed in
 * v0, so no recurrent class pays average 1.
 */
SpoilResult spoil_finite_memory(const GameStructure& g, const FiniteMemoryStrategy& fm);

/**
 * Calls f on every player-1 automaton with 1..max_memory memory states whose
 * a1 weight at the decision state lies on `grid`, with initial memory 0 and
 * deterministic updates. Updates are enumerated only on the joint moves the
 * punishing responder lets occur; all others keep the memory. Every automaton
 * of that size is behaviourally equivalent, against that responder, to one in
 * the suite.
 */
void for_each_finite_memory(const GameStructure& g, unsigned max_memory, const std::vector<Rational>& grid,
                            const std::function<void(const FiniteMemoryStrategy&)>& f);

} // namespace cmpg
