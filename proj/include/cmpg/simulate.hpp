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

#include "cmpg/strategy.hpp"

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

namespace cmpg {

using AnyStrategy = std::variant<StationaryStrategy, RoundIndexedStrategy, FiniteMemoryStrategy>;

Player strategy_player(const AnyStrategy& s);

struct SimulationStats
{
    std::uint64_t steps = 0;
    /// (round, average reward over rounds 1..round) at 10, 100, 1000, ... and at the end
    std::vector<std::pair<std::uint64_t, Rational>> checkpoints;
    Rational total_reward;
    Rational final_average;
    std::vector<std::uint64_t> visits; ///< rounds started in each state
    StateId final_state = 0;
};

/**
 * Samples one play of `steps` rounds. Every draw takes 128 random bits and
 * compares them with the cumulative weights scaled by 2^128 and rounded
 * down; the same seed always gives the same play.
 */
SimulationStats simulate(const GameStructure& g, const AnyStrategy& sigma1, const AnyStrategy& sigma2, StateId start,
                         std::uint64_t steps, std::uint64_t seed);

} // namespace cmpg
