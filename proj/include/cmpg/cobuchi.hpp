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

namespace cmpg {

/**
 * States from which player 1 can make sure that, from some point on, only
 * reward-1 moves are taken. Every reward-0 move is routed through a marked
 * intermediate vertex and the Büchi game of player 2 on the marks is solved
 * by iterated attractors.
 *
 * Requires a turn-based deterministic boolean game.
 */
StateSet cobuchi_winning_set(const GameStructure& g);

} // namespace cmpg
