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

namespace cmpg {

/// States v0..vn; v0 absorbing with reward 1, at v_l (l >= 1) the pair
/// (a1,b1) moves to v_{l-1}, (a2,b2) stays with reward 1, mismatches go to vn.
GameStructure gen_gn(unsigned n);

/// States v0 (absorbing, 0), v1 (absorbing, 1) and v: (a1,b1) -> v1,
/// (a2,b2) stays with reward 1, mismatches -> v0.
GameStructure gen_gbar();

/// One state v with m actions per side; all self-loops, reward 0 on the
/// diagonal and 1 elsewhere.
GameStructure gen_gm(unsigned m);

/// Matching pennies on states s0, s1 (s1 absorbing with reward 1). Classical:
/// a match moves to s1 with reward 0. Variant: (t,t) moves to s1 with reward 1,
/// (h,h) stays with reward 1.
GameStructure gen_pennies(bool variant);

struct RandomGameParams
{
    unsigned states = 5;
    unsigned max_actions = 2;   ///< each side draws |actions| from 1..max_actions
    unsigned branching = 2;     ///< each joint move draws its support size from 1..branching
    Rational reward_density = make_rational(1, 2); ///< chance a joint move pays 1
    std::uint64_t seed = 1;
};

/// Seed-deterministic random boolean game.
GameStructure gen_random(const RandomGameParams& p);

/// Random turn-based deterministic boolean game: each state has one owner
/// with 1..max_actions moves; the other side has a single action.
GameStructure gen_random_turn_based(unsigned states, unsigned max_actions, const Rational& reward_density, std::uint64_t seed);

/// Random DMPG with out-degrees 1..max_out and rewards 0..max_reward. At
/// least one edge has a positive reward when max_reward >= 1.
Dmpg gen_random_dmpg(unsigned nodes, unsigned max_out, long max_reward, std::uint64_t seed);

} // namespace cmpg
