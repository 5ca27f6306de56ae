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

#include "cmpg/mdp.hpp"
#include "cmpg/strategy.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cmpg {

struct VerificationEntry
{
    StateId state;
    Rational value;
    bool safe = true; ///< no positive-probability exit from the checked set at this state
    bool pass = false;
};

struct VerificationReport
{
    std::string claim;
    Rational threshold;
    std::vector<VerificationEntry> entries; ///< sorted by state id
    /// Positional counter-strategy of the free player (action per game state;
    /// absent states are unconstrained). Attached on failure.
    std::optional<std::vector<std::optional<ActionId>>> witness;
    Player witness_player = Player::Two;

    bool passed() const;
    const VerificationEntry* find(StateId s) const;
};

/// "STATE value=p/q pass=yes|no" per entry in state-name order, then a
/// "witness" block of "STATE ACTION" lines when present.
std::string format_report(const GameStructure& g, const VerificationReport& r);

/**
 * sigma keeps play inside Xstar and the minimizing player-2 MDP has value at
 * least 1 - eps at every state of Xstar.
 */
VerificationReport verify_eps_claim(const GameStructure& g, const StationaryStrategy& sigma, const StateSet& Xstar,
                                    const Rational& eps, const MdpOptions& opts = {});

/**
 * sigma2 keeps play inside `region` whatever player 1 does and the maximizing
 * player-1 MDP has value at most 1 - c at every state of `region`.
 */
VerificationReport verify_spoiler_stationary(const GameStructure& g, const StationaryStrategy& sigma2, const StateSet& region,
                                             const Rational& c, const MdpOptions& opts = {});

/// patience(candidate) < eps^{-1.5^{n-1}} implies verify_eps_claim fails on
/// gen_gn(n) with X* = all states.
bool patience_floor_check(unsigned n, const Rational& eps, const StationaryStrategy& candidate, const MdpOptions& opts = {});

/// patience < eps^{-1.5^{n-1}}, exactly.
bool below_patience_floor(const Rational& patience, unsigned n, const Rational& eps);

} // namespace cmpg
