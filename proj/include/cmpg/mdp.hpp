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

#include <cstdint>
#include <vector>

namespace cmpg {

struct MdpChoice
{
    std::vector<Outcome> next; ///< sorted by target, positive weights
    Rational reward;
};

/// One-player game left after fixing the other player's stationary strategy.
/// choices[s][x] is the free player's action x at s.
struct Mdp
{
    Player controller = Player::Two;
    std::vector<std::vector<MdpChoice>> choices;

    std::size_t size() const { return choices.size(); }
};

void validate_mdp(const Mdp& m);

/// The MDP of the opponent of sigma.player; transitions and rewards averaged
/// under sigma.
Mdp fix_strategy(const GameStructure& g, const StationaryStrategy& sigma);

/// Chain induced by a positional choice at every state.
MarkovChain fix_policy(const Mdp& m, const std::vector<ActionId>& policy);

/// Chain induced by a stationary mixture of the free player's choices.
MarkovChain fix_mixture(const Mdp& m, const StationaryStrategy& sigma);

struct SubMdp
{
    Mdp mdp;
    std::vector<StateId> states;  ///< local index -> original state
    std::vector<std::size_t> local; ///< original state -> local index or SIZE_MAX
};

/// States reachable from `from` (with all their choices).
SubMdp reachable_part(const Mdp& m, const StateSet& from);

enum class Objective { Minimize, Maximize };
enum class MdpMethod { Auto, Enumerate, PolicyIteration, Both };

struct MdpOptions
{
    MdpMethod method = MdpMethod::Auto;
    std::uint64_t enumeration_bound = 1000000; ///< Auto enumerates when the policy count is at most this
    std::size_t iteration_cap = 100000;
};

struct MdpSolution
{
    std::vector<Rational> value;
    std::vector<ActionId> policy; ///< an optimal positional policy
    bool enumerated = false;
    std::size_t iterations = 0;   ///< policy-iteration rounds, or policies enumerated
};

/// Optimal expected long-run average per state over positional policies.
MdpSolution mdp_mean_payoff(const Mdp& m, Objective obj, const MdpOptions& opts = {});

std::vector<Rational> mdp_min_mean_payoff(const Mdp& m, const MdpOptions& opts = {});
std::vector<Rational> mdp_max_mean_payoff(const Mdp& m, const MdpOptions& opts = {});

/// Product of the choice counts, saturating at UINT64_MAX.
std::uint64_t policy_count(const Mdp& m);

} // namespace cmpg
