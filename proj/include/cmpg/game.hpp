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

#include "cmpg/rational.hpp"
#include "cmpg/state_set.hpp"

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace cmpg {

enum class Player : int { One = 1, Two = 2 };

inline Player
opponent(Player p)
{
    return p == Player::One ? Player::Two : Player::One;
}

struct Outcome
{
    StateId target;
    Rational probability;
};

/// What happens at state s when the players pick (a, b).
struct JointMove
{
    std::vector<Outcome> distribution;
    Rational reward;
};

/// Raw construction data. moves[s][a * |actions2[s]| + b] is the joint move.
struct GameData
{
    std::string name;
    std::vector<std::string> states;
    std::vector<std::vector<std::string>> actions1;
    std::vector<std::vector<std::string>> actions2;
    std::vector<std::vector<JointMove>> moves;
};

/// Whether rewards must lie in [0,1] (the default) or may be arbitrary
/// rationals awaiting normalize_rewards().
enum class RewardRange { UnitInterval, Unbounded };

struct Predecessor
{
    StateId state;
    ActionId action1;
    ActionId action2;
};

/**
 * Finite concurrent stochastic game with exact rational transition
 * probabilities and rewards. Immutable once built; the constructor validates
 * every invariant and throws ValidationError otherwise.
 *
 * The qualitative target is reward 1: pays_top(s,a,b) is cached at
 * construction and is what the solvers consult.
 */
class GameStructure
{
  public:
    explicit GameStructure(GameData data, RewardRange range = RewardRange::UnitInterval);

    const std::string& name() const { return name_; }
    std::size_t num_states() const { return states_.size(); }
    const std::string& state_name(StateId s) const { return states_[s]; }
    std::optional<StateId> find_state(const std::string& name) const;

    std::size_t num_actions(Player p, StateId s) const
    {
        return p == Player::One ? actions1_[s].size() : actions2_[s].size();
    }
    const std::vector<std::string>& actions(Player p, StateId s) const
    {
        return p == Player::One ? actions1_[s] : actions2_[s];
    }
    std::optional<ActionId> find_action(Player p, StateId s, const std::string& name) const;

    const JointMove& move(StateId s, ActionId a, ActionId b) const { return moves_[s][a * actions2_[s].size() + b]; }
    std::span<const StateId> succ(StateId s, ActionId a, ActionId b) const
    {
        return supports_[s][a * actions2_[s].size() + b];
    }
    const Rational& reward(StateId s, ActionId a, ActionId b) const { return move(s, a, b).reward; }
    bool pays_top(StateId s, ActionId a, ActionId b) const { return top_[s][a * actions2_[s].size() + b]; }

    /// All (t, a, b) with s in Succ(t, a, b).
    const std::vector<Predecessor>& predecessors(StateId s) const { return preds_[s]; }

    /// m: the largest action set of either player at any state.
    std::size_t max_actions() const { return max_actions_; }
    /// |delta|: sum over (s, a, b) of |Succ(s, a, b)|.
    std::size_t transition_size() const { return transition_size_; }
    const Rational& delta_min() const { return delta_min_; }
    bool is_boolean() const { return boolean_; }
    bool is_turn_based() const;
    bool is_deterministic() const;

    StateSet all_states() const { return StateSet::full(num_states()); }
    StateSet no_states() const { return StateSet::empty(num_states()); }

    GameData data() const;

  private:
    std::string name_;
    std::vector<std::string> states_;
    std::vector<std::vector<std::string>> actions1_;
    std::vector<std::vector<std::string>> actions2_;
    std::vector<std::vector<JointMove>> moves_;
    std::vector<std::vector<std::vector<StateId>>> supports_;
    std::vector<std::vector<bool>> top_;
    std::vector<std::vector<Predecessor>> preds_;
    std::unordered_map<std::string, StateId> index_;
    std::size_t max_actions_ = 0;
    std::size_t transition_size_ = 0;
    Rational delta_min_ = 1;
    bool boolean_ = true;
};

/// Minimum positive transition probability.
inline Rational
delta_min(const GameStructure& g)
{
    return g.delta_min();
}

struct NormalizeResult
{
    GameStructure game;
    bool degenerate = false; ///< all rewards were equal; every reward became 1
};

/// Replaces each reward r by scale * (r + shift). Requires scale > 0 and all
/// results in [0,1].
GameStructure normalize_rewards(const GameStructure& g, const Rational& shift, const Rational& scale);

/// Picks shift = -min reward and scale = 1 / (max - min).
NormalizeResult normalize_rewards_auto(const GameStructure& g);

using NodeId = std::uint32_t;

struct DmpgEdge
{
    NodeId source;
    NodeId target;
    long reward;
};

/**
 * Turn-based deterministic mean-payoff game with nonnegative integer edge
 * rewards.
 */
class Dmpg
{
  public:
    Dmpg(std::string name, std::vector<std::string> nodes, std::vector<Player> owners, std::vector<DmpgEdge> edges);

    const std::string& name() const { return name_; }
    std::size_t num_nodes() const { return nodes_.size(); }
    const std::string& node_name(NodeId v) const { return nodes_[v]; }
    std::optional<NodeId> find_node(const std::string& name) const;
    Player owner(NodeId v) const { return owners_[v]; }
    const std::vector<DmpgEdge>& edges() const { return edges_; }
    /// Indices into edges(), in declaration order.
    const std::vector<std::size_t>& out_edges(NodeId v) const { return out_[v]; }
    long max_reward() const { return max_reward_; }

  private:
    std::string name_;
    std::vector<std::string> nodes_;
    std::vector<Player> owners_;
    std::vector<DmpgEdge> edges_;
    std::vector<std::vector<std::size_t>> out_;
    long max_reward_ = 0;
};

} // namespace cmpg
