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

#include "cmpg/game.hpp"

#include "cmpg/errors.hpp"

#include <algorithm>
#include <set>

namespace cmpg {

using Kind = ValidationError::Kind;

namespace {

void
check_unique(const std::vector<std::string>& names, const std::string& what)
{
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (!seen.insert(n).second) throw ValidationError(Kind::DuplicateName, "duplicate " + what + " '" + n + "'");
    }
}

} // namespace

GameStructure::GameStructure(GameData data, RewardRange range)
    : name_(std::move(data.name)),
      states_(std::move(data.states)),
      actions1_(std::move(data.actions1)),
      actions2_(std::move(data.actions2)),
      moves_(std::move(data.moves))
{
    const std::size_t n = states_.size();
    if (n == 0) throw ValidationError(Kind::EmptyActionSet, "game has no states");
    check_unique(states_, "state");
    if (actions1_.size() != n || actions2_.size() != n || moves_.size() != n) {
        throw ValidationError(Kind::MissingTransition, "per-state tables do not cover every state");
    }
    for (StateId s = 0; s < n; ++s) index_.emplace(states_[s], s);

    supports_.resize(n);
    top_.resize(n);
    preds_.resize(n);
    bool first_prob = true;
    for (StateId s = 0; s < n; ++s) {
        if (actions1_[s].empty()) throw ValidationError(Kind::EmptyActionSet, "state '" + states_[s] + "' has no player-1 actions");
        if (actions2_[s].empty()) throw ValidationError(Kind::EmptyActionSet, "state '" + states_[s] + "' has no player-2 actions");
        check_unique(actions1_[s], "player-1 action at '" + states_[s] + "'");
        check_unique(actions2_[s], "player-2 action at '" + states_[s] + "'");
        max_actions_ = std::max({max_actions_, actions1_[s].size(), actions2_[s].size()});

        const std::size_t k1 = actions1_[s].size(), k2 = actions2_[s].size();
        if (moves_[s].size() != k1 * k2) {
            throw ValidationError(Kind::MissingTransition, "state '" + states_[s] + "' lacks transitions for some action pair");
        }
        supports_[s].resize(k1 * k2);
        top_[s].resize(k1 * k2);
        for (ActionId a = 0; a < k1; ++a) {
            for (ActionId b = 0; b < k2; ++b) {
                const JointMove& mv = moves_[s][a * k2 + b];
                const std::string where = "(" + states_[s] + ", " + actions1_[s][a] + ", " + actions2_[s][b] + ")";
                if (mv.distribution.empty()) throw ValidationError(Kind::MissingTransition, "missing transition " + where);
                Rational sum = 0;
                std::vector<StateId> support;
                for (const Outcome& o : mv.distribution) {
                    if (o.target >= n) throw ValidationError(Kind::UnknownName, "transition " + where + " targets an unknown state");
                    if (o.probability <= 0) {
                        throw ValidationError(Kind::NonPositiveWeight, "transition " + where + " has a non-positive weight");
                    }
                    sum += o.probability;
                    support.push_back(o.target);
                    if (first_prob || o.probability < delta_min_) {
                        delta_min_ = o.probability;
                        first_prob = false;
                    }
                }
                if (sum != 1) throw ValidationError(Kind::DistributionSum, "distribution sums to " + to_string(sum) + " at " + where);
                std::sort(support.begin(), support.end());
                if (std::adjacent_find(support.begin(), support.end()) != support.end()) {
                    throw ValidationError(Kind::DistributionSum, "transition " + where + " lists a successor twice");
                }
                if (range == RewardRange::UnitInterval && (mv.reward < 0 || mv.reward > 1)) {
                    throw ValidationError(Kind::RewardOutOfRange, "reward " + to_string(mv.reward) + " outside [0,1] at " + where);
                }
                if (mv.reward != 0 && mv.reward != 1) boolean_ = false;
                top_[s][a * k2 + b] = mv.reward == 1;
                transition_size_ += support.size();
                for (StateId t : support) preds_[t].push_back({s, a, b});
                supports_[s][a * k2 + b] = std::move(support);
            }
        }
    }
}

std::optional<StateId>
GameStructure::find_state(const std::string& name) const
{
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<ActionId>
GameStructure::find_action(Player p, StateId s, const std::string& name) const
{
    const auto& acts = actions(p, s);
    auto it = std::find(acts.begin(), acts.end(), name);
    if (it == acts.end()) return std::nullopt;
    return static_cast<ActionId>(it - acts.begin());
}

bool
GameStructure::is_turn_based() const
{
    for (StateId s = 0; s < num_states(); ++s) {
        if (actions1_[s].size() > 1 && actions2_[s].size() > 1) return false;
    }
    return true;
}

bool
GameStructure::is_deterministic() const
{
    for (const auto& per_state : supports_) {
        for (const auto& supp : per_state) {
            if (supp.size() != 1) return false;
        }
    }
    return true;
}

GameData
GameStructure::data() const
{
    return GameData{name_, states_, actions1_, actions2_, moves_};
}

GameStructure
normalize_rewards(const GameStructure& g, const Rational& shift, const Rational& scale)
{
    if (scale <= 0) throw ContractViolation("normalize_rewards: scale must be positive");
    GameData d = g.data();
    for (auto& per_state : d.moves) {
        for (auto& mv : per_state) {
            Rational r = scale * (mv.reward + shift);
            mv.reward = r;
        }
    }
    return GameStructure(std::move(d), RewardRange::UnitInterval);
}

NormalizeResult
normalize_rewards_auto(const GameStructure& g)
{
    GameData d = g.data();
    Rational lo = d.moves[0][0].reward, hi = lo;
    for (const auto& per_state : d.moves) {
        for (const auto& mv : per_state) {
            if (mv.reward < lo) lo = mv.reward;
            if (mv.reward > hi) hi = mv.reward;
        }
    }
    if (lo == hi) {
        for (auto& per_state : d.moves) {
            for (auto& mv : per_state) mv.reward = 1;
        }
        return {GameStructure(std::move(d)), true};
    }
    Rational scale = 1 / (hi - lo);
    Rational shift = -lo;
    return {normalize_rewards(g, shift, scale), false};
}

Dmpg::Dmpg(std::string name, std::vector<std::string> nodes, std::vector<Player> owners, std::vector<DmpgEdge> edges)
    : name_(std::move(name)), nodes_(std::move(nodes)), owners_(std::move(owners)), edges_(std::move(edges))
{
    if (nodes_.empty()) throw ValidationError(Kind::BadDmpg, "dmpg has no nodes");
    if (owners_.size() != nodes_.size()) throw ValidationError(Kind::BadDmpg, "every node needs an owner");
    check_unique(nodes_, "node");
    out_.resize(nodes_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const DmpgEdge& e = edges_[i];
        if (e.source >= nodes_.size() || e.target >= nodes_.size()) throw ValidationError(Kind::UnknownName, "edge references an unknown node");
        if (e.reward < 0) throw ValidationError(Kind::RewardOutOfRange, "dmpg rewards must be nonnegative integers");
        max_reward_ = std::max(max_reward_, e.reward);
        out_[e.source].push_back(i);
    }
    for (NodeId v = 0; v < nodes_.size(); ++v) {
        if (out_[v].empty()) throw ValidationError(Kind::BadDmpg, "node '" + nodes_[v] + "' has no outgoing edge");
    }
}

std::optional<NodeId>
Dmpg::find_node(const std::string& name) const
{
    for (NodeId v = 0; v < nodes_.size(); ++v) {
        if (nodes_[v] == name) return v;
    }
    return std::nullopt;
}

} // namespace cmpg
