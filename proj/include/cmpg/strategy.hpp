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
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace cmpg {

/// Dense distribution over the acting player's actions at one state.
using ActionDistribution = std::vector<Rational>;

/**
 * Memoryless strategy: dist[s][a] is the probability of action a at s.
 * Zero entries are allowed; every row sums to 1.
 */
struct StationaryStrategy
{
    Player player = Player::One;
    std::vector<ActionDistribution> dist;
};

/// Uniform over all actions of p at every state.
StationaryStrategy uniform_strategy(const GameStructure& g, Player p);

/// Throws ValidationError(BadStrategy) unless every row is a distribution of
/// the right width.
void validate_strategy(const GameStructure& g, const StationaryStrategy& sigma);

/// max over states of 1 / (smallest positive weight).
Rational patience(const StationaryStrategy& sigma);

/// Number of actions with positive weight at s.
std::size_t support_size(const StationaryStrategy& sigma, StateId s);

/// Named construction behind a round-indexed strategy.
enum class MarkovKind {
    Explicit,
    EpsilonHalvingAlmostSure,
    SpoilerMarkov,
    PositiveMarkov,
};

const char* markov_kind_name(MarkovKind k);
std::optional<MarkovKind> parse_markov_kind(const std::string& name);

struct Segment
{
    std::uint64_t length = 0; ///< 0: plays forever
    std::shared_ptr<const StationaryStrategy> strategy;
};

/**
 * Markov strategy: the stationary strategy in force depends on the round
 * number only. Rounds are numbered from 1.
 *
 * Two representations. Segment mode: consecutive round ranges, each with a
 * fixed stationary strategy; segments past the materialized prefix come from
 * the generator and are cached (thread-safe, never move). Round mode: a
 * function of the round, recomputed on demand with a one-entry cache, for
 * constructions that change every round.
 */
class RoundIndexedStrategy
{
  public:
    using Generator = std::function<Segment(std::size_t index)>;
    using RoundFunction = std::function<StationaryStrategy(std::uint64_t round)>;

    RoundIndexedStrategy(Player player, MarkovKind kind, std::map<std::string, std::string> params,
                         std::vector<Segment> prefix, Generator generator = {});

    static RoundIndexedStrategy per_round(Player player, MarkovKind kind, std::map<std::string, std::string> params,
                                          RoundFunction f);

    Player player() const { return player_; }
    MarkovKind kind() const { return kind_; }
    const std::map<std::string, std::string>& params() const { return params_; }
    bool round_mode() const { return static_cast<bool>(round_fn_); }

    /// Stationary strategy in force at round t >= 1. Throws BoundExceeded when
    /// the strategy is finite and t lies past its end.
    std::shared_ptr<const StationaryStrategy> at_round(std::uint64_t t) const;

    /// Segments covering at least rounds 1..T (round mode: T segments of length 1).
    std::vector<Segment> prefix(std::uint64_t T) const;
    /// Segment i (0-based, segment mode only), materializing it if needed.
    Segment segment(std::size_t i) const;
    std::size_t materialized() const;

    /// Time-dependent memory needed for the first T rounds: a round counter.
    static std::uint64_t memory_for(std::uint64_t T) { return T; }

  private:
    struct Shared
    {
        std::mutex mutex;
        std::deque<Segment> segments;
        std::vector<std::uint64_t> starts;
        bool closed = false;
        std::uint64_t cached_round = 0;
        std::shared_ptr<const StationaryStrategy> cached;
    };

    RoundIndexedStrategy(Player player, MarkovKind kind, std::map<std::string, std::string> params);
    bool extend_locked() const;
    std::size_t locate_locked(std::uint64_t t) const;

    Player player_;
    MarkovKind kind_;
    std::map<std::string, std::string> params_;
    Generator generator_;
    RoundFunction round_fn_;
    std::shared_ptr<Shared> shared_;
};

/**
 * Finite-memory strategy with deterministic update.
 * next_move[s][m] is a distribution over the player's actions at s;
 * update[s][a * |actions2(s)| + b][m] is the memory after (s, a, b).
 */
struct FiniteMemoryStrategy
{
    Player player = Player::One;
    std::vector<std::string> memory;
    std::size_t initial = 0;
    std::vector<std::vector<ActionDistribution>> next_move;
    std::vector<std::vector<std::vector<std::size_t>>> update;
};

void validate_strategy(const GameStructure& g, const FiniteMemoryStrategy& fm);

/// A one-state memory wrapper around a stationary strategy.
FiniteMemoryStrategy as_finite_memory(const GameStructure& g, const StationaryStrategy& sigma);

} // namespace cmpg
