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
#include "cmpg/strategy.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cmpg {

/*
 * .cmpg format, one directive per line, '#' starts a comment:
 *
 *   game NAME
 *   state SID
 *   actions1 SID A1 A2 ...
 *   actions2 SID B1 B2 ...
 *   trans SID A B r=R -> T1:P1 T2:P2 ...
 *
 * States may be referenced before their declaration.
 */
GameStructure parse_game(std::string_view text, RewardRange range = RewardRange::UnitInterval);
std::string serialize_game(const GameStructure& g);

/*
 * .dmpg format:
 *
 *   dmpg NAME
 *   node SID owner=1|2
 *   edge SID TID r=INT
 */
Dmpg parse_dmpg(std::string_view text);
std::string serialize_dmpg(const Dmpg& d);

/*
 * Strategy files. Stationary:
 *
 *   stationary player=1
 *   at SID: A1=p/q A2=p/q
 *
 * Round-indexed:
 *
 *   markov player=1 kind=TAG key=value ...
 *   segment L..U:            (or "segment L..rest:")
 *   at SID: ...
 *
 * Finite memory:
 *
 *   finite player=1 memory=M0,M1 initial=M0
 *   move SID M: A1=p/q ...
 *   update SID A B M -> M'   (omitted entries keep the memory unchanged)
 *
 * Only positive weights are written; omitted actions have weight 0.
 */
std::string serialize_strategy(const GameStructure& g, const StationaryStrategy& sigma);
/// Writes the segments covering rounds 1..rounds.
std::string serialize_strategy(const GameStructure& g, const RoundIndexedStrategy& sigma, std::uint64_t rounds);
std::string serialize_strategy(const GameStructure& g, const FiniteMemoryStrategy& fm);

enum class StrategyFileKind { Stationary, Markov, FiniteMemory };

/// Parsed contents of a round-indexed strategy file. Rebuilding the lazy
/// generator from kind/params is left to the caller.
struct MarkovFile
{
    Player player = Player::One;
    MarkovKind kind = MarkovKind::Explicit;
    std::map<std::string, std::string> params;
    std::vector<Segment> segments;
};

struct StrategyFile
{
    StrategyFileKind kind = StrategyFileKind::Stationary;
    StationaryStrategy stationary;
    MarkovFile markov;
    FiniteMemoryStrategy finite;
};

StrategyFile parse_strategy(const GameStructure& g, std::string_view text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Splits on ASCII whitespace.
std::vector<std::string> split_words(std::string_view line);

} // namespace cmpg
