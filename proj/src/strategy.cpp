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

#include "cmpg/strategy.hpp"

#include "cmpg/errors.hpp"

#include <algorithm>

namespace cmpg {

using Kind = ValidationError::Kind;

StationaryStrategy
uniform_strategy(const GameStructure& g, Player p)
{
    StationaryStrategy sigma{p, {}};
    sigma.dist.resize(g.num_states());
    for (StateId s = 0; s < g.num_states(); ++s) {
        std::size_t k = g.num_actions(p, s);
        sigma.dist[s].assign(k, make_rational(1, static_cast<long>(k)));
    }
    return sigma;
}

namespace {

void
check_row(const GameStructure& g, Player p, StateId s, const ActionDistribution& row)
{
    if (row.size() != g.num_actions(p, s)) {
        throw ValidationError(Kind::BadStrategy, "strategy row at '" + g.state_name(s) + "' has the wrong number of actions");
    }
    Rational sum = 0;
    for (const Rational& w : row) {
        if (w < 0) throw ValidationError(Kind::NonPositiveWeight, "negative strategy weight at '" + g.state_name(s) + "'");
        sum += w;
    }
    if (sum != 1) {
        throw ValidationError(Kind::DistributionSum, "strategy distribution sums to " + to_string(sum) + " at '" + g.state_name(s) + "'");
    }
}

} // namespace

void
validate_strategy(const GameStructure& g, const StationaryStrategy& sigma)
{
    if (sigma.dist.size() != g.num_states()) throw ValidationError(Kind::BadStrategy, "strategy does not cover every state");
    for (StateId s = 0; s < g.num_states(); ++s) check_row(g, sigma.player, s, sigma.dist[s]);
}

Rational
patience(const StationaryStrategy& sigma)
{
    Rational worst = 1;
    for (const auto& row : sigma.dist) {
        for (const Rational& w : row) {
            if (w > 0) {
                Rational inv = 1 / w;
                if (inv > worst) worst = inv;
            }
        }
    }
    return worst;
}

std::size_t
support_size(const StationaryStrategy& sigma, StateId s)
{
    return static_cast<std::size_t>(std::count_if(sigma.dist[s].begin(), sigma.dist[s].end(), [](const Rational& w) { return w > 0; }));
}

const char*
markov_kind_name(MarkovKind k)
{
    switch (k) {
    case MarkovKind::Explicit: return "Explicit";
    case MarkovKind::EpsilonHalvingAlmostSure: return "EpsilonHalvingAlmostSure";
    case MarkovKind::SpoilerMarkov: return "SpoilerMarkov";
    case MarkovKind::PositiveMarkov: return "PositiveMarkov";
    }
    return "?";
}

std::optional<MarkovKind>
parse_markov_kind(const std::string& name)
{
    for (MarkovKind k : {MarkovKind::Explicit, MarkovKind::EpsilonHalvingAlmostSure, MarkovKind::SpoilerMarkov,
                         MarkovKind::PositiveMarkov}) {
        if (name == markov_kind_name(k)) return k;
    }
    return std::nullopt;
}

RoundIndexedStrategy::RoundIndexedStrategy(Player player, MarkovKind kind, std::map<std::string, std::string> params)
    : player_(player), kind_(kind), params_(std::move(params)), shared_(std::make_shared<Shared>())
{
}

RoundIndexedStrategy::RoundIndexedStrategy(Player player, MarkovKind kind, std::map<std::string, std::string> params,
                                           std::vector<Segment> prefix, Generator generator)
    : RoundIndexedStrategy(player, kind, std::move(params))
{
    generator_ = std::move(generator);
    std::uint64_t start = 1;
    for (auto& seg : prefix) {
        if (shared_->closed) throw ContractViolation("segment after an unbounded segment");
        if (!seg.strategy) throw ContractViolation("segment without a strategy");
        shared_->starts.push_back(start);
        if (seg.length == 0) shared_->closed = true;
        start += seg.length;
        shared_->segments.push_back(std::move(seg));
    }
    if (!generator_ && shared_->segments.empty()) throw ContractViolation("round-indexed strategy without segments");
}

RoundIndexedStrategy
RoundIndexedStrategy::per_round(Player player, MarkovKind kind, std::map<std::string, std::string> params, RoundFunction f)
{
    if (!f) throw ContractViolation("per_round needs a round function");
    RoundIndexedStrategy sigma(player, kind, std::move(params));
    sigma.round_fn_ = std::move(f);
    return sigma;
}

bool
RoundIndexedStrategy::extend_locked() const
{
    Shared& sh = *shared_;
    if (sh.closed || !generator_) return false;
    Segment seg = generator_(sh.segments.size());
    if (!seg.strategy) throw ContractViolation("generator produced a segment without a strategy");
    std::uint64_t start = sh.starts.empty() ? 1 : sh.starts.back() + sh.segments.back().length;
    sh.starts.push_back(start);
    if (seg.length == 0) sh.closed = true;
    sh.segments.push_back(std::move(seg));
    return true;
}

std::size_t
RoundIndexedStrategy::locate_locked(std::uint64_t t) const
{
    Shared& sh = *shared_;
    for (;;) {
        if (!sh.segments.empty()) {
            const Segment& last = sh.segments.back();
            if (last.length == 0 || sh.starts.back() + last.length > t) break;
        }
        if (!extend_locked()) throw BoundExceeded("round " + std::to_string(t) + " lies past the end of the strategy");
    }
    auto it = std::upper_bound(sh.starts.begin(), sh.starts.end(), t);
    return static_cast<std::size_t>(it - sh.starts.begin()) - 1;
}

std::shared_ptr<const StationaryStrategy>
RoundIndexedStrategy::at_round(std::uint64_t t) const
{
    if (t == 0) throw ContractViolation("rounds are numbered from 1");
    std::lock_guard<std::mutex> lock(shared_->mutex);
    if (round_fn_) {
        if (shared_->cached_round != t) {
            shared_->cached = std::make_shared<const StationaryStrategy>(round_fn_(t));
            shared_->cached_round = t;
        }
        return shared_->cached;
    }
    return shared_->segments[locate_locked(t)].strategy;
}

std::vector<Segment>
RoundIndexedStrategy::prefix(std::uint64_t T) const
{
    std::vector<Segment> out;
    if (round_fn_) {
        for (std::uint64_t t = 1; t <= T; ++t) out.push_back({1, std::make_shared<const StationaryStrategy>(round_fn_(t))});
        return out;
    }
    std::lock_guard<std::mutex> lock(shared_->mutex);
    std::size_t last = T == 0 ? 0 : locate_locked(T);
    for (std::size_t i = 0; i <= last && i < shared_->segments.size(); ++i) out.push_back(shared_->segments[i]);
    return out;
}

Segment
RoundIndexedStrategy::segment(std::size_t i) const
{
    if (round_fn_) return {1, std::make_shared<const StationaryStrategy>(round_fn_(i + 1))};
    std::lock_guard<std::mutex> lock(shared_->mutex);
    while (shared_->segments.size() <= i) {
        if (!extend_locked()) throw BoundExceeded("strategy has only " + std::to_string(shared_->segments.size()) + " segments");
    }
    return shared_->segments[i];
}

std::size_t
RoundIndexedStrategy::materialized() const
{
    std::lock_guard<std::mutex> lock(shared_->mutex);
    return shared_->segments.size();
}

void
validate_strategy(const GameStructure& g, const FiniteMemoryStrategy& fm)
{
    const std::size_t k = fm.memory.size();
    if (k == 0 || fm.initial >= k) throw ValidationError(Kind::BadStrategy, "finite-memory strategy needs a valid initial memory state");
    if (fm.next_move.size() != g.num_states() || fm.update.size() != g.num_states()) {
        throw ValidationError(Kind::BadStrategy, "finite-memory strategy does not cover every state");
    }
    for (StateId s = 0; s < g.num_states(); ++s) {
        if (fm.next_move[s].size() != k) throw ValidationError(Kind::BadStrategy, "missing move at '" + g.state_name(s) + "'");
        for (const auto& row : fm.next_move[s]) check_row(g, fm.player, s, row);
        std::size_t pairs = g.num_actions(Player::One, s) * g.num_actions(Player::Two, s);
        if (fm.update[s].size() != pairs) throw ValidationError(Kind::BadStrategy, "missing update at '" + g.state_name(s) + "'");
        for (const auto& per_pair : fm.update[s]) {
            if (per_pair.size() != k) throw ValidationError(Kind::BadStrategy, "missing update at '" + g.state_name(s) + "'");
            for (std::size_t m : per_pair) {
                if (m >= k) throw ValidationError(Kind::BadStrategy, "update to an unknown memory state");
            }
        }
    }
}

FiniteMemoryStrategy
as_finite_memory(const GameStructure& g, const StationaryStrategy& sigma)
{
    FiniteMemoryStrategy fm;
    fm.player = sigma.player;
    fm.memory = {"m0"};
    fm.next_move.resize(g.num_states());
    fm.update.resize(g.num_states());
    for (StateId s = 0; s < g.num_states(); ++s) {
        fm.next_move[s] = {sigma.dist[s]};
        std::size_t pairs = g.num_actions(Player::One, s) * g.num_actions(Player::Two, s);
        fm.update[s].assign(pairs, std::vector<std::size_t>{0});
    }
    return fm;
}

} // namespace cmpg
