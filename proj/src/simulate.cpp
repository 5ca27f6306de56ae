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

#include "cmpg/simulate.hpp"

#include "cmpg/errors.hpp"
#include "cmpg/random.hpp"

#include <map>
#include <memory>
#include <optional>

namespace cmpg {

namespace {

using u128 = unsigned __int128;

/// Cumulative thresholds floor(F_i * 2^128) for i < last; the last entry
/// catches everything above.
std::vector<u128>
thresholds(const std::vector<Rational>& weights)
{
    std::vector<u128> out;
    Rational cum = 0;
    Integer q;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        cum += weights[i];
        Integer num = cum.get_num();
        num <<= 128;
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), cum.get_den().get_mpz_t());
        if (cum >= 1) {
            out.push_back(~u128(0));
            continue;
        }
        Integer hi = q >> 64;
        Integer lo = q - (hi << 64);
        out.push_back((u128(hi.get_ui()) << 64) | u128(lo.get_ui()));
    }
    return out;
}

std::size_t
draw(Rng& rng, const std::vector<u128>& cut)
{
    u128 u = (u128(rng.next()) << 64) | u128(rng.next());
    for (std::size_t i = 0; i < cut.size(); ++i) {
        if (u < cut[i]) return i;
    }
    return cut.size();
}

/// Draw from a distribution with at most one positive entry without using randomness.
std::optional<std::size_t>
point_mass(const std::vector<Rational>& weights)
{
    std::optional<std::size_t> only;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] == 0) continue;
        if (only) return std::nullopt;
        only = i;
    }
    return only;
}

class Sampler
{
  public:
    Sampler(const GameStructure& g, const AnyStrategy& s) : g_(g), s_(s)
    {
        if (auto* st = std::get_if<StationaryStrategy>(&s_)) {
            validate_strategy(g, *st);
            cache_.resize(g.num_states());
        } else if (auto* fm = std::get_if<FiniteMemoryStrategy>(&s_)) {
            validate_strategy(g, *fm);
            memory_ = fm->initial;
            fm_cache_.resize(g.num_states(), std::vector<std::optional<std::vector<u128>>>(fm->memory.size()));
        }
    }

    ActionId choose(Rng& rng, StateId s, std::uint64_t round)
    {
        const std::vector<Rational>* weights = nullptr;
        std::optional<std::vector<u128>>* slot = nullptr;
        std::shared_ptr<const StationaryStrategy> keep;
        if (auto* st = std::get_if<StationaryStrategy>(&s_)) {
            weights = &st->dist[s];
            slot = &cache_[s];
        } else if (auto* fm = std::get_if<FiniteMemoryStrategy>(&s_)) {
            weights = &fm->next_move[s][memory_];
            slot = &fm_cache_[s][memory_];
        } else {
            keep = std::get<RoundIndexedStrategy>(s_).at_round(round);
            if (keep.get() != current_.get()) {
                current_ = keep;
                cache_.assign(g_.num_states(), std::nullopt);
            }
            weights = &keep->dist[s];
            slot = &cache_[s];
        }
        if (auto only = point_mass(*weights)) return static_cast<ActionId>(*only);
        if (!*slot) *slot = thresholds(*weights);
        return static_cast<ActionId>(draw(rng, **slot));
    }

    void observe(StateId s, ActionId a, ActionId b)
    {
        if (auto* fm = std::get_if<FiniteMemoryStrategy>(&s_)) {
            memory_ = fm->update[s][a * g_.num_actions(Player::Two, s) + b][memory_];
        }
    }

  private:
    const GameStructure& g_;
    const AnyStrategy& s_;
    std::vector<std::optional<std::vector<u128>>> cache_;
    std::vector<std::vector<std::optional<std::vector<u128>>>> fm_cache_;
    std::shared_ptr<const StationaryStrategy> current_;
    std::size_t memory_ = 0;
};

} // namespace

Player
strategy_player(const AnyStrategy& s)
{
    return std::visit(
        [](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, RoundIndexedStrategy>) {
                return x.player();
            } else {
                return x.player;
            }
        },
        s);
}

SimulationStats
simulate(const GameStructure& g, const AnyStrategy& sigma1, const AnyStrategy& sigma2, StateId start, std::uint64_t steps,
         std::uint64_t seed)
{
    if (steps < 1) throw ContractViolation("simulate needs at least one step");
    if (start >= g.num_states()) throw ContractViolation("start state out of range");
    if (strategy_player(sigma1) != Player::One || strategy_player(sigma2) != Player::Two) {
        throw ContractViolation("simulate needs a player-1 and a player-2 strategy");
    }
    Rng rng(seed);
    Sampler p1(g, sigma1), p2(g, sigma2);
    std::map<std::pair<StateId, std::size_t>, std::vector<u128>> moves;

    SimulationStats st;
    st.steps = steps;
    st.visits.assign(g.num_states(), 0);
    st.total_reward = 0;
    StateId s = start;
    std::uint64_t next_checkpoint = 10;
    for (std::uint64_t t = 1; t <= steps; ++t) {
        ++st.visits[s];
        ActionId a = p1.choose(rng, s, t);
        ActionId b = p2.choose(rng, s, t);
        const JointMove& mv = g.move(s, a, b);
        st.total_reward += mv.reward;
        p1.observe(s, a, b);
        p2.observe(s, a, b);
        if (mv.distribution.size() == 1) {
            s = mv.distribution[0].target;
        } else {
            std::size_t key = a * g.num_actions(Player::Two, s) + b;
            auto it = moves.find({s, key});
            if (it == moves.end()) {
                std::vector<Rational> w;
                for (const Outcome& o : mv.distribution) w.push_back(o.probability);
                it = moves.emplace(std::make_pair(s, key), thresholds(w)).first;
            }
            s = mv.distribution[draw(rng, it->second)].target;
        }
        if (t == next_checkpoint && t < steps) {
            st.checkpoints.emplace_back(t, st.total_reward / Rational(static_cast<unsigned long>(t)));
            next_checkpoint *= 10;
        }
    }
    st.final_average = st.total_reward / Rational(static_cast<unsigned long>(steps));
    st.checkpoints.emplace_back(steps, st.final_average);
    st.final_state = s;
    return st;
}

} // namespace cmpg
