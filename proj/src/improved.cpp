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

#include "cmpg/solver.hpp"

#include "cmpg/errors.hpp"

#include <numeric>

namespace cmpg {

namespace {

/**
 * Levels and cached action sets. For the current levels:
 *   allow[s][a]  iff no successor of (s,a,·) has level 0
 *   num[s][b]    = #{(a,t) | a allowed, t in Succ(s,a,b), level(t) > level(s)}
 *   bad[s][b]    iff num[s][b] > 0
 *   good[s][a]   iff a allowed and for every b not bad, reward 1 and no
 *                successor below level(s)
 */
class LevelState
{
  public:
    LevelState(const GameStructure& g, SolveCounters& counters) : g_(g), c_(counters)
    {
        const std::size_t n = g.num_states();
        level_.assign(n, static_cast<unsigned>(n));
        allow_.resize(n);
        good_.resize(n);
        good_count_.assign(n, 0);
        bad_.resize(n);
        num_.resize(n);
        c_.process_calls.assign(n, 0);
        c_.remove_calls.resize(n);
        for (StateId s = 0; s < n; ++s) {
            allow_[s].assign(g.num_actions(Player::One, s), false);
            good_[s].assign(g.num_actions(Player::One, s), false);
            bad_[s].assign(g.num_actions(Player::Two, s), false);
            num_[s].assign(g.num_actions(Player::Two, s), 0);
            c_.remove_calls[s].assign(g.num_actions(Player::Two, s), 0);
        }
    }

    unsigned level(StateId s) const { return level_[s]; }
    void set_level(StateId s, unsigned l) { level_[s] = l; }
    bool good_empty(StateId s) const { return good_count_[s] == 0; }
    const std::vector<unsigned>& levels() const { return level_; }

    void process(StateId s)
    {
        ++c_.process_calls[s];
        const std::size_t k1 = g_.num_actions(Player::One, s), k2 = g_.num_actions(Player::Two, s);
        const unsigned ls = level_[s];
        for (ActionId a = 0; a < k1; ++a) {
            bool ok = true;
            for (ActionId b = 0; b < k2 && ok; ++b) {
                for (StateId t : g_.succ(s, a, b)) {
                    ++c_.work;
                    if (level_[t] == 0) {
                        ok = false;
                        break;
                    }
                }
            }
            allow_[s][a] = ok;
        }
        for (ActionId b = 0; b < k2; ++b) {
            std::size_t count = 0;
            for (ActionId a = 0; a < k1; ++a) {
                if (!allow_[s][a]) continue;
                for (StateId t : g_.succ(s, a, b)) {
                    ++c_.work;
                    count += level_[t] > ls;
                }
            }
            num_[s][b] = count;
            bad_[s][b] = count > 0;
        }
        good_count_[s] = 0;
        for (ActionId a = 0; a < k1; ++a) {
            bool ok = allow_[s][a];
            for (ActionId b = 0; b < k2 && ok; ++b) {
                if (!bad_[s][b]) ok = stays(s, a, b);
            }
            good_[s][a] = ok;
            good_count_[s] += ok;
        }
    }

    void remove(StateId s, ActionId b)
    {
        if (num_[s][b] != 0) throw ContractViolation("Remove(s,b) called while Num(s,b) > 0");
        ++c_.remove_calls[s][b];
        bad_[s][b] = false;
        for (ActionId a = 0; a < good_[s].size(); ++a) {
            if (good_[s][a] && !stays(s, a, b)) drop_good(s, a);
        }
    }

    /// s has just dropped one level; t is a predecessor via (a,b) that keeps its level.
    void notify_drop(StateId s, const Predecessor& p)
    {
        ++c_.work;
        const StateId t = p.state;
        if (level_[t] == level_[s] && allow_[t][p.action1]) {
            if (num_[t][p.action2] == 0) throw ConsistencyError("Num(t,b) underflow");
            if (--num_[t][p.action2] == 0) remove(t, p.action2);
        } else if (level_[t] == level_[s] + 1 && !bad_[t][p.action2] && good_[t][p.action1]) {
            // s now lies below t, so a no longer stays at t's level against b
            drop_good(t, p.action1);
        }
    }

  private:
    /// reward 1 and no successor below level(s)
    bool stays(StateId s, ActionId a, ActionId b)
    {
        if (!g_.pays_top(s, a, b)) return false;
        for (StateId t : g_.succ(s, a, b)) {
            ++c_.work;
            if (level_[t] < level_[s]) return false;
        }
        return true;
    }

    void drop_good(StateId s, ActionId a)
    {
        good_[s][a] = false;
        --good_count_[s];
    }

    const GameStructure& g_;
    SolveCounters& c_;
    std::vector<unsigned> level_;
    std::vector<std::vector<bool>> allow_;
    std::vector<std::vector<bool>> good_;
    std::vector<std::size_t> good_count_;
    std::vector<std::vector<bool>> bad_;
    std::vector<std::vector<std::size_t>> num_;
};

} // namespace

SolveReport
almost_set_improved(const GameStructure& g, const std::vector<StateId>& order)
{
    const std::size_t n = g.num_states();
    std::vector<StateId> seq = order;
    if (seq.empty()) {
        seq.resize(n);
        std::iota(seq.begin(), seq.end(), 0);
    } else {
        std::vector<bool> seen(n, false);
        if (seq.size() != n) throw ContractViolation("order must be a permutation of the states");
        for (StateId s : seq) {
            if (s >= n || seen[s]) throw ContractViolation("order must be a permutation of the states");
            seen[s] = true;
        }
    }

    SolveReport r;
    r.algorithm = Algorithm::Improved;
    LevelState st(g, r.counters);
    for (StateId s : seq) st.process(s);

    std::vector<bool> in_pass(n, false);
    std::vector<StateId> pass;
    bool changed = true;
    while (changed) {
        ++r.counters.passes;
        changed = false;
        bool hit_zero = false;
        pass.clear();
        for (StateId s : seq) {
            if (st.level(s) > 0 && st.good_empty(s)) pass.push_back(s);
        }
        for (StateId s : pass) {
            changed = true;
            in_pass[s] = true;
            st.set_level(s, st.level(s) - 1);
            if (st.level(s) == 0) hit_zero = true;
        }
        if (hit_zero) {
            for (StateId s : seq) st.process(s);
        } else {
            for (StateId s : pass) {
                st.process(s);
                for (const Predecessor& p : g.predecessors(s)) {
                    if (in_pass[p.state] || st.level(p.state) == 0) continue;
                    st.notify_drop(s, p);
                }
            }
        }
        for (StateId s : pass) in_pass[s] = false;
    }

    r.levels = st.levels();
    r.winning = StateSet(n);
    for (StateId s = 0; s < n; ++s) {
        if (r.levels[s] > 0) r.winning.insert(s);
    }
    r.y_chain = chain_from_levels(g, r.levels);
    return r;
}

} // namespace cmpg
