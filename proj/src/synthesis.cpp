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

#include "cmpg/synthesis.hpp"

#include <algorithm>
#include <map>

namespace cmpg {

namespace {

/// Exponents beyond this are refused rather than materialized.
const unsigned long kMaxExponent = 1ul << 26;

unsigned long
small_exponent(const Integer& e)
{
    if (e > kMaxExponent) throw BoundExceeded("exponent " + to_string(e) + " is too large to materialize");
    return e.get_ui();
}

/// (n^k - 1) / (n - 1), or k when n = 1.
Integer
geometric(unsigned n, unsigned k)
{
    if (n == 1) return Integer(k);
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), n, k);
    return Integer((p - 1) / (n - 1));
}

/// Weights (good: (1-w)/Gd, other allowed: w/(Aw-Gd), rest 0), or 1/Gd on the good
/// actions when every allowed action is good.
ActionDistribution
mix(std::size_t width, const std::vector<bool>& allowed, const std::vector<ActionId>& good, const Rational& w)
{
    ActionDistribution row(width, Rational(0));
    const std::size_t aw = static_cast<std::size_t>(std::count(allowed.begin(), allowed.end(), true));
    const std::size_t gd = good.size();
    if (gd == aw) {
        for (ActionId a : good) row[a] = make_rational(1, static_cast<long>(gd));
        return row;
    }
    Rational on_good = (1 - w) / Rational(static_cast<long>(gd));
    Rational on_other = w / Rational(static_cast<long>(aw - gd));
    for (std::size_t a = 0; a < width; ++a) {
        if (allowed[a]) row[a] = on_other;
    }
    for (ActionId a : good) row[a] = on_good;
    return row;
}

std::vector<bool>
mask_of(std::size_t width, const std::vector<ActionId>& ids)
{
    std::vector<bool> m(width, false);
    for (ActionId a : ids) m[a] = true;
    return m;
}

ActionDistribution
uniform_row(std::size_t width)
{
    return ActionDistribution(width, make_rational(1, static_cast<long>(width)));
}

/// Uniform over the player-2 actions outside `bad`; throws when none remain.
ActionDistribution
uniform_outside(const GameStructure& g, StateId s, const std::vector<ActionId>& bad)
{
    const std::size_t k2 = g.num_actions(Player::Two, s);
    if (bad.size() == k2) throw ConsistencyError("every player-2 action at '" + g.state_name(s) + "' is bad");
    ActionDistribution row(k2, make_rational(1, static_cast<long>(k2 - bad.size())));
    for (ActionId b : bad) row[b] = 0;
    return row;
}

void
require_chain(const SolveReport& r)
{
    if (r.winning.is_empty()) return;
    if (r.y_chain.empty() || !(r.y_chain.back() == r.winning)) throw ContractViolation("solve report lacks a Y-chain ending in its winning set");
}

} // namespace

Rational
beta(unsigned j, unsigned n, unsigned m, const Rational& delta_min, const Rational& eps)
{
    if (j < 2 || n < 1 || m < 1) throw ContractViolation("beta needs j >= 2, n >= 1, m >= 1");
    if (delta_min <= 0 || delta_min > 1) throw ContractViolation("beta needs 0 < delta_min <= 1");
    if (eps <= 0 || eps > 1) throw ContractViolation("beta needs 0 < eps <= 1");
    const unsigned long e1 = small_exponent(geometric(n, j - 1));
    const unsigned long e2 = small_exponent(geometric(n, j));
    Rational ratio = delta_min / Rational(static_cast<long>(m));
    Rational r = pow(eps, e2) * pow(ratio, e2 - 1);
    Rational scale = pow(Rational(static_cast<long>(n)), e1);
    r /= scale;
    return r;
}

bool
patience_within_bound(const Rational& patience, unsigned n, unsigned m, const Rational& delta_min, const Rational& eps)
{
    Rational base = Rational(static_cast<long>(n) * static_cast<long>(m)) / (delta_min * eps);
    if (base <= 1) return patience <= 1;
    Integer exponent;
    mpz_ui_pow_ui(exponent.get_mpz_t(), n, n + 2);
    return power_at_least(base, exponent, patience);
}

StationaryStrategy
synth_eps_stationary(const GameStructure& g, const SolveReport& almost, const Rational& eps)
{
    if (eps <= 0 || eps >= 1) throw ContractViolation("eps must lie in (0,1)");
    require_chain(almost);
    const std::size_t n = g.num_states();
    StationaryStrategy sigma = uniform_strategy(g, Player::One);
    if (almost.winning.is_empty()) return sigma;

    const StateSet& X = almost.winning;
    const auto& chain = almost.y_chain;
    const std::size_t l = chain.size();
    std::map<unsigned, Rational> betas;
    for (std::size_t k = 0; k < l; ++k) {
        // layer Y_{l-k} \ Y_{l-k-1}
        const StateSet& Z = chain[l - k - 1];
        StateSet Y = l - k - 1 == 0 ? StateSet(n) : chain[l - k - 2];
        for (StateId s : (Z - Y).members()) {
            const std::size_t k1 = g.num_actions(Player::One, s);
            auto allowed = mask_of(k1, allow1(g, s, X));
            auto good = good1(g, s, X, Y, Z);
            if (good.empty()) throw ConsistencyError("no good action at '" + g.state_name(s) + "' inside its layer");
            Rational w = eps;
            std::size_t aw = static_cast<std::size_t>(std::count(allowed.begin(), allowed.end(), true));
            if (k > 0 && good.size() != aw) {
                unsigned j = static_cast<unsigned>(k + 1);
                auto it = betas.find(j);
                if (it == betas.end()) {
                    it = betas.emplace(j, beta(j, static_cast<unsigned>(n), static_cast<unsigned>(g.max_actions()), g.delta_min(), eps)).first;
                }
                w = it->second;
            }
            sigma.dist[s] = mix(k1, allowed, good, w);
        }
    }
    return sigma;
}

std::uint64_t
compute_horizon(const GameStructure& g, const StationaryStrategy& sigma, const StateSet& Xstar, const Rational& eps,
                const HorizonOptions& opts)
{
    if (sigma.player != Player::One) throw ContractViolation("compute_horizon needs a player-1 strategy");
    if (Xstar.is_empty()) return 1;

    // Rows of the minimizing MDP over X*, with integer coefficients over a
    // common denominator L: next(s) = min_b floor((R*2^bits + sum c_t V_t) / L).
    struct Row
    {
        Integer L;
        Integer reward; // r * L * 2^bits
        std::vector<std::pair<std::size_t, Integer>> terms;
    };
    const auto states = Xstar.members();
    std::vector<std::size_t> pos(g.num_states(), SIZE_MAX);
    for (std::size_t i = 0; i < states.size(); ++i) pos[states[i]] = i;
    std::vector<std::vector<Row>> rows(states.size());
    // the grid must resolve eps, or 1 - 2*eps is never certified
    Integer inv = (Integer(eps.get_den()) + eps.get_num() - 1) / eps.get_num();
    Integer one_grid = 1;
    one_grid <<= opts.grid_bits + mpz_sizeinbase(inv.get_mpz_t(), 2);

    for (std::size_t i = 0; i < states.size(); ++i) {
        StateId s = states[i];
        for (ActionId b = 0; b < g.num_actions(Player::Two, s); ++b) {
            Rational r = 0;
            std::map<StateId, Rational> next;
            for (ActionId a = 0; a < g.num_actions(Player::One, s); ++a) {
                const Rational& w = sigma.dist[s][a];
                if (w == 0) continue;
                r += w * g.reward(s, a, b);
                for (const Outcome& o : g.move(s, a, b).distribution) next[o.target] += w * o.probability;
            }
            Integer L = r.get_den();
            for (const auto& [t, p] : next) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), p.get_den().get_mpz_t());
            Row row;
            row.L = L;
            row.reward = Integer(r.get_num() * (L / r.get_den())) * one_grid;
            for (const auto& [t, p] : next) {
                if (pos[t] == SIZE_MAX) throw ContractViolation("strategy leaves X* from '" + g.state_name(s) + "'");
                row.terms.emplace_back(pos[t], Integer(p.get_num() * (L / p.get_den())));
            }
            rows[i].push_back(std::move(row));
        }
    }

    std::vector<Integer> V(states.size(), Integer(0)), W(states.size());
    Rational target = (1 - 2 * eps) * Rational(one_grid);
    Rational best = 0;
    Integer acc, q;
    for (std::uint64_t T = 1; T <= opts.cap; ++T) {
        Integer worst;
        for (std::size_t i = 0; i < states.size(); ++i) {
            bool first = true;
            for (const Row& row : rows[i]) {
                acc = row.reward;
                for (const auto& [j, c] : row.terms) acc += c * V[j];
                mpz_fdiv_q(q.get_mpz_t(), acc.get_mpz_t(), row.L.get_mpz_t());
                if (first || q < W[i]) W[i] = q;
                first = false;
            }
            if (i == 0 || W[i] < worst) worst = W[i];
        }
        std::swap(V, W);
        Rational avg(worst, Integer(T));
        avg.canonicalize();
        if (avg >= target) return T;
        if (avg > best) best = avg;
    }
    throw HorizonExceeded(opts.cap, best / Rational(one_grid));
}

RoundIndexedStrategy
synth_markov_almost(std::shared_ptr<const GameStructure> g, const SolveReport& almost, const HorizonOptions& opts)
{
    if (almost.winning.is_empty()) throw ContractViolation("the almost-sure winning set is empty");
    require_chain(almost);
    auto report = std::make_shared<const SolveReport>(almost);
    auto gen = [g, report, opts](std::size_t i) {
        Rational eps = make_rational(1, 4) / pow(Rational(2), static_cast<unsigned long>(i));
        auto sigma = std::make_shared<const StationaryStrategy>(synth_eps_stationary(*g, *report, eps));
        std::uint64_t J = compute_horizon(*g, *sigma, report->winning, eps, opts);
        return Segment{J, sigma};
    };
    return RoundIndexedStrategy(Player::One, MarkovKind::EpsilonHalvingAlmostSure, {{"eps1", "1/4"}, {"ratio", "1/2"}}, {}, gen);
}

Rational
spoiler_gap(const GameStructure& g)
{
    Rational ratio = g.delta_min() / Rational(static_cast<long>(g.max_actions()));
    Rational c = pow(ratio, g.num_states() - 1) / Rational(static_cast<long>(g.max_actions()));
    return c;
}

StationaryStrategy
spoiler_round(const GameStructure& g, const SolveReport& almost, const Rational& eps, std::uint64_t round)
{
    if (almost.x_chain.empty()) throw ContractViolation("spoiler synthesis needs the outer X-chain");
    if (round == 0) throw ContractViolation("rounds are numbered from 1");
    StationaryStrategy sigma = uniform_strategy(g, Player::Two);
    const auto& xs = almost.x_chain;
    if (xs.size() < 2) return sigma;
    Rational coin = eps / pow(Rational(2), round);
    const StateSet S = g.all_states();
    for (StateId s : (S - xs[1]).members()) sigma.dist[s] = uniform_outside(g, s, bad2(g, s, S, xs[1]));
    for (std::size_t j = 2; j < xs.size(); ++j) {
        for (StateId s : (xs[j - 1] - xs[j]).members()) {
            const std::size_t k2 = g.num_actions(Player::Two, s);
            ActionDistribution safe = uniform_outside(g, s, bad2(g, s, xs[j - 1], xs[j]));
            ActionDistribution row(k2);
            Rational all = coin / Rational(static_cast<long>(k2));
            for (std::size_t b = 0; b < k2; ++b) row[b] = all + (1 - coin) * safe[b];
            sigma.dist[s] = std::move(row);
        }
    }
    return sigma;
}

RoundIndexedStrategy
synth_spoiler_markov(std::shared_ptr<const GameStructure> g, const SolveReport& almost, const Rational& eps)
{
    if (eps <= 0 || eps >= 1) throw ContractViolation("spoiler eps must lie in (0,1)");
    if (almost.winning == g->all_states()) throw ContractViolation("player 1 wins almost surely everywhere; nothing to spoil");
    if (almost.x_chain.empty()) throw ContractViolation("spoiler synthesis needs the outer X-chain");
    auto report = std::make_shared<const SolveReport>(almost);
    auto f = [g, report, eps](std::uint64_t round) { return spoiler_round(*g, *report, eps, round); };
    return RoundIndexedStrategy::per_round(Player::Two, MarkovKind::SpoilerMarkov,
                                           {{"eps", to_string(eps)}, {"c", to_string(spoiler_gap(*g))}}, f);
}

StationaryStrategy
synth_positive_spoiler_stationary(const GameStructure& g, const SolveReport& positive)
{
    if (positive.winning == g.all_states()) throw ContractViolation("player 1 wins positively everywhere; nothing to spoil");
    StationaryStrategy sigma = uniform_strategy(g, Player::Two);
    const StateSet S = g.all_states();
    for (StateId s : (S - positive.winning).members()) sigma.dist[s] = uniform_outside(g, s, bad2(g, s, S, positive.winning));
    return sigma;
}

StationaryStrategy
positive_round(const GameStructure& g, const SolveReport& positive, std::uint64_t k)
{
    if (k == 0) throw ContractViolation("rounds are numbered from 1");
    require_chain(positive);
    StationaryStrategy sigma = uniform_strategy(g, Player::One);
    Rational eps = make_rational(1, 4) / pow(Rational(2), k - 1);
    const StateSet S = g.all_states();
    const auto& chain = positive.y_chain;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        StateSet Y = i == 0 ? StateSet(g.num_states()) : chain[i - 1];
        for (StateId s : (chain[i] - Y).members()) {
            const std::size_t k1 = g.num_actions(Player::One, s);
            auto good = good1(g, s, S, Y, chain[i]);
            if (good.empty()) throw ConsistencyError("no good action at '" + g.state_name(s) + "' inside its layer");
            sigma.dist[s] = mix(k1, std::vector<bool>(k1, true), good, eps);
        }
    }
    return sigma;
}

RoundIndexedStrategy
synth_positive_markov(std::shared_ptr<const GameStructure> g, const SolveReport& positive)
{
    if (positive.winning.is_empty()) throw ContractViolation("the positive winning set is empty");
    require_chain(positive);
    auto report = std::make_shared<const SolveReport>(positive);
    auto f = [g, report](std::uint64_t k) { return positive_round(*g, *report, k); };
    return RoundIndexedStrategy::per_round(Player::One, MarkovKind::PositiveMarkov, {{"eps1", "1/4"}, {"ratio", "1/2"}}, f);
}

} // namespace cmpg
