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

#include "cmpg/verify.hpp"

#include "cmpg/errors.hpp"
#include "cmpg/generators.hpp"

#include <algorithm>
#include <sstream>

namespace cmpg {

bool
VerificationReport::passed() const
{
    return std::all_of(entries.begin(), entries.end(), [](const VerificationEntry& e) { return e.pass; });
}

const VerificationEntry*
VerificationReport::find(StateId s) const
{
    for (const auto& e : entries) {
        if (e.state == s) return &e;
    }
    return nullptr;
}

std::string
format_report(const GameStructure& g, const VerificationReport& r)
{
    std::vector<const VerificationEntry*> order;
    for (const auto& e : r.entries) order.push_back(&e);
    std::sort(order.begin(), order.end(), [&](auto* x, auto* y) { return g.state_name(x->state) < g.state_name(y->state); });
    std::ostringstream out;
    for (const auto* e : order) {
        out << g.state_name(e->state) << " value=" << to_string(e->value) << " pass=" << (e->pass ? "yes" : "no");
        if (!e->safe) out << " unsafe";
        out << "\n";
    }
    if (r.witness) {
        std::vector<std::pair<std::string, std::string>> lines;
        for (StateId s = 0; s < r.witness->size(); ++s) {
            const auto& x = (*r.witness)[s];
            if (x) lines.emplace_back(g.state_name(s), g.actions(r.witness_player, s)[*x]);
        }
        std::sort(lines.begin(), lines.end());
        out << "witness player=" << static_cast<int>(r.witness_player) << "\n";
        for (const auto& [s, a] : lines) out << s << " " << a << "\n";
    }
    return out.str();
}

namespace {

/// Whether some positive-probability joint move at s leaves `region`.
bool
exits(const GameStructure& g, const StationaryStrategy& sigma, StateId s, const StateSet& region)
{
    const Player free = opponent(sigma.player);
    for (ActionId y = 0; y < g.num_actions(sigma.player, s); ++y) {
        if (sigma.dist[s][y] == 0) continue;
        for (ActionId x = 0; x < g.num_actions(free, s); ++x) {
            auto support = sigma.player == Player::One ? g.succ(s, y, x) : g.succ(s, x, y);
            for (StateId t : support) {
                if (!region.contains(t)) return true;
            }
        }
    }
    return false;
}

VerificationReport
check(const GameStructure& g, const StationaryStrategy& sigma, const StateSet& region, Objective obj, const Rational& threshold,
      const std::string& claim, const MdpOptions& opts)
{
    validate_strategy(g, sigma);
    if (region.universe() != g.num_states()) throw ContractViolation("state set has the wrong universe");
    VerificationReport report;
    report.claim = claim;
    report.threshold = threshold;
    report.witness_player = opponent(sigma.player);
    if (region.is_empty()) return report;

    Mdp m = fix_strategy(g, sigma);
    SubMdp sub = reachable_part(m, region);
    MdpSolution sol = mdp_mean_payoff(sub.mdp, obj, opts);
    for (StateId s : region.members()) {
        VerificationEntry e;
        e.state = s;
        e.value = sol.value[sub.local[s]];
        e.safe = !exits(g, sigma, s, region);
        bool ok = obj == Objective::Minimize ? e.value >= threshold : e.value <= threshold;
        e.pass = e.safe && ok;
        report.entries.push_back(e);
    }
    if (!report.passed()) {
        std::vector<std::optional<ActionId>> w(g.num_states());
        for (std::size_t i = 0; i < sub.states.size(); ++i) w[sub.states[i]] = sol.policy[i];
        report.witness = std::move(w);
    }
    return report;
}

} // namespace

VerificationReport
verify_eps_claim(const GameStructure& g, const StationaryStrategy& sigma, const StateSet& Xstar, const Rational& eps,
                 const MdpOptions& opts)
{
    if (sigma.player != Player::One) throw ContractViolation("verify_eps_claim needs a player-1 strategy");
    return check(g, sigma, Xstar, Objective::Minimize, 1 - eps, "eps-as", opts);
}

VerificationReport
verify_spoiler_stationary(const GameStructure& g, const StationaryStrategy& sigma2, const StateSet& region, const Rational& c,
                          const MdpOptions& opts)
{
    if (sigma2.player != Player::Two) throw ContractViolation("verify_spoiler_stationary needs a player-2 strategy");
    return check(g, sigma2, region, Objective::Maximize, 1 - c, "spoiler-pos", opts);
}

bool
below_patience_floor(const Rational& patience, unsigned n, const Rational& eps)
{
    if (n < 1 || n > 24) throw ContractViolation("patience floor needs 1 <= n <= 24");
    if (eps <= 0 || eps >= 1) throw ContractViolation("eps must lie in (0,1)");
    // patience < (1/eps)^{3^{n-1}/2^{n-1}}  iff  patience^{2^{n-1}} < (1/eps)^{3^{n-1}}
    unsigned long two = 1, three = 1;
    for (unsigned i = 1; i < n; ++i) {
        two *= 2;
        three *= 3;
    }
    return pow(patience, two) < pow(1 / eps, three);
}

bool
patience_floor_check(unsigned n, const Rational& eps, const StationaryStrategy& candidate, const MdpOptions& opts)
{
    GameStructure g = gen_gn(n);
    if (!below_patience_floor(patience(candidate), n, eps)) return true;
    return !verify_eps_claim(g, candidate, g.all_states(), eps, opts).passed();
}

} // namespace cmpg
