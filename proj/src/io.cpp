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

#include "cmpg/io.hpp"

#include "cmpg/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace cmpg {

using Kind = ValidationError::Kind;

std::vector<std::string>
split_words(std::string_view line)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

namespace {

struct Line
{
    std::size_t number;
    std::vector<std::string> words;
};

std::vector<Line>
tokenize(std::string_view text)
{
    std::vector<Line> lines;
    std::size_t number = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        auto hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        auto words = split_words(raw);
        if (!words.empty()) lines.push_back({number, std::move(words)});
        pos = end + 1;
    }
    return lines;
}

std::string
at_line(std::size_t line, const std::string& what)
{
    return "line " + std::to_string(line) + ": " + what;
}

Rational
rational_or_throw(const std::string& text, std::size_t line)
{
    auto q = parse_rational(text);
    if (!q) throw ParseError(line, "malformed rational '" + text + "'");
    return *q;
}

/// "key=value" -> value, or ParseError.
std::string
keyed(const std::string& word, const std::string& key, std::size_t line)
{
    if (word.size() <= key.size() + 1 || word.compare(0, key.size(), key) != 0 || word[key.size()] != '=') {
        throw ParseError(line, "expected " + key + "=...");
    }
    return word.substr(key.size() + 1);
}

Player
player_or_throw(const std::string& word, std::size_t line)
{
    std::string v = keyed(word, "player", line);
    if (v == "1") return Player::One;
    if (v == "2") return Player::Two;
    throw ParseError(line, "player must be 1 or 2");
}

std::string
strip_colon(const std::string& w)
{
    if (!w.empty() && w.back() == ':') return w.substr(0, w.size() - 1);
    return w;
}

} // namespace

GameStructure
parse_game(std::string_view text, RewardRange range)
{
    auto lines = tokenize(text);
    GameData d;
    bool have_name = false;
    std::unordered_map<std::string, StateId> index;

    for (const Line& ln : lines) {
        const auto& w = ln.words;
        if (w[0] == "game") {
            if (w.size() != 2) throw ParseError(ln.number, "expected 'game NAME'");
            if (have_name) throw ParseError(ln.number, "duplicate game line");
            d.name = w[1];
            have_name = true;
        } else if (w[0] == "state") {
            if (w.size() != 2) throw ParseError(ln.number, "expected 'state SID'");
            if (!index.emplace(w[1], static_cast<StateId>(d.states.size())).second) {
                throw ValidationError(Kind::DuplicateName, at_line(ln.number, "duplicate state '" + w[1] + "'"));
            }
            d.states.push_back(w[1]);
        } else if (w[0] != "actions1" && w[0] != "actions2" && w[0] != "trans") {
            throw ParseError(ln.number, "unknown directive '" + w[0] + "'");
        }
    }
    if (!have_name) throw ParseError(lines.empty() ? 1 : lines.front().number, "missing 'game NAME' line");

    const std::size_t n = d.states.size();
    d.actions1.resize(n);
    d.actions2.resize(n);
    std::vector<bool> seen1(n), seen2(n);
    auto state_of = [&](const std::string& name, std::size_t line) {
        auto it = index.find(name);
        if (it == index.end()) throw ValidationError(Kind::UnknownName, at_line(line, "unknown state '" + name + "'"));
        return it->second;
    };

    for (const Line& ln : lines) {
        const auto& w = ln.words;
        if (w[0] != "actions1" && w[0] != "actions2") continue;
        if (w.size() < 2) throw ParseError(ln.number, "expected '" + w[0] + " SID A1 A2 ...'");
        StateId s = state_of(w[1], ln.number);
        auto& seen = w[0] == "actions1" ? seen1 : seen2;
        if (seen[s]) throw ValidationError(Kind::DuplicateName, at_line(ln.number, "second " + w[0] + " line for '" + w[1] + "'"));
        seen[s] = true;
        auto& dst = w[0] == "actions1" ? d.actions1[s] : d.actions2[s];
        dst.assign(w.begin() + 2, w.end());
        if (dst.empty()) {
            throw ValidationError(Kind::EmptyActionSet, at_line(ln.number, "empty action set for '" + w[1] + "'"));
        }
    }
    for (StateId s = 0; s < n; ++s) {
        if (d.actions1[s].empty()) throw ValidationError(Kind::EmptyActionSet, "state '" + d.states[s] + "' has no actions1 line");
        if (d.actions2[s].empty()) throw ValidationError(Kind::EmptyActionSet, "state '" + d.states[s] + "' has no actions2 line");
    }

    d.moves.resize(n);
    std::vector<std::vector<bool>> defined(n);
    for (StateId s = 0; s < n; ++s) {
        d.moves[s].resize(d.actions1[s].size() * d.actions2[s].size());
        defined[s].assign(d.moves[s].size(), false);
    }
    auto action_of = [&](const std::vector<std::string>& acts, const std::string& name, const std::string& sname, std::size_t line) {
        for (std::size_t i = 0; i < acts.size(); ++i) {
            if (acts[i] == name) return static_cast<ActionId>(i);
        }
        throw ValidationError(Kind::UnknownName, at_line(line, "unknown action '" + name + "' at state '" + sname + "'"));
    };

    for (const Line& ln : lines) {
        const auto& w = ln.words;
        if (w[0] != "trans") continue;
        if (w.size() < 7 || w[5] != "->") throw ParseError(ln.number, "expected 'trans SID A B r=R -> T:P ...'");
        StateId s = state_of(w[1], ln.number);
        ActionId a = action_of(d.actions1[s], w[2], w[1], ln.number);
        ActionId b = action_of(d.actions2[s], w[3], w[1], ln.number);
        std::size_t k = a * d.actions2[s].size() + b;
        if (defined[s][k]) {
            throw ValidationError(Kind::DuplicateName, at_line(ln.number, "second transition for (" + w[1] + ", " + w[2] + ", " + w[3] + ")"));
        }
        defined[s][k] = true;
        JointMove& mv = d.moves[s][k];
        mv.reward = rational_or_throw(keyed(w[4], "r", ln.number), ln.number);
        if (range == RewardRange::UnitInterval && (mv.reward < 0 || mv.reward > 1)) {
            throw ValidationError(Kind::RewardOutOfRange, at_line(ln.number, "reward " + to_string(mv.reward) + " outside [0,1]"));
        }
        Rational sum = 0;
        for (std::size_t i = 6; i < w.size(); ++i) {
            auto colon = w[i].rfind(':');
            if (colon == std::string::npos || colon == 0) throw ParseError(ln.number, "expected TARGET:PROB, got '" + w[i] + "'");
            StateId t = state_of(w[i].substr(0, colon), ln.number);
            Rational p = rational_or_throw(w[i].substr(colon + 1), ln.number);
            if (p <= 0) throw ValidationError(Kind::NonPositiveWeight, at_line(ln.number, "non-positive probability " + to_string(p)));
            sum += p;
            mv.distribution.push_back({t, p});
        }
        if (sum != 1) throw ValidationError(Kind::DistributionSum, at_line(ln.number, "distribution sums to " + to_string(sum)));
    }
    for (StateId s = 0; s < n; ++s) {
        for (std::size_t k = 0; k < defined[s].size(); ++k) {
            if (!defined[s][k]) {
                std::size_t k2 = d.actions2[s].size();
                throw ValidationError(Kind::MissingTransition, "missing transition (" + d.states[s] + ", " + d.actions1[s][k / k2] +
                                                                   ", " + d.actions2[s][k % k2] + ")");
            }
        }
    }
    return GameStructure(std::move(d), range);
}

std::string
serialize_game(const GameStructure& g)
{
    std::ostringstream out;
    out << "game " << g.name() << "\n";
    for (StateId s = 0; s < g.num_states(); ++s) out << "state " << g.state_name(s) << "\n";
    for (StateId s = 0; s < g.num_states(); ++s) {
        out << "actions1 " << g.state_name(s);
        for (const auto& a : g.actions(Player::One, s)) out << " " << a;
        out << "\nactions2 " << g.state_name(s);
        for (const auto& b : g.actions(Player::Two, s)) out << " " << b;
        out << "\n";
    }
    for (StateId s = 0; s < g.num_states(); ++s) {
        for (ActionId a = 0; a < g.num_actions(Player::One, s); ++a) {
            for (ActionId b = 0; b < g.num_actions(Player::Two, s); ++b) {
                const JointMove& mv = g.move(s, a, b);
                out << "trans " << g.state_name(s) << " " << g.actions(Player::One, s)[a] << " "
                    << g.actions(Player::Two, s)[b] << " r=" << to_string(mv.reward) << " ->";
                for (const Outcome& o : mv.distribution) out << " " << g.state_name(o.target) << ":" << to_string(o.probability);
                out << "\n";
            }
        }
    }
    return out.str();
}

Dmpg
parse_dmpg(std::string_view text)
{
    auto lines = tokenize(text);
    std::string name;
    bool have_name = false;
    std::vector<std::string> nodes;
    std::vector<Player> owners;
    std::unordered_map<std::string, NodeId> index;
    for (const Line& ln : lines) {
        const auto& w = ln.words;
        if (w[0] == "dmpg") {
            if (w.size() != 2) throw ParseError(ln.number, "expected 'dmpg NAME'");
            if (have_name) throw ParseError(ln.number, "duplicate dmpg line");
            name = w[1];
            have_name = true;
        } else if (w[0] == "node") {
            if (w.size() != 3) throw ParseError(ln.number, "expected 'node SID owner=1|2'");
            std::string o = keyed(w[2], "owner", ln.number);
            if (o != "1" && o != "2") throw ParseError(ln.number, "owner must be 1 or 2");
            if (!index.emplace(w[1], static_cast<NodeId>(nodes.size())).second) {
                throw ValidationError(Kind::DuplicateName, at_line(ln.number, "duplicate node '" + w[1] + "'"));
            }
            nodes.push_back(w[1]);
            owners.push_back(o == "1" ? Player::One : Player::Two);
        } else if (w[0] != "edge") {
            throw ParseError(ln.number, "unknown directive '" + w[0] + "'");
        }
    }
    if (!have_name) throw ParseError(lines.empty() ? 1 : lines.front().number, "missing 'dmpg NAME' line");

    std::vector<DmpgEdge> edges;
    for (const Line& ln : lines) {
        const auto& w = ln.words;
        if (w[0] != "edge") continue;
        if (w.size() != 4) throw ParseError(ln.number, "expected 'edge SID TID r=INT'");
        auto src = index.find(w[1]), dst = index.find(w[2]);
        if (src == index.end() || dst == index.end()) {
            throw ValidationError(Kind::UnknownName, at_line(ln.number, "edge references an unknown node"));
        }
        std::string r = keyed(w[3], "r", ln.number);
        std::size_t used = 0;
        long value = 0;
        try {
            value = std::stol(r, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != r.size() || r.empty()) throw ParseError(ln.number, "edge reward must be an integer");
        if (value < 0) throw ValidationError(Kind::RewardOutOfRange, at_line(ln.number, "edge reward must be nonnegative"));
        edges.push_back({src->second, dst->second, value});
    }
    return Dmpg(name, std::move(nodes), std::move(owners), std::move(edges));
}

std::string
serialize_dmpg(const Dmpg& d)
{
    std::ostringstream out;
    out << "dmpg " << d.name() << "\n";
    for (NodeId v = 0; v < d.num_nodes(); ++v) {
        out << "node " << d.node_name(v) << " owner=" << static_cast<int>(d.owner(v)) << "\n";
    }
    for (const DmpgEdge& e : d.edges()) {
        out << "edge " << d.node_name(e.source) << " " << d.node_name(e.target) << " r=" << e.reward << "\n";
    }
    return out.str();
}

namespace {

void
write_row(std::ostringstream& out, const std::vector<std::string>& actions, const ActionDistribution& row)
{
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i] > 0) out << " " << actions[i] << "=" << to_string(row[i]);
    }
    out << "\n";
}

void
write_rows(std::ostringstream& out, const GameStructure& g, const StationaryStrategy& sigma)
{
    for (StateId s = 0; s < g.num_states(); ++s) {
        out << "at " << g.state_name(s) << ":";
        write_row(out, g.actions(sigma.player, s), sigma.dist[s]);
    }
}

/// Parses "A=w A=w ..." tokens starting at words[from].
ActionDistribution
parse_row(const GameStructure& g, Player p, StateId s, const std::vector<std::string>& words, std::size_t from, std::size_t line)
{
    ActionDistribution row(g.num_actions(p, s), Rational(0));
    std::vector<bool> seen(row.size(), false);
    for (std::size_t i = from; i < words.size(); ++i) {
        auto eq = words[i].rfind('=');
        if (eq == std::string::npos || eq == 0) throw ParseError(line, "expected ACTION=p/q, got '" + words[i] + "'");
        auto a = g.find_action(p, s, words[i].substr(0, eq));
        if (!a) throw ValidationError(Kind::UnknownName, at_line(line, "unknown action '" + words[i].substr(0, eq) + "'"));
        if (seen[*a]) throw ValidationError(Kind::DuplicateName, at_line(line, "action listed twice"));
        seen[*a] = true;
        row[*a] = rational_or_throw(words[i].substr(eq + 1), line);
        if (row[*a] <= 0) throw ValidationError(Kind::NonPositiveWeight, at_line(line, "non-positive strategy weight"));
    }
    Rational sum = 0;
    for (const Rational& w : row) sum += w;
    if (sum != 1) throw ValidationError(Kind::DistributionSum, at_line(line, "distribution sums to " + to_string(sum)));
    return row;
}

StateId
state_or_throw(const GameStructure& g, const std::string& name, std::size_t line)
{
    auto s = g.find_state(name);
    if (!s) throw ValidationError(Kind::UnknownName, at_line(line, "unknown state '" + name + "'"));
    return *s;
}

/// Consumes "at SID: ..." lines from lines[i...] for every state; returns the strategy.
StationaryStrategy
parse_block(const GameStructure& g, Player p, const std::vector<Line>& lines, std::size_t& i)
{
    StationaryStrategy sigma{p, {}};
    sigma.dist.resize(g.num_states());
    std::vector<bool> seen(g.num_states(), false);
    std::size_t last_line = i > 0 ? lines[i - 1].number : 1;
    while (i < lines.size() && lines[i].words[0] == "at") {
        const Line& ln = lines[i];
        if (ln.words.size() < 2) throw ParseError(ln.number, "expected 'at SID: ...'");
        std::size_t from = 2;
        std::string sname = ln.words[1];
        if (sname.back() == ':') {
            sname.pop_back();
        } else if (ln.words.size() > 2 && ln.words[2] == ":") {
            from = 3;
        } else {
            throw ParseError(ln.number, "expected ':' after state name");
        }
        StateId s = state_or_throw(g, sname, ln.number);
        if (seen[s]) throw ValidationError(Kind::DuplicateName, at_line(ln.number, "state listed twice"));
        seen[s] = true;
        sigma.dist[s] = parse_row(g, p, s, ln.words, from, ln.number);
        last_line = ln.number;
        ++i;
    }
    for (StateId s = 0; s < g.num_states(); ++s) {
        if (!seen[s]) throw ValidationError(Kind::BadStrategy, at_line(last_line, "no distribution for state '" + g.state_name(s) + "'"));
    }
    return sigma;
}

} // namespace

std::string
serialize_strategy(const GameStructure& g, const StationaryStrategy& sigma)
{
    std::ostringstream out;
    out << "stationary player=" << static_cast<int>(sigma.player) << "\n";
    write_rows(out, g, sigma);
    return out.str();
}

std::string
serialize_strategy(const GameStructure& g, const RoundIndexedStrategy& sigma, std::uint64_t rounds)
{
    std::ostringstream out;
    out << "markov player=" << static_cast<int>(sigma.player()) << " kind=" << markov_kind_name(sigma.kind());
    for (const auto& [k, v] : sigma.params()) out << " " << k << "=" << v;
    out << "\n";
    std::uint64_t start = 1;
    for (const Segment& seg : sigma.prefix(rounds)) {
        out << "segment " << start << "..";
        if (seg.length == 0) {
            out << "rest";
        } else {
            out << start + seg.length - 1;
        }
        out << ":\n";
        write_rows(out, g, *seg.strategy);
        start += seg.length;
    }
    return out.str();
}

std::string
serialize_strategy(const GameStructure& g, const FiniteMemoryStrategy& fm)
{
    std::ostringstream out;
    out << "finite player=" << static_cast<int>(fm.player) << " memory=";
    for (std::size_t m = 0; m < fm.memory.size(); ++m) out << (m ? "," : "") << fm.memory[m];
    out << " initial=" << fm.memory[fm.initial] << "\n";
    for (StateId s = 0; s < g.num_states(); ++s) {
        for (std::size_t m = 0; m < fm.memory.size(); ++m) {
            out << "move " << g.state_name(s) << " " << fm.memory[m] << ":";
            write_row(out, g.actions(fm.player, s), fm.next_move[s][m]);
        }
    }
    for (StateId s = 0; s < g.num_states(); ++s) {
        std::size_t k2 = g.num_actions(Player::Two, s);
        for (std::size_t k = 0; k < fm.update[s].size(); ++k) {
            for (std::size_t m = 0; m < fm.memory.size(); ++m) {
                if (fm.update[s][k][m] == m) continue;
                out << "update " << g.state_name(s) << " " << g.actions(Player::One, s)[k / k2] << " "
                    << g.actions(Player::Two, s)[k % k2] << " " << fm.memory[m] << " -> " << fm.memory[fm.update[s][k][m]] << "\n";
            }
        }
    }
    return out.str();
}

StrategyFile
parse_strategy(const GameStructure& g, std::string_view text)
{
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, "empty strategy file");
    StrategyFile file;
    const Line& head = lines[0];
    const auto& hw = head.words;
    std::size_t i = 1;

    if (hw[0] == "stationary") {
        if (hw.size() != 2) throw ParseError(head.number, "expected 'stationary player=1|2'");
        file.kind = StrategyFileKind::Stationary;
        file.stationary = parse_block(g, player_or_throw(hw[1], head.number), lines, i);
    } else if (hw[0] == "markov") {
        if (hw.size() < 3) throw ParseError(head.number, "expected 'markov player=1|2 kind=TAG ...'");
        file.kind = StrategyFileKind::Markov;
        MarkovFile& mf = file.markov;
        mf.player = player_or_throw(hw[1], head.number);
        auto kind = parse_markov_kind(keyed(hw[2], "kind", head.number));
        if (!kind) throw ParseError(head.number, "unknown strategy kind");
        mf.kind = *kind;
        for (std::size_t k = 3; k < hw.size(); ++k) {
            auto eq = hw[k].find('=');
            if (eq == std::string::npos || eq == 0) throw ParseError(head.number, "expected key=value");
            mf.params[hw[k].substr(0, eq)] = hw[k].substr(eq + 1);
        }
        std::uint64_t expect = 1;
        bool open_ended = false;
        while (i < lines.size()) {
            const Line& ln = lines[i];
            if (ln.words[0] != "segment" || ln.words.size() != 2) throw ParseError(ln.number, "expected 'segment L..U:'");
            if (open_ended) throw ParseError(ln.number, "segment after an unbounded segment");
            std::string range = strip_colon(ln.words[1]);
            auto dots = range.find("..");
            if (dots == std::string::npos) throw ParseError(ln.number, "expected L..U");
            std::uint64_t lo = 0, hi = 0;
            try {
                lo = std::stoull(range.substr(0, dots));
                std::string upper = range.substr(dots + 2);
                if (upper == "rest") {
                    open_ended = true;
                } else {
                    hi = std::stoull(upper);
                }
            } catch (const std::exception&) {
                throw ParseError(ln.number, "malformed segment range");
            }
            if (lo != expect || (!open_ended && hi < lo)) throw ParseError(ln.number, "segments must be consecutive, starting at round 1");
            ++i;
            Segment seg;
            seg.length = open_ended ? 0 : hi - lo + 1;
            seg.strategy = std::make_shared<const StationaryStrategy>(parse_block(g, mf.player, lines, i));
            mf.segments.push_back(std::move(seg));
            expect = hi + 1;
        }
        if (mf.kind == MarkovKind::Explicit && mf.segments.empty()) throw ParseError(head.number, "explicit strategy without segments");
        return file;
    } else if (hw[0] == "finite") {
        if (hw.size() != 4) throw ParseError(head.number, "expected 'finite player=1|2 memory=M0,M1 initial=M0'");
        file.kind = StrategyFileKind::FiniteMemory;
        FiniteMemoryStrategy& fm = file.finite;
        fm.player = player_or_throw(hw[1], head.number);
        std::string mem = keyed(hw[2], "memory", head.number);
        std::size_t pos = 0;
        while (pos <= mem.size()) {
            std::size_t comma = mem.find(',', pos);
            if (comma == std::string::npos) comma = mem.size();
            std::string name = mem.substr(pos, comma - pos);
            if (name.empty()) throw ParseError(head.number, "empty memory state name");
            for (const auto& other : fm.memory) {
                if (other == name) throw ValidationError(Kind::DuplicateName, at_line(head.number, "duplicate memory state"));
            }
            fm.memory.push_back(name);
            pos = comma + 1;
        }
        auto mem_index = [&](const std::string& name, std::size_t line) {
            for (std::size_t m = 0; m < fm.memory.size(); ++m) {
                if (fm.memory[m] == name) return m;
            }
            throw ValidationError(Kind::UnknownName, at_line(line, "unknown memory state '" + name + "'"));
        };
        fm.initial = mem_index(keyed(hw[3], "initial", head.number), head.number);
        const std::size_t k = fm.memory.size();
        fm.next_move.assign(g.num_states(), std::vector<ActionDistribution>(k));
        fm.update.resize(g.num_states());
        for (StateId s = 0; s < g.num_states(); ++s) {
            std::vector<std::size_t> identity(k);
            for (std::size_t m = 0; m < k; ++m) identity[m] = m;
            fm.update[s].assign(g.num_actions(Player::One, s) * g.num_actions(Player::Two, s), identity);
        }
        std::vector<std::vector<bool>> seen(g.num_states(), std::vector<bool>(k, false));
        for (; i < lines.size(); ++i) {
            const Line& ln = lines[i];
            const auto& w = ln.words;
            if (w[0] == "move") {
                if (w.size() < 3) throw ParseError(ln.number, "expected 'move SID M: ...'");
                StateId s = state_or_throw(g, w[1], ln.number);
                std::size_t m = mem_index(strip_colon(w[2]), ln.number);
                if (seen[s][m]) throw ValidationError(Kind::DuplicateName, at_line(ln.number, "move listed twice"));
                seen[s][m] = true;
                fm.next_move[s][m] = parse_row(g, fm.player, s, w, 3, ln.number);
            } else if (w[0] == "update") {
                if (w.size() != 7 || w[5] != "->") throw ParseError(ln.number, "expected 'update SID A B M -> M2'");
                StateId s = state_or_throw(g, w[1], ln.number);
                auto a = g.find_action(Player::One, s, w[2]);
                auto b = g.find_action(Player::Two, s, w[3]);
                if (!a || !b) throw ValidationError(Kind::UnknownName, at_line(ln.number, "unknown action"));
                std::size_t m = mem_index(w[4], ln.number);
                fm.update[s][*a * g.num_actions(Player::Two, s) + *b][m] = mem_index(w[6], ln.number);
            } else {
                throw ParseError(ln.number, "unknown directive '" + w[0] + "'");
            }
        }
        for (StateId s = 0; s < g.num_states(); ++s) {
            for (std::size_t m = 0; m < k; ++m) {
                if (!seen[s][m]) {
                    throw ValidationError(Kind::BadStrategy, "no move for state '" + g.state_name(s) + "' in memory '" + fm.memory[m] + "'");
                }
            }
        }
        validate_strategy(g, fm);
        return file;
    } else {
        throw ParseError(head.number, "unknown strategy header '" + hw[0] + "'");
    }
    if (i < lines.size()) throw ParseError(lines[i].number, "unexpected '" + lines[i].words[0] + "'");
    return file;
}

std::string
read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void
write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

} // namespace cmpg
