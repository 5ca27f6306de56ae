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

#include "commands.hpp"

#include "cmpg/dmpg.hpp"
#include "cmpg/errors.hpp"
#include "cmpg/finite_memory.hpp"
#include "cmpg/generators.hpp"
#include "cmpg/io.hpp"
#include "cmpg/simulate.hpp"
#include "cmpg/solver.hpp"
#include "cmpg/synthesis.hpp"
#include "cmpg/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <memory>
#include <sstream>
#include <thread>

namespace cmpg::cli {

namespace {

struct Options
{
    std::string file;
    std::string objective = "almost";
    std::string algo;
    std::string kind;
    std::string eps;
    std::string out;
    std::uint64_t rounds = 0;
    std::string strategy;
    std::string claim;
    std::string param;
    std::string family;
    unsigned n = 0;
    unsigned m = 0;
    std::uint64_t seed = 1;
    std::string state;
    std::uint64_t bound = 1000000;
    std::vector<std::string> strategies;
    std::string start;
    std::uint64_t steps = 1000;
    std::string sizes = "50,100,200";
    unsigned seeds = 3;
    unsigned jobs = 1;
    bool no_time = false;
};

class Failure : public std::runtime_error
{
  public:
    Failure(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
    int code() const { return code_; }

  private:
    int code_;
};

Rational
rational_arg(const std::string& text, const std::string& flag)
{
    auto q = parse_rational(text);
    if (!q) throw Failure(InputError, "malformed rational for " + flag + ": '" + text + "'");
    return *q;
}

GameStructure
load_game(const std::string& path)
{
    return parse_game(read_text_file(path));
}

std::string
set_names(const GameStructure& g, const StateSet& set)
{
    std::vector<std::string> names;
    for (StateId s : set.members()) names.push_back(g.state_name(s));
    std::sort(names.begin(), names.end());
    std::string out;
    for (const auto& n : names) out += " " + n;
    return out;
}

std::string
approx(const Rational& q)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", to_double(q));
    return buf;
}

StateId
state_arg(const GameStructure& g, const std::string& name)
{
    auto s = g.find_state(name);
    if (!s) throw Failure(InputError, "unknown state '" + name + "'");
    return *s;
}

// ---------------------------------------------------------------- solve

CommandResult
cmd_solve(const Options& o)
{
    GameStructure g = load_game(o.file);
    std::ostringstream out;
    CommandResult res;
    std::string algo = o.algo;
    if (o.objective == "positive") {
        if (algo.empty()) algo = "naive";
        if (algo != "naive") throw Failure(InputError, "the positive objective is solved by the naive fixpoint only");
        SolveReport r = positive_set(g);
        out << "objective=positive algorithm=naive\n";
        out << "winning:" << set_names(g, r.winning) << "\n";
        out << format_report(g, r);
        res.out = out.str();
        return res;
    }
    if (algo.empty()) algo = "improved";
    out << "objective=almost algorithm=" << algo << "\n";
    if (algo == "naive" || algo == "improved") {
        SolveReport r = algo == "naive" ? almost_set_naive(g) : almost_set_improved(g);
        out << "winning:" << set_names(g, r.winning) << "\n";
        out << format_report(g, r);
        res.out = out.str();
        return res;
    }
    SolveReport a = almost_set_naive(g);
    SolveReport b = almost_set_improved(g);
    out << "[naive]\nwinning:" << set_names(g, a.winning) << "\n" << format_report(g, a);
    out << "[improved]\nwinning:" << set_names(g, b.winning) << "\n" << format_report(g, b);
    out << "DIFF\n";
    if (a.winning == b.winning) {
        out << "none\n";
    } else {
        out << "only_naive:" << set_names(g, a.winning - b.winning) << "\n";
        out << "only_improved:" << set_names(g, b.winning - a.winning) << "\n";
        res.exit_code = InternalError;
    }
    res.out = out.str();
    return res;
}

// ---------------------------------------------------------------- synth

CommandResult
cmd_synth(const Options& o)
{
    auto g = std::make_shared<const GameStructure>(load_game(o.file));
    std::ostringstream meta;
    std::string text;
    CommandResult res;
    meta << "# kind=" << o.kind << "\n";

    auto nothing = [&](const std::string& why) {
        res.exit_code = ClaimFailed;
        res.out = meta.str();
        res.err = why + "\n";
        return res;
    };

    if (o.kind == "eps-stationary") {
        Rational eps = o.eps.empty() ? make_rational(1, 4) : rational_arg(o.eps, "--eps");
        SolveReport almost = almost_set_naive(*g);
        meta << "# winning:" << set_names(*g, almost.winning) << "\n";
        if (almost.winning.is_empty()) return nothing("the almost-sure winning set is empty");
        StationaryStrategy sigma = synth_eps_stationary(*g, almost, eps);
        Rational p = patience(sigma);
        meta << "# eps=" << to_string(eps) << "\n# patience=" << to_string(p) << "\n";
        meta << "# patience_bound=" << (patience_within_bound(p, g->num_states(), g->max_actions(), g->delta_min(), eps) ? "ok" : "exceeded")
             << "\n";
        text = serialize_strategy(*g, sigma);
    } else if (o.kind == "markov-as") {
        SolveReport almost = almost_set_naive(*g);
        meta << "# winning:" << set_names(*g, almost.winning) << "\n";
        if (almost.winning.is_empty()) return nothing("the almost-sure winning set is empty");
        RoundIndexedStrategy sigma = synth_markov_almost(g, almost);
        const std::uint64_t rounds = o.rounds ? o.rounds : 1000;
        auto segs = sigma.prefix(rounds);
        Rational eps = make_rational(1, 4);
        for (std::size_t i = 0; i < segs.size(); ++i, eps /= 2) {
            meta << "# segment " << i << " eps=" << to_string(eps) << " length=" << segs[i].length << "\n";
        }
        text = serialize_strategy(*g, sigma, rounds);
    } else if (o.kind == "spoiler-markov") {
        Rational eps = o.eps.empty() ? make_rational(1, 2) : rational_arg(o.eps, "--eps");
        SolveReport almost = almost_set_naive(*g);
        meta << "# winning:" << set_names(*g, almost.winning) << "\n";
        if (almost.winning == g->all_states()) return nothing("player 1 wins almost surely everywhere");
        RoundIndexedStrategy sigma = synth_spoiler_markov(g, almost, eps);
        meta << "# eps=" << to_string(eps) << "\n# c=" << to_string(spoiler_gap(*g)) << "\n";
        text = serialize_strategy(*g, sigma, o.rounds ? o.rounds : 8);
    } else if (o.kind == "positive-markov") {
        SolveReport positive = positive_set(*g);
        meta << "# winning:" << set_names(*g, positive.winning) << "\n";
        if (positive.winning.is_empty()) return nothing("the positive winning set is empty");
        RoundIndexedStrategy sigma = synth_positive_markov(g, positive);
        text = serialize_strategy(*g, sigma, o.rounds ? o.rounds : 8);
    } else if (o.kind == "spoiler-stationary") {
        SolveReport positive = positive_set(*g);
        meta << "# winning:" << set_names(*g, positive.winning) << "\n";
        if (positive.winning == g->all_states()) return nothing("player 1 wins positively everywhere");
        StationaryStrategy sigma = synth_positive_spoiler_stationary(*g, positive);
        meta << "# patience=" << to_string(patience(sigma)) << "\n# c=" << to_string(spoiler_gap(*g)) << "\n";
        text = serialize_strategy(*g, sigma);
    } else {
        throw Failure(InputError, "unknown strategy kind '" + o.kind + "'");
    }

    if (o.out.empty()) {
        res.out = meta.str() + text;
    } else {
        write_text_file(o.out, text);
        meta << "# wrote " << o.out << "\n";
        res.out = meta.str();
    }
    return res;
}

// ---------------------------------------------------------------- verify

CommandResult
cmd_verify(const Options& o)
{
    GameStructure g = load_game(o.file);
    StrategyFile sf = parse_strategy(g, read_text_file(o.strategy));
    std::ostringstream out;
    CommandResult res;
    VerificationReport report;

    if (o.claim == "eps-as") {
        if (sf.kind != StrategyFileKind::Stationary || sf.stationary.player != Player::One) {
            throw Failure(InputError, "eps-as needs a stationary player-1 strategy");
        }
        Rational eps = o.param.empty() ? make_rational(1, 4) : rational_arg(o.param, "--param");
        SolveReport almost = almost_set_naive(g);
        report = verify_eps_claim(g, sf.stationary, almost.winning, eps);
        out << "claim=eps-as param=" << to_string(eps) << "\n";
    } else if (o.claim == "spoiler-pos") {
        if (sf.kind != StrategyFileKind::Stationary || sf.stationary.player != Player::Two) {
            throw Failure(InputError, "spoiler-pos needs a stationary player-2 strategy");
        }
        Rational c = o.param.empty() ? spoiler_gap(g) : rational_arg(o.param, "--param");
        SolveReport positive = positive_set(g);
        report = verify_spoiler_stationary(g, sf.stationary, g.all_states() - positive.winning, c);
        out << "claim=spoiler-pos param=" << to_string(c) << "\n";
    } else if (o.claim == "finite-memory") {
        if (sf.kind != StrategyFileKind::FiniteMemory || sf.finite.player != Player::One) {
            throw Failure(InputError, "finite-memory needs a finite-memory player-1 strategy");
        }
        SpoilResult sr = spoil_finite_memory(g, sf.finite);
        report = sr.report;
        out << "claim=" << report.claim << " p=" << to_string(sr.p) << "\n";
        out << "responder:\n" << serialize_strategy(g, sr.responder);
    } else {
        throw Failure(InputError, "unknown claim '" + o.claim + "'");
    }
    out << format_report(g, report);
    out << "result=" << (report.passed() ? "pass" : "fail") << "\n";
    res.out = out.str();
    res.exit_code = report.passed() ? Ok : ClaimFailed;
    return res;
}

// ---------------------------------------------------------------- gen

CommandResult
cmd_gen(const Options& o)
{
    std::string text;
    const std::string& f = o.family;
    auto need = [&](unsigned v, const char* flag) {
        if (v == 0) throw Failure(InputError, "family '" + f + "' needs " + flag);
        return v;
    };
    if (f == "gn") {
        text = serialize_game(gen_gn(need(o.n, "--n")));
    } else if (f == "gbar") {
        text = serialize_game(gen_gbar());
    } else if (f == "gm") {
        text = serialize_game(gen_gm(need(o.m ? o.m : o.n, "--m")));
    } else if (f == "pennies" || f == "pennies-variant") {
        text = serialize_game(gen_pennies(f == "pennies-variant"));
    } else if (f == "random") {
        RandomGameParams p;
        p.states = need(o.n, "--n");
        p.max_actions = o.m ? o.m : 2;
        p.seed = o.seed;
        text = serialize_game(gen_random(p));
    } else if (f == "turn-based") {
        text = serialize_game(gen_random_turn_based(need(o.n, "--n"), o.m ? o.m : 2, make_rational(1, 2), o.seed));
    } else if (f == "dmpg") {
        text = serialize_dmpg(gen_random_dmpg(need(o.n, "--n"), o.m ? o.m : 2, 4, o.seed));
    } else {
        throw Failure(InputError, "unknown family '" + f + "'");
    }
    CommandResult res;
    if (o.out.empty()) {
        res.out = text;
    } else {
        write_text_file(o.out, text);
    }
    return res;
}

// ---------------------------------------------------------------- reduce / dmpg-value

CommandResult
cmd_reduce(const Options& o)
{
    Dmpg d = parse_dmpg(read_text_file(o.file));
    Reduction r = reduce_dmpg(d);
    std::string game = serialize_game(r.game);
    std::string map = format_gadget_map(d, r);
    CommandResult res;
    if (o.out.empty()) {
        std::ostringstream out;
        out << game;
        std::istringstream lines(map);
        for (std::string line; std::getline(lines, line);) out << "# " << line << "\n";
        res.out = out.str();
    } else {
        write_text_file(o.out, game);
        write_text_file(o.out + ".map", map);
        res.out = "M=" + std::to_string(r.M) + " states=" + std::to_string(r.game.num_states()) + "\n";
    }
    return res;
}

CommandResult
cmd_dmpg_value(const Options& o)
{
    Dmpg d = parse_dmpg(read_text_file(o.file));
    auto values = dmpg_values_bruteforce(d, o.bound);
    CommandResult res;
    if (!o.state.empty()) {
        auto v = d.find_node(o.state);
        if (!v) throw Failure(InputError, "unknown node '" + o.state + "'");
        res.out = to_string(values[*v]) + "\n";
        return res;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    for (NodeId v = 0; v < d.num_nodes(); ++v) rows.emplace_back(d.node_name(v), to_string(values[v]));
    std::sort(rows.begin(), rows.end());
    for (const auto& [name, val] : rows) res.out += name + " value=" + val + "\n";
    return res;
}

// ---------------------------------------------------------------- simulate

AnyStrategy
rebuild_markov(const std::shared_ptr<const GameStructure>& g, const MarkovFile& mf)
{
    if (mf.kind == MarkovKind::Explicit) return RoundIndexedStrategy(mf.player, mf.kind, mf.params, mf.segments);
    RoundIndexedStrategy sigma = [&]() {
        switch (mf.kind) {
        case MarkovKind::EpsilonHalvingAlmostSure:
            return synth_markov_almost(g, almost_set_naive(*g));
        case MarkovKind::SpoilerMarkov: {
            auto it = mf.params.find("eps");
            Rational eps = it == mf.params.end() ? make_rational(1, 2) : rational_arg(it->second, "eps");
            return synth_spoiler_markov(g, almost_set_naive(*g), eps);
        }
        default:
            return synth_positive_markov(g, positive_set(*g));
        }
    }();
    if (sigma.player() != mf.player) throw Failure(InputError, "strategy file names the wrong player for its kind");
    std::uint64_t round = 1;
    for (std::size_t i = 0; i < mf.segments.size(); ++i) {
        const Segment& seg = mf.segments[i];
        std::uint64_t last = seg.length == 0 ? round : round + seg.length - 1;
        for (std::uint64_t t : {round, last}) {
            if (sigma.at_round(t)->dist != seg.strategy->dist) {
                throw Failure(InputError, "strategy file does not match its construction at round " + std::to_string(t));
            }
        }
        round += seg.length;
    }
    return sigma;
}

AnyStrategy
load_any(const std::shared_ptr<const GameStructure>& g, const std::string& spec, Player p)
{
    if (spec == "uniform") return uniform_strategy(*g, p);
    StrategyFile sf = parse_strategy(*g, read_text_file(spec));
    AnyStrategy s;
    switch (sf.kind) {
    case StrategyFileKind::Stationary: s = sf.stationary; break;
    case StrategyFileKind::FiniteMemory: s = sf.finite; break;
    case StrategyFileKind::Markov: s = rebuild_markov(g, sf.markov); break;
    }
    if (strategy_player(s) != p) throw Failure(InputError, "'" + spec + "' is not a player-" + std::to_string(static_cast<int>(p)) + " strategy");
    return s;
}

CommandResult
cmd_simulate(const Options& o)
{
    auto g = std::make_shared<const GameStructure>(load_game(o.file));
    if (o.strategies.size() != 2) throw Failure(InputError, "simulate needs a player-1 and a player-2 strategy");
    AnyStrategy s1 = load_any(g, o.strategies[0], Player::One);
    AnyStrategy s2 = load_any(g, o.strategies[1], Player::Two);
    StateId start = o.start.empty() ? 0 : state_arg(*g, o.start);
    SimulationStats st = simulate(*g, s1, s2, start, o.steps, o.seed);
    std::ostringstream out;
    out << "start=" << g->state_name(start) << " steps=" << o.steps << " seed=" << o.seed << "\n";
    for (const auto& [t, avg] : st.checkpoints) out << "round " << t << " average=" << to_string(avg) << " ~" << approx(avg) << "\n";
    out << "final_average=" << to_string(st.final_average) << " ~" << approx(st.final_average) << "\n";
    std::vector<std::pair<std::string, std::uint64_t>> visits;
    for (StateId s = 0; s < g->num_states(); ++s) visits.emplace_back(g->state_name(s), st.visits[s]);
    std::sort(visits.begin(), visits.end());
    for (const auto& [name, count] : visits) out << "visits " << name << " " << count << "\n";
    out << "final_state=" << g->state_name(st.final_state) << "\n";
    CommandResult res;
    res.out = out.str();
    return res;
}

// ---------------------------------------------------------------- bench

struct BenchRow
{
    unsigned n = 0;
    std::uint64_t seed = 0;
    std::size_t delta = 0;
    double naive_ms = 0, improved_ms = 0;
    std::size_t process = 0, remove = 0, max_remove = 0;
    std::uint64_t work = 0;
    bool agree = true;
};

CommandResult
cmd_bench(const Options& o)
{
    std::vector<unsigned> sizes;
    {
        std::stringstream ss(o.sizes);
        for (std::string item; std::getline(ss, item, ',');) {
            try {
                sizes.push_back(static_cast<unsigned>(std::stoul(item)));
            } catch (const std::exception&) {
                throw Failure(InputError, "malformed --sizes entry '" + item + "'");
            }
        }
    }
    std::vector<BenchRow> rows;
    for (unsigned n : sizes) {
        for (unsigned k = 0; k < o.seeds; ++k) rows.push_back({n, o.seed + k});
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < rows.size(); i = next++) {
            BenchRow& row = rows[i];
            RandomGameParams p;
            p.states = row.n;
            p.max_actions = 2;
            p.branching = 2;
            p.seed = row.seed;
            GameStructure g = gen_random(p);
            row.delta = g.transition_size();
            auto t0 = std::chrono::steady_clock::now();
            SolveReport a = almost_set_naive(g);
            auto t1 = std::chrono::steady_clock::now();
            SolveReport b = almost_set_improved(g);
            auto t2 = std::chrono::steady_clock::now();
            row.naive_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            row.improved_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
            row.process = b.counters.total_process();
            row.remove = b.counters.total_remove();
            row.max_remove = b.counters.max_remove();
            row.work = b.counters.work;
            row.agree = a.winning == b.winning;
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < std::max(1u, o.jobs); ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::ostringstream out;
    out << "n seed delta naive_ms improved_ms process remove max_remove work work_per_n_delta\n";
    CommandResult res;
    for (const BenchRow& r : rows) {
        char ms[64];
        if (o.no_time) {
            std::snprintf(ms, sizeof ms, "- -");
        } else {
            std::snprintf(ms, sizeof ms, "%.2f %.2f", r.naive_ms, r.improved_ms);
        }
        char ratio[32];
        std::snprintf(ratio, sizeof ratio, "%.4f", double(r.work) / (double(r.n) * double(r.delta)));
        out << r.n << " " << r.seed << " " << r.delta << " " << ms << " " << r.process << " " << r.remove << " " << r.max_remove << " "
            << r.work << " " << ratio << "\n";
        if (!r.agree) {
            res.exit_code = InternalError;
            res.err += "naive and improved disagree on n=" + std::to_string(r.n) + " seed=" + std::to_string(r.seed) + "\n";
        }
    }
    res.out = out.str();
    return res;
}

} // namespace

CommandResult
run(const std::vector<std::string>& args)
{
    CLI::App app{"Qualitative analysis of concurrent stochastic mean-payoff games", "cmpg"};
    app.require_subcommand(1);
    Options o;

    auto* solve = app.add_subcommand("solve", "almost-sure or positive winning set");
    solve->add_option("file", o.file, "game file")->required();
    solve->add_option("--objective", o.objective)->check(CLI::IsMember({"almost", "positive"}));
    solve->add_option("--algo", o.algo)->check(CLI::IsMember({"naive", "improved", "both"}));

    auto* synth = app.add_subcommand("synth", "synthesize a witness strategy");
    synth->add_option("file", o.file)->required();
    synth->add_option("--kind", o.kind)
        ->required()
        ->check(CLI::IsMember({"eps-stationary", "markov-as", "spoiler-markov", "positive-markov", "spoiler-stationary"}));
    synth->add_option("--eps", o.eps);
    synth->add_option("--out", o.out);
    synth->add_option("--rounds", o.rounds, "rounds written for round-indexed strategies");

    auto* verify = app.add_subcommand("verify", "check a strategy against a claim");
    verify->add_option("file", o.file)->required();
    verify->add_option("--strategy", o.strategy)->required();
    verify->add_option("--claim", o.claim)->required()->check(CLI::IsMember({"eps-as", "spoiler-pos", "finite-memory"}));
    verify->add_option("--param", o.param);

    auto* gen = app.add_subcommand("gen", "print a generated game");
    gen->add_option("--family", o.family)
        ->required()
        ->check(CLI::IsMember({"gn", "gbar", "gm", "pennies", "pennies-variant", "random", "turn-based", "dmpg"}));
    gen->add_option("--n", o.n);
    gen->add_option("--m", o.m);
    gen->add_option("--seed", o.seed);
    gen->add_option("--out", o.out);

    auto* reduce = app.add_subcommand("reduce", "reduce a DMPG to a concurrent game");
    reduce->add_option("file", o.file)->required();
    reduce->add_option("--out", o.out, "writes PATH and PATH.map");

    auto* value = app.add_subcommand("dmpg-value", "DMPG values by positional enumeration");
    value->add_option("file", o.file)->required();
    value->add_option("--state", o.state);
    value->add_option("--bound", o.bound);

    auto* sim = app.add_subcommand("simulate", "sample one play");
    sim->add_option("file", o.file)->required();
    sim->add_option("strategies", o.strategies, "player-1 and player-2 strategy files ('uniform' allowed)")->expected(2)->required();
    sim->add_option("--start", o.start);
    sim->add_option("--steps", o.steps)->check(CLI::PositiveNumber);
    sim->add_option("--seed", o.seed);

    auto* bench = app.add_subcommand("bench", "solver counters on random games");
    bench->add_option("--sizes", o.sizes);
    bench->add_option("--seeds", o.seeds);
    bench->add_option("--seed", o.seed, "first seed");
    bench->add_option("--jobs", o.jobs);
    bench->add_flag("--no-time", o.no_time, "omit wall-clock columns");

    CommandResult res;
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        int code = app.exit(e, out, err);
        res.out = out.str();
        res.err = err.str();
        res.exit_code = code == 0 ? Ok : InputError;
        return res;
    }

    try {
        if (solve->parsed()) return cmd_solve(o);
        if (synth->parsed()) return cmd_synth(o);
        if (verify->parsed()) return cmd_verify(o);
        if (gen->parsed()) return cmd_gen(o);
        if (reduce->parsed()) return cmd_reduce(o);
        if (value->parsed()) return cmd_dmpg_value(o);
        if (sim->parsed()) return cmd_simulate(o);
        if (bench->parsed()) return cmd_bench(o);
    } catch (const Failure& e) {
        res.exit_code = e.code();
        res.err = std::string(e.what()) + "\n";
    } catch (const ConsistencyError& e) {
        res.exit_code = InternalError;
        res.err = std::string("internal consistency failure: ") + e.what() + "\n";
    } catch (const std::runtime_error& e) {
        // parse, validation, bound and file errors
        res.exit_code = InputError;
        res.err = std::string(e.what()) + "\n";
    } catch (const std::logic_error& e) {
        res.exit_code = InputError;
        res.err = std::string(e.what()) + "\n";
    } catch (const std::exception& e) {
        res.exit_code = InternalError;
        res.err = std::string(e.what()) + "\n";
    }
    return res;
}

} // namespace cmpg::cli
