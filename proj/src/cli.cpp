// Copyright 2026 The matchkit Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "matchkit/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "matchkit/analysis.hpp"
#include "matchkit/discrete_solver.hpp"
#include "matchkit/errors.hpp"
#include "matchkit/generator.hpp"
#include "matchkit/hypergraph.hpp"
#include "matchkit/io.hpp"
#include "matchkit/report.hpp"
#include "matchkit/roadmap.hpp"
#include "matchkit/tu_solver.hpp"

namespace matchkit {

namespace {

using Json = nlohmann::ordered_json;

struct Common {
    std::string format = "human";
    std::optional<std::uint64_t> budget;
    SizeGuard guard;
};

std::uint64_t resolve_budget(const Common& c) {
    if (c.budget) return *c.budget;
    if (const char* env = std::getenv("MATCHKIT_BUDGET")) {
        const std::string text(env);
        if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos || text.size() > 19) {
            throw InputError("MATCHKIT_BUDGET must be a non-negative integer, got '" + text + "'");
        }
        return std::stoull(text);
    }
    return kDefaultBudget;
}

struct Inputs {
    std::string bytes;

    std::string read(const std::string& path) {
        std::string text = read_file(path);
        bytes += text;
        return text;
    }
    std::string digest() const { return "sha256:" + sha256_hex(bytes); }
};

Json names_of(const std::vector<std::string>& names, WorkerSet s) {
    Json out = Json::array();
    for (auto w : s.members()) out.push_back(names.at(w));
    return out;
}

Json cycle_json(const FirmWorkerHypergraph& h, const HyperCycle& c) {
    Json vertices = Json::array();
    Json edges = Json::array();
    for (auto v : c.vertices) vertices.push_back(h.vertex_name(v));
    for (auto e : c.edges) edges.push_back(h.edge_name(e));
    return Json{{"length", c.length()}, {"vertices", vertices}, {"edges", edges}, {"text", describe_cycle(h, c)}};
}

Json staffing_json(const std::vector<std::string>& firms, const std::vector<std::string>& workers,
                   const std::vector<std::optional<std::size_t>>& assignment) {
    Json staff = Json::object();
    for (const auto& f : firms) staff[f] = Json::array();
    Json unmatched = Json::array();
    for (std::size_t w = 0; w < assignment.size(); ++w) {
        if (assignment[w]) {
            staff[firms.at(*assignment[w])].push_back(workers[w]);
        } else {
            unmatched.push_back(workers[w]);
        }
    }
    return Json{{"staff", staff}, {"unmatched", unmatched}};
}

Json matrix_json(const IntMatrix& m) {
    return Json{{"rows", m.row_labels}, {"columns", m.col_labels}, {"entries", m.entries}};
}

std::string agent_name(const TuMarket& m, std::size_t agent) {
    return agent < m.firms.size() ? m.firms[agent] : m.workers.at(agent - m.firms.size());
}

void require_kind(const AnyMarket& market, const std::string& wanted) {
    if (wanted.empty()) return;
    const std::string actual = market_kind(market) == MarketKind::tu ? "tu" : "discrete";
    if (actual != wanted) throw InputError("expected a " + wanted + " market, file holds a " + actual + " market");
}

// balance -------------------------------------------------------------------

struct BalanceArgs {
    std::string market;
    std::string kind;
};

Report cmd_balance(const BalanceArgs& a, const Common& c, Inputs& in) {
    const AnyMarket market = parse_market(in.read(a.market));
    require_kind(market, a.kind);
    std::visit([](const auto& m) { require_valid(m); }, market);
    const FirmWorkerHypergraph h = std::visit([](const auto& m) { return build_hypergraph(m); }, market);
    const BalanceVerdict v = check_balanced(h, resolve_budget(c));
    Report r;
    r.verdict = v.balanced ? "balanced" : "unbalanced";
    r.exit_code = v.balanced ? kExitOk : kExitNegative;
    Json edges = Json::array();
    for (std::size_t e = 0; e < h.edges.size(); ++e) edges.push_back(h.edge_name(e));
    r.facts["kind"] = market_kind(market) == MarketKind::tu ? "tu" : "discrete";
    r.facts["vertices"] = h.vertex_count();
    r.facts["edges"] = edges;
    r.facts["balanced"] = v.balanced;
    r.facts["witness"] = v.witness ? cycle_json(h, *v.witness) : Json();
    return r;
}

// solve-tu ------------------------------------------------------------------

struct SolveTuArgs {
    std::string market;
    std::string emit;
};

Report cmd_solve_tu(const SolveTuArgs& a, const Common& c, Inputs& in) {
    const AnyMarket any = parse_market(in.read(a.market));
    require_kind(any, "tu");
    const TuMarket& m = std::get<TuMarket>(any);
    const TuStabilityReport s = find_stable_matching_tu(m, c.guard);

    Report r;
    r.verdict = s.stable() ? "stable matching found" : "no stable matching";
    r.exit_code = s.stable() ? kExitOk : kExitNegative;
    r.facts["lp_value"] = to_string(s.lp_value);
    r.facts["partition_value"] = to_string(s.partition_value);
    r.facts["stable"] = s.stable();
    r.facts["optimal_partition"] = staffing_json(m.firms, m.workers, s.optimal_partition.assignment);

    const bool emit_matching = a.emit.empty() ? s.stable() : a.emit == "matching";
    const bool emit_certificate = a.emit.empty() ? !s.stable() : a.emit == "certificate";
    if (emit_matching) {
        if (const auto* mu = std::get_if<TuMatching>(&s.outcome)) {
            Json prices = Json::object();
            for (std::size_t w = 0; w < m.workers.size(); ++w) prices[m.workers[w]] = to_string(mu->prices[w]);
            const TuUtilities u = tu_utilities(m, *mu);
            Json utilities = Json::object();
            for (std::size_t f = 0; f < m.firms.size(); ++f) utilities[m.firms[f]] = to_string(u.firms[f]);
            for (std::size_t w = 0; w < m.workers.size(); ++w) utilities[m.workers[w]] = to_string(u.workers[w]);
            Json matching = staffing_json(m.firms, m.workers, mu->assignment);
            matching["prices"] = prices;
            matching["utilities"] = utilities;
            r.facts["matching"] = matching;
        } else {
            r.facts["matching"] = Json();
        }
    }
    if (emit_certificate || a.emit == "lp") {
        Json weights = Json::array();
        const DualSolution& d = s.lp.dual;
        for (std::size_t i = 0; i < d.coalitions.size(); ++i) {
            if (d.weights[i] == 0) continue;
            weights.push_back(Json{{"coalition", describe_coalition(m.firms, m.workers, d.coalitions[i])},
                                   {"weight", to_string(d.weights[i])}});
        }
        r.facts["certificate"] = Json{{"value", to_string(d.value)}, {"weights", weights}};
    }
    if (a.emit == "lp") {
        Json primal = Json::object();
        for (std::size_t i = 0; i < s.lp.primal.size(); ++i) primal[agent_name(m, i)] = to_string(s.lp.primal[i]);
        r.facts["primal"] = Json{{"value", to_string(s.lp.primal_value)}, {"x", primal}};
    }
    return r;
}

// solve-discrete ------------------------------------------------------------

struct SolveDiscreteArgs {
    std::string market;
    bool first = false;
    bool dynamics = false;
    std::string start;
    std::size_t max_steps = 100;
};

Json move_json(const DiscreteMarket& m, const DynamicsMove& move) {
    if (move.kind == DynamicsMove::Kind::quit) return Json{{"quit", m.workers.at(move.worker)}};
    return Json{{"block", m.firms.at(move.coalition.firm)}, {"workers", names_of(m.workers, move.coalition.workers)}};
}

Report cmd_solve_discrete(const SolveDiscreteArgs& a, const Common& c, Inputs& in) {
    const AnyMarket any = parse_market(in.read(a.market));
    require_kind(any, "discrete");
    const DiscreteMarket& m = std::get<DiscreteMarket>(any);
    require_valid(m);
    Report r;

    if (a.dynamics) {
        const DiscreteMatching start = a.start.empty() ? DiscreteMatching::unmatched(m.workers.size())
                                                       : parse_discrete_matching(in.read(a.start), m);
        const DynamicsTrace t = run_blocking_dynamics(m, start, a.max_steps);
        Json states = Json::array();
        for (const auto& s : t.states) states.push_back(staffing_json(m.firms, m.workers, s.assignment));
        Json moves = Json::array();
        for (const auto& mv : t.moves) moves.push_back(move_json(m, mv));
        r.facts["states"] = states;
        r.facts["moves"] = moves;
        switch (t.outcome) {
            case DynamicsTrace::Outcome::stable:
                r.verdict = "dynamics reached a stable matching";
                r.exit_code = kExitOk;
                r.facts["outcome"] = "stable";
                r.facts["stable_index"] = t.stable_index;
                break;
            case DynamicsTrace::Outcome::cycle:
                r.verdict = "dynamics cycle";
                r.exit_code = kExitNegative;
                r.facts["outcome"] = "cycle";
                r.facts["revisit"] = Json::array({t.revisit.first, t.revisit.second});
                break;
            case DynamicsTrace::Outcome::budget_exhausted:
                r.verdict = "step budget exhausted";
                r.exit_code = kExitBudget;
                r.facts["outcome"] = "budget exhausted";
                break;
        }
        return r;
    }

    std::vector<DiscreteMatching> found = enumerate_stable_matchings(m, c.guard);
    const std::size_t total = found.size();
    if (a.first && found.size() > 1) found.resize(1);
    Json list = Json::array();
    for (const auto& mu : found) list.push_back(staffing_json(m.firms, m.workers, mu.assignment));
    r.verdict = total > 0 ? "stable matching found" : "no stable matching";
    r.exit_code = total > 0 ? kExitOk : kExitNegative;
    r.facts["count"] = total;
    r.facts["stable_matchings"] = list;
    return r;
}

// analyze -------------------------------------------------------------------

struct AnalyzeArgs {
    std::string market;
    bool prop1 = false;
    bool demand = false;
    bool tu_check = false;
    bool certificate = false;
};

Report cmd_analyze(AnalyzeArgs a, const Common& c, Inputs& in) {
    const AnyMarket any = parse_market(in.read(a.market));
    require_kind(any, "discrete");
    const DiscreteMarket& m = std::get<DiscreteMarket>(any);
    require_valid(m);
    if (!a.prop1 && !a.demand && !a.tu_check && !a.certificate) a.prop1 = a.demand = a.tu_check = a.certificate = true;
    const std::uint64_t budget = resolve_budget(c);
    const FirmWorkerHypergraph h = build_hypergraph(m);
    Report r;
    r.verdict = "analysis complete";

    std::optional<Prop1Verdict> p1;
    if (a.prop1 || a.certificate) p1 = prop1_check(m, c.guard, budget);
    if (a.prop1) {
        r.facts["prop1"] = Json{{"guaranteed", p1->guaranteed},
                                {"witness", p1->witness ? cycle_json(h, *p1->witness) : Json()}};
    }
    std::optional<TuVerdict> tu;
    if (a.demand || a.tu_check) {
        const DemandType d = demand_type(m, c.guard);
        if (a.demand) {
            Json per_firm = Json::object();
            for (std::size_t f = 0; f < m.firms.size(); ++f) {
                Json vs = Json::array();
                for (const auto& v : d.per_firm[f]) vs.push_back(describe_vector(v));
                per_firm[m.firms[f]] = vs;
            }
            Json all = Json::array();
            for (const auto& v : d.all) all.push_back(describe_vector(v));
            r.facts["demand_type"] = Json{{"workers", m.workers}, {"per_firm", per_firm}, {"all", all}};
        }
        if (a.tu_check) {
            const IntMatrix dm = demand_matrix(m.workers, d.all);
            tu = is_totally_unimodular(dm);
            Json check = Json{{"unimodular", tu->unimodular}};
            if (!tu->unimodular) {
                Json rows = Json::array();
                Json cols = Json::array();
                for (auto i : tu->rows) rows.push_back(dm.row_labels[i]);
                for (auto j : tu->cols) cols.push_back(dm.col_labels[j]);
                check["violation"] = Json{{"rows", rows}, {"columns", cols}, {"determinant", tu->det}};
            }
            r.facts["tu_check"] = check;
        }
    }
    if (a.certificate) {
        if (p1->witness) {
            const CycleCertificate cert = tu_cycle_certificate(m, *p1->witness);
            r.facts["certificate"] = Json{{"cycle", cycle_json(h, *p1->witness)},
                                          {"m", matrix_json(cert.m)},
                                          {"m_prime", matrix_json(cert.m_prime)},
                                          {"m_double_prime", matrix_json(cert.m_double_prime)},
                                          {"determinant", cert.det}};
        } else {
            r.facts["certificate"] = Json();
        }
    }
    if (tu && p1) {
        const bool falsified = tu->unimodular && !p1->guaranteed;
        r.facts["falsified"] = falsified;
        if (falsified) {
            r.verdict = "unimodular demand type without the cycle guarantee";
            r.exit_code = kExitNegative;
        }
    }
    return r;
}

// roadmap -------------------------------------------------------------------

struct RoadmapArgs {
    std::string roadmap;
    std::string market;
};

Report cmd_roadmap(const RoadmapArgs& a, const Common& c, Inputs& in) {
    const std::string roadmap_text = in.read(a.roadmap);
    const AnyMarket any = parse_market(in.read(a.market));
    const auto& workers = std::visit([](const auto& m) -> const std::vector<std::string>& { return m.workers; }, any);
    const Roadmap rm = parse_roadmap(roadmap_text, workers);
    require_valid(rm);
    const Theorem3Report t = std::visit([&](const auto& m) { return theorem3_report(m, rm, resolve_budget(c)); }, any);
    const auto& firms = std::visit([](const auto& m) -> const std::vector<std::string>& { return m.firms; }, any);
    const FirmWorkerHypergraph h = std::visit([](const auto& m) { return build_hypergraph(m); }, any);

    Report r;
    r.verdict = t.holds() ? "specialists, specialized, balanced" : "hypotheses or conclusion fail";
    r.exit_code = t.holds() ? kExitOk : kExitNegative;
    Json non = Json::array();
    for (auto w : t.non_specialists) non.push_back(workers[w]);
    r.facts["specialists"] = Json{{"all", t.all_specialists()}, {"non_specialists", non}};
    Json paths = Json::object();
    for (std::size_t f = 0; f < t.specialization.paths.size(); ++f) {
        const auto& p = t.specialization.paths[f];
        paths[firms[f]] = p ? Json(describe_path(rm, *p)) : Json();
    }
    Json spec = Json{{"value", t.specialization.specialized}};
    if (t.specialization.specialized) {
        spec["paths"] = paths;
    } else {
        spec["reason"] = t.specialization.reason;
    }
    r.facts["specialized"] = spec;
    r.facts["balanced"] = Json{{"value", t.balance.balanced},
                               {"witness", t.balance.witness ? cycle_json(h, *t.balance.witness) : Json()}};
    r.facts["falsified"] = t.falsified();
    return r;
}

// gen -----------------------------------------------------------------------

struct GenArgs {
    std::string kind;
    std::string market_kind = "discrete";
    std::string out;
    std::string market_out;
    GenParams params;
    std::string min_value = "0";
    std::string max_value = "10";
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) throw InputError("cannot write '" + path + "'");
}

Report cmd_gen(GenArgs a, std::ostream& out) {
    a.params.value_min = parse_rational(a.min_value);
    a.params.value_max = parse_rational(a.max_value);
    Report r;
    r.verdict = "generated";
    r.facts["seed"] = a.params.seed;
    if (a.kind == "tu" || a.kind == "discrete") {
        const std::string text = a.kind == "tu" ? serialize_market(gen_tu_market(a.params))
                                                : serialize_market(gen_discrete_market(a.params));
        if (a.out.empty()) {
            out << text;
            return Report{};
        }
        write_file(a.out, text);
        r.facts["market"] = a.out;
        return r;
    }
    if (a.out.empty() || a.market_out.empty()) throw InputError("gen roadmap needs --out and --market-out");
    const RoadmapInstance inst =
        gen_roadmap_instance(a.params, a.market_kind == "tu" ? MarketKind::tu : MarketKind::discrete);
    write_file(a.out, serialize_roadmap(inst.roadmap));
    write_file(a.market_out, std::visit([](const auto& m) { return serialize_market(m); }, inst.market));
    r.facts["roadmap"] = a.out;
    r.facts["market"] = a.market_out;
    return r;
}

std::string echo(int argc, const char* const* argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i > 0) s += " ";
        s += argv[i];
    }
    return s;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stable matching existence and certificates for many-to-one markets", "matchkit"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"human", "json"}));
    app.add_option("--budget", common.budget, "Cycle-search step budget (default 10^7, or MATCHKIT_BUDGET)");
    app.add_option("--max-firms", common.guard.max_firms, "Size guard: firms");
    app.add_option("--max-workers", common.guard.max_workers, "Size guard: workers");
    app.add_option("--max-coalitions", common.guard.max_coalitions, "Size guard: LP coalitions");

    BalanceArgs balance;
    auto* balance_cmd = app.add_subcommand("balance", "Decide whether the firm-worker hypergraph is balanced");
    balance_cmd->add_option("market", balance.market, "Market file")->required();
    balance_cmd->add_option("--kind", balance.kind, "Expected market kind")->check(CLI::IsMember({"tu", "discrete"}));

    SolveTuArgs solve_tu;
    auto* solve_tu_cmd = app.add_subcommand("solve-tu", "Find a stable TU matching or a fractional certificate");
    solve_tu_cmd->add_option("market", solve_tu.market, "TU market file")->required();
    solve_tu_cmd->add_option("--emit", solve_tu.emit, "Section to emit")
        ->check(CLI::IsMember({"matching", "certificate", "lp"}));

    SolveDiscreteArgs solve_d;
    auto* solve_d_cmd = app.add_subcommand("solve-discrete", "Enumerate stable matchings or trace blocking dynamics");
    solve_d_cmd->add_option("market", solve_d.market, "Discrete market file")->required();
    auto* all_flag = solve_d_cmd->add_flag("--all", "List every stable matching (default)");
    auto* first_flag = solve_d_cmd->add_flag("--first", solve_d.first, "List only the first stable matching");
    all_flag->excludes(first_flag);
    auto* dyn_flag = solve_d_cmd->add_flag("--dynamics", solve_d.dynamics, "Trace blocking dynamics");
    solve_d_cmd->add_option("--start", solve_d.start, "Starting matching file (default: all unmatched)")
        ->needs(dyn_flag);
    solve_d_cmd->add_option("--max-steps", solve_d.max_steps, "Dynamics step budget")->needs(dyn_flag);

    AnalyzeArgs analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "Cycle condition, demand type and unimodularity analyses");
    analyze_cmd->add_option("market", analyze.market, "Discrete market file")->required();
    analyze_cmd->add_flag("--prop1", analyze.prop1, "Check the pair condition on nontrivial odd cycles");
    analyze_cmd->add_flag("--demand-type", analyze.demand, "List the firms' demand type");
    analyze_cmd->add_flag("--tu-check", analyze.tu_check, "Test the demand type for total unimodularity");
    analyze_cmd->add_flag("--certificate", analyze.certificate, "Determinant certificate from a qualifying cycle");

    RoadmapArgs roadmap;
    auto* roadmap_cmd = app.add_subcommand("roadmap", "Check specialists, specialized firms and balancedness");
    roadmap_cmd->add_option("roadmap", roadmap.roadmap, "Roadmap file")->required();
    roadmap_cmd->add_option("market", roadmap.market, "Market file")->required();

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
    gen_cmd->add_option("kind", gen.kind, "tu, discrete or roadmap")
        ->required()
        ->check(CLI::IsMember({"tu", "discrete", "roadmap"}));
    gen_cmd->add_option("--seed", gen.params.seed, "PRNG seed");
    gen_cmd->add_option("--firms", gen.params.firm_count, "Number of firms");
    gen_cmd->add_option("--workers", gen.params.worker_count, "Number of workers");
    gen_cmd->add_option("--max-sets", gen.params.max_acceptable_sets_per_firm, "Acceptable sets per firm, at most");
    gen_cmd->add_option("--max-set-size", gen.params.max_set_size, "Workers per acceptable set, at most");
    gen_cmd->add_option("--min-value", gen.min_value, "Smallest value");
    gen_cmd->add_option("--max-value", gen.max_value, "Largest value");
    gen_cmd->add_option("--max-denominator", gen.params.max_denominator, "Largest value denominator");
    gen_cmd->add_option("--density", gen.params.acceptability_density, "Worker acceptability probability");
    gen_cmd->add_option("--technologies", gen.params.technology_count, "Roadmap vertices");
    gen_cmd->add_option("--market-kind", gen.market_kind, "Market kind for roadmap instances")
        ->check(CLI::IsMember({"tu", "discrete"}));
    gen_cmd->add_option("--out", gen.out, "Output file (stdout when omitted for markets)");
    gen_cmd->add_option("--market-out", gen.market_out, "Market output file for roadmap instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    try {
        Inputs inputs;
        const auto start = std::chrono::steady_clock::now();
        Report r;
        if (balance_cmd->parsed()) {
            r = cmd_balance(balance, common, inputs);
        } else if (solve_tu_cmd->parsed()) {
            r = cmd_solve_tu(solve_tu, common, inputs);
        } else if (solve_d_cmd->parsed()) {
            r = cmd_solve_discrete(solve_d, common, inputs);
        } else if (analyze_cmd->parsed()) {
            r = cmd_analyze(analyze, common, inputs);
        } else if (roadmap_cmd->parsed()) {
            r = cmd_roadmap(roadmap, common, inputs);
        } else {
            r = cmd_gen(gen, out);
            // Market text already went to stdout.
            if (r.verdict.empty()) return kExitOk;
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        r.command = echo(argc, argv);
        r.input_digest = inputs.digest();
        out << (common.format == "json" ? render_json(r) : render_human(r));
        return r.exit_code;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const GuardExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const BudgetExhausted& e) {
        err << "budget exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"matchkit"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace matchkit
