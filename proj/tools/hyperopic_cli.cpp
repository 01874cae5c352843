// Command-line frontend: graph generation, parameter computation, guard
// solving, strategy verification, bound audits, and the conjecture scan.
//
// Exit codes: 0 success, 1 counterexample or refutation found, 2 usage
// error, 3 resource cap hit.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperopic/hyperopic.hpp"
#include "hyperopic/trace_io.hpp"

using namespace hyperopic;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFinding = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct CommonArgs {
    std::string gen_spec;
    std::string in_path;
    std::string format = "graph6";
    std::string out = "text";
    std::string out_path;
    std::uint64_t budget = 50'000'000;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_input = true) {
    if (with_input) {
        cmd->add_option("--gen", args.gen_spec, "generator spec, e.g. complete:5 or join:path:2,cycle:4");
        cmd->add_option("--in", args.in_path, "input file ('-' for stdin)");
        cmd->add_option("--format", args.format, "input format: graph6|edgelist")
            ->check(CLI::IsMember({"graph6", "edgelist"}));
    }
    cmd->add_option("--out", args.out, "output form: text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--out-path", args.out_path, "write output to a file instead of stdout");
    cmd->add_option("--budget", args.budget, "solver node budget");
    cmd->add_option("--seed", args.seed,
                    "default seed for seeded graph families when the spec omits one");
}

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in.good()) throw usage_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Graph load_graph(const CommonArgs& args) {
    if (!args.gen_spec.empty()) return generate(args.gen_spec, args.seed);
    if (args.in_path.empty()) throw usage_error("needs --gen or --in");
    std::string text = slurp(args.in_path);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    std::vector<std::string> warnings;
    GraphFormat f = args.format == "graph6" ? GraphFormat::graph6 : GraphFormat::edgelist;
    Graph g = parse(text, f, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    return g;
}

void write_out(const CommonArgs& args, const std::string& text) {
    if (args.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(args.out_path);
    if (!out.good()) throw usage_error("cannot write " + args.out_path);
    out << text;
}

std::vector<Vertex> parse_vertex_list(const std::string& csv) {
    std::vector<Vertex> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    if (out.empty()) throw usage_error("empty vertex list");
    return out;
}

int run_gen(const CommonArgs& args) {
    Graph g = load_graph(args);
    GraphFormat f = args.format == "edgelist" ? GraphFormat::edgelist : GraphFormat::graph6;
    std::string code = emit(g, f);
    if (f == GraphFormat::graph6) code += "\n";
    write_out(args, code);
    return kExitOk;
}

int run_upsilon(const CommonArgs& args) {
    Graph g = load_graph(args);
    ScnResult r = upsilon(g);
    if (args.out == "json") {
        json j;
        j["upsilon"] = r.upsilon;
        j["witness"] = r.witness.to_vector();
        j["common"] = r.common.to_vector();
        write_out(args, j.dump() + "\n");
    } else {
        write_out(args, "upsilon = " + std::to_string(r.upsilon) +
                            ", witness = " + r.witness.to_string() + "\n");
    }
    return kExitOk;
}

int run_copnum(const CommonArgs& args, bool hyperopic_game, bool dump_policy) {
    Graph g = load_graph(args);
    SolveOptions opt;
    opt.node_budget = args.budget;
    int k = hyperopic_game ? hyperopic_cop_number(g, opt) : cop_number(g, opt);
    std::ostringstream out;
    if (args.out == "json") {
        json j;
        j[hyperopic_game ? "c_H" : "c"] = k;
        out << j.dump() << "\n";
    } else {
        out << (hyperopic_game ? "c_H = " : "c = ") << k << "\n";
    }
    if (dump_policy) {
        SolveResult solved =
            hyperopic_game ? solve_hyperopic(g, k, Objective::capture(), opt)
                           : solve_classic(g, k, Objective::capture(), opt);
        out << policy_to_text(solved.policy);
    }
    write_out(args, out.str());
    return kExitOk;
}

int run_guard(const CommonArgs& args, const std::string& path_csv, int cops, bool classic_game) {
    Graph g = load_graph(args);
    std::vector<Vertex> p = parse_vertex_list(path_csv);
    SolveOptions opt;
    opt.node_budget = args.budget;
    Objective obj = Objective::guard(p);
    SolveResult r = classic_game ? solve_classic(g, cops, obj, opt)
                                 : solve_hyperopic(g, cops, obj, opt);
    if (args.out == "json") {
        json j;
        j["guardable"] = r.cops_win;
        j["cops"] = cops;
        if (r.cops_win) j["initial"] = r.initial.positions;
        write_out(args, j.dump() + "\n");
    } else {
        write_out(args, r.cops_win ? "GUARDABLE\n" : "NOT GUARDABLE\n");
    }
    return r.cops_win ? kExitOk : kExitFinding;
}

int run_verify(const CommonArgs& args, const std::string& which, const std::string& path_csv,
               int kn_n, int kn_m) {
    std::unique_ptr<CopStrategy> strategy;
    std::optional<Graph> graph;
    Objective objective = Objective::capture();

    if (which == "kn_pm_sweep") {
        auto s = std::make_unique<KnPmSweepStrategy>(kn_n, kn_m);
        graph = s->product();
        strategy = std::move(s);
    } else {
        graph = load_graph(args);
        if (which == "join_scn") {
            strategy = std::make_unique<JoinScnStrategy>(*graph);
        } else if (which == "join_cd") {
            strategy = std::make_unique<JoinConnectedDisconnectedStrategy>(*graph);
        } else if (which == "isometric_guard") {
            std::vector<Vertex> p = parse_vertex_list(path_csv);
            strategy = std::make_unique<IsometricGuardStrategy>(*graph, p);
            objective = Objective::guard(p);
        } else if (which == "two_phase") {
            if (!graph->product_grid() || graph->product_grid()->kind != ProductKind::cartesian)
                throw usage_error("two_phase needs a cartesian product input (--gen cartesian:...)");
            const ProductGrid& grid = *graph->product_grid();
            VertexSet column, row;
            for (int i = 0; i < grid.left_count; ++i) column.add(i * grid.right_count);
            for (int j = 0; j < grid.right_count; ++j) row.add(j);
            Graph left = induced(*graph, column).graph;
            Graph right = induced(*graph, row).graph;
            strategy = std::make_unique<CartesianTwoPhaseStrategy>(left, right, args.budget);
            graph = static_cast<CartesianTwoPhaseStrategy*>(strategy.get())->product();
        } else if (which == "anchored_scn") {
            auto table = std::make_shared<SolveTable>(*graph, cop_number(*graph), false, args.budget);
            strategy = make_scn_anchored(*graph, table);
        } else if (which == "anchored_cut_vertex") {
            strategy = std::make_unique<CutVertexAnchoredStrategy>(*graph, args.budget);
        } else {
            throw usage_error("unknown strategy '" + which + "'");
        }
    }

    VerifyOptions vopt;
    BestResponse r = best_response(*graph, *strategy, objective, vopt);
    std::ostringstream out;
    if (args.out == "json") {
        json j;
        j["strategy"] = strategy->name();
        j["certified"] = r.certified;
        j["states"] = r.states;
        if (r.certified) j["worst_round"] = r.worst_round;
        if (r.refutation) j["refutation"] = trace_to_json(*r.refutation);
        out << j.dump() << "\n";
    } else if (r.certified) {
        out << "Certified: worst-case capture round " << r.worst_round << "\n";
    } else {
        out << "Refuted\n" << trace_to_text(*r.refutation);
    }
    write_out(args, out.str());
    return r.certified ? kExitOk : kExitFinding;
}

json facts_json(const GraphFacts& f) {
    json j;
    j["n"] = f.n;
    if (f.diameter)
        j["diameter"] = *f.diameter;
    else
        j["diameter"] = nullptr;
    j["triangle_free"] = f.triangle_free;
    j["cut_vertex"] = f.has_cut_vertex;
    j["tree"] = f.is_tree;
    j["c"] = f.c;
    j["c_H"] = f.c_h;
    j["upsilon"] = f.upsilon;
    return j;
}

int run_audit(const CommonArgs& args, const std::string& pair_mode, const std::string& gen2) {
    SolveOptions opt;
    opt.node_budget = args.budget;
    AuditReport report;
    if (pair_mode.empty()) {
        report = audit(load_graph(args), opt);
    } else {
        Graph g = load_graph(args);
        if (gen2.empty()) throw usage_error("pair audit needs --gen2");
        Graph j = generate(gen2, args.seed);
        PairMode mode = pair_mode == "join" ? PairMode::join : PairMode::cartesian;
        report = audit_pair(g, j, mode, opt).combined;
    }
    if (args.out == "json") {
        json j;
        j["facts"] = facts_json(report.facts);
        j["checks"] = json::array();
        for (const BoundCheck& c : report.checks) {
            json jc;
            jc["name"] = c.name;
            jc["lhs"] = c.lhs;
            jc["rhs"] = c.rhs;
            jc["holds"] = c.holds;
            jc["skipped"] = c.skipped;
            j["checks"].push_back(std::move(jc));
        }
        j["pass"] = report.pass;
        write_out(args, j.dump() + "\n");
    } else if (args.out == "csv") {
        write_out(args, audit_report_csv(report));
    } else {
        write_out(args, audit_report_text(report));
    }
    return report.pass ? kExitOk : kExitFinding;
}

int run_scan(const CommonArgs& args, int max_n) {
    if (args.in_path.empty()) throw usage_error("scan needs --in CORPUS.g6");
    std::string text = slurp(args.in_path);
    std::istringstream in(text);
    std::vector<Graph> corpus;
    for (const Graph& g : read_graph6_stream(in))
        if (g.order() <= max_n && is_connected(g)) corpus.push_back(g);
    SolveOptions opt;
    opt.node_budget = args.budget;
    std::vector<ConjectureRow> rows = conjecture_scan(corpus, opt);
    bool counterexample = false;
    for (const ConjectureRow& r : rows)
        if (!r.conj1_consistent || !r.conj2_consistent) counterexample = true;
    std::uint64_t hash = 1469598103934665603ULL;
    for (const Graph& g : corpus)
        for (char c : emit_graph6(g)) hash = (hash ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
    std::ostringstream out;
    if (args.out == "json") {
        json j;
        j["corpus_hash"] = hash;
        j["rows"] = json::array();
        for (const ConjectureRow& r : rows) {
            json jr;
            jr["left"] = r.left_g6;
            jr["right"] = r.right_g6;
            jr["c_h_join"] = r.c_h_join;
            jr["conj1_rhs"] = r.conj1_rhs;
            jr["conj2_rhs"] = r.conj2_rhs;
            jr["conj1"] = r.conj1_consistent ? "consistent" : "COUNTEREXAMPLE";
            jr["conj2"] = r.conj2_consistent ? "consistent" : "COUNTEREXAMPLE";
            if (!r.certificate.empty()) jr["certificate"] = r.certificate;
            j["rows"].push_back(std::move(jr));
        }
        out << j.dump() << "\n";
    } else {
        out << "# corpus_hash " << hash << "\n" << conjecture_rows_csv(rows);
        for (const ConjectureRow& r : rows)
            if (!r.certificate.empty())
                out << "# certificate " << r.left_g6 << " " << r.right_g6 << "\n"
                    << r.certificate;
    }
    write_out(args, out.str());
    return counterexample ? kExitFinding : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperopic cops-and-robber laboratory"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string guard_path, verify_path, verify_which, pair_mode, gen2;
    int guard_cops = 1, kn_n = 2, kn_m = 2, scan_max_n = 4;
    bool classic_game = false, dump_policy = false;

    CLI::App* gen = app.add_subcommand("gen", "generate a graph and print it");
    add_common(gen, args);

    CLI::App* ups = app.add_subcommand("upsilon", "minimum small common neighbourhood set");
    add_common(ups, args);

    CLI::App* cop = app.add_subcommand("copnum", "classic cop number");
    add_common(cop, args);
    cop->add_flag("--policy", dump_policy, "dump the winning policy table");

    CLI::App* hcop = app.add_subcommand("hcopnum", "hyperopic cop number");
    add_common(hcop, args);
    hcop->add_flag("--policy", dump_policy, "dump the winning policy table");

    CLI::App* guard = app.add_subcommand("guard", "solve the path-guarding game");
    add_common(guard, args);
    guard->add_option("--path", guard_path, "comma-separated path vertices")->required();
    guard->add_option("--cops", guard_cops, "number of cops")->required();
    guard->add_flag("--classic", classic_game, "perfect-information cops");

    CLI::App* verify = app.add_subcommand("verify", "certify a scripted strategy");
    add_common(verify, args);
    verify->add_option("strategy", verify_which,
                       "join_scn|join_cd|isometric_guard|two_phase|kn_pm_sweep|anchored_scn|"
                       "anchored_cut_vertex")
        ->required();
    verify->add_option("--path", verify_path, "guard path for isometric_guard");
    verify->add_option("--n", kn_n, "clique size for kn_pm_sweep");
    verify->add_option("--m", kn_m, "path length for kn_pm_sweep");

    CLI::App* aud = app.add_subcommand("audit", "check every applicable bound");
    add_common(aud, args);
    aud->add_option("--pair", pair_mode, "audit a pair: join|cartesian")
        ->check(CLI::IsMember({"join", "cartesian"}));
    aud->add_option("--gen2", gen2, "second factor for --pair");

    CLI::App* scan = app.add_subcommand("scan", "scan join pairs for conjecture counterexamples");
    add_common(scan, args);
    scan->add_option("--max-n", scan_max_n, "largest factor order to include");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return run_gen(args);
        if (ups->parsed()) return run_upsilon(args);
        if (cop->parsed()) return run_copnum(args, false, dump_policy);
        if (hcop->parsed()) return run_copnum(args, true, dump_policy);
        if (guard->parsed()) return run_guard(args, guard_path, guard_cops, classic_game);
        if (verify->parsed()) return run_verify(args, verify_which, verify_path, kn_n, kn_m);
        if (aud->parsed()) return run_audit(args, pair_mode, gen2);
        if (scan->parsed()) return run_scan(args, scan_max_n);
        return kExitUsage;
    } catch (const resource_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
