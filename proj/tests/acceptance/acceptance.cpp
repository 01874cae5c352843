// Acceptance suite: one criterion per numbered check, exact integer
// expectations throughout.  Run with no argument for the whole battery or
// with a single number to run one criterion.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "hyperopic/hyperopic.hpp"

using namespace hyperopic;

namespace {

struct Check {
    int id;
    std::string title;
    std::function<void()> body;
};

struct failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw failure(what);
}

std::vector<Graph> load_corpus(const std::string& name) {
    std::ifstream in(std::string(HYPEROPIC_DATA_DIR) + "/" + name);
    if (!in.good()) throw failure("missing corpus file " + name);
    return read_graph6_stream(in);
}

// --- criteria ---------------------------------------------------------------

void complete_graph_numbers() {
    for (int n = 2; n <= 7; ++n) {
        auto start = std::chrono::steady_clock::now();
        int got = hyperopic_cop_number(complete(n));
        auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        expect(got == (n + 1) / 2, "c_H(K_" + std::to_string(n) + ") = " + std::to_string(got) +
                                       ", expected " + std::to_string((n + 1) / 2));
        expect(secs < 60.0, "K_" + std::to_string(n) + " took " + std::to_string(secs) + "s");
    }
}

void clique_minus_edge_numbers() {
    for (int n = 4; n <= 7; ++n) {
        int got = hyperopic_cop_number(complete_minus_edge(n));
        expect(got == n / 2, "c_H(K_" + std::to_string(n) + "-e) = " + std::to_string(got) +
                                 ", expected " + std::to_string(n / 2));
    }
}

void leafed_clique_numbers() {
    for (int n = 4; n <= 6; ++n) {
        int got = hyperopic_cop_number(leafed_complete(n));
        expect(got == 2, "c_H(G_" + std::to_string(n) + ") = " + std::to_string(got));
    }
    for (int n = 5; n <= 6; ++n)
        expect(hyperopic_cop_number(complete(n)) > 2,
               "expected c_H(K_" + std::to_string(n) + ") above c_H(G_" + std::to_string(n) + ")");
}

void trees_and_cycles() {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        int n = 2 + static_cast<int>(seed % 9);  // 2..10 vertices
        Graph t = tree_random(n, seed * 131 + 7);
        expect(hyperopic_cop_number(t) == 1, "tree seed " + std::to_string(seed) + " not one-cop");
    }
    for (int n = 4; n <= 8; ++n)
        expect(!solve_hyperopic(cycle(n), 1).cops_win,
               "one hyperopic cop should lose on C_" + std::to_string(n));
}

void scn_values_and_oracle() {
    Graph h = strong(path(4), path(2));
    expect(upsilon(h).upsilon == 2, "upsilon of the strong grid");
    expect(upsilon(join(h, h)).upsilon == 3, "upsilon of the joined strong grids");
    for (const Graph& g : load_corpus("connected_le7.g6")) {
        ScnResult fast = upsilon(g);
        ScnResult slow = upsilon_oracle(g);
        expect(fast.upsilon == slow.upsilon && fast.witness == slow.witness,
               "upsilon mismatch on " + emit_graph6(g));
    }
}

void guard_game() {
    Graph s = strong(path(2), path(3));
    std::vector<Vertex> row{0, 1, 2};
    expect(!solve_hyperopic(s, 1, Objective::guard(row)).cops_win,
           "one hyperopic cop should not guard the grid path");
    expect(solve_classic(s, 1, Objective::guard(row)).cops_win,
           "one perfect-information cop should guard the grid path");
    IsometricGuardStrategy strat(s, row);
    BestResponse r = best_response(s, strat, Objective::guard(row));
    expect(r.certified, "two-cop guard strategy refuted");
}

void clique_times_path() {
    for (int n = 2; n <= 4; ++n)
        for (int m = 2; m <= 5; ++m) {
            Graph p = cartesian(complete(n), path(m));
            std::string name = "K_" + std::to_string(n) + " x P_" + std::to_string(m);
            expect(!solve_hyperopic(p, 1).cops_win, "one cop should lose on " + name);
            expect(solve_hyperopic(p, 2).cops_win, "two cops should win on " + name);
            KnPmSweepStrategy strat(n, m);
            expect(best_response(strat.product(), strat).certified,
                   "sweep strategy refuted on " + name);
        }
}

void clique_times_clique() {
    for (int n = 2; n <= 4; ++n)
        for (int m = 2; m <= 4; ++m) {
            Graph p = cartesian(complete(n), complete(m));
            std::string name = "K_" + std::to_string(n) + " x K_" + std::to_string(m);
            expect(hyperopic_cop_number(p) <= 4, "c_H too large on " + name);
            expect(upsilon(p).upsilon == 2, "upsilon should be two on " + name);
        }
}

void corpus_bound_audit() {
    for (const Graph& g : load_corpus("connected_le6.g6")) {
        AuditReport r = audit(g);
        expect(r.pass, "bound violation on " + emit_graph6(g) + ":\n" + audit_report_text(r));
    }
}

void join_suite() {
    std::mt19937_64 rng(2024);
    auto connected = [&](int n) { return er_connected(n, 0.5, rng()); };
    auto disconnected = [&](int n) {
        int a = 2 + static_cast<int>(rng() % (static_cast<unsigned>(n) - 3));
        return disjoint_union(er_connected(a, 0.6, rng()), er_connected(n - a, 0.6, rng()));
    };

    for (int trial = 0; trial < 4; ++trial) {
        Graph g = connected(4 + static_cast<int>(rng() % 2));
        Graph j = connected(4 + static_cast<int>(rng() % 2));
        Graph gj = join(g, j);
        int ch = hyperopic_cop_number(gj);
        expect(ch <= upsilon(g).upsilon + upsilon(j).upsilon, "witness-sum bound failed");
        JoinScnStrategy strat(gj);
        expect(best_response(gj, strat).certified, "join witnesses refuted");
    }
    for (int trial = 0; trial < 3; ++trial) {
        Graph g = disconnected(5);
        Graph j = disconnected(5);
        Graph gj = join(g, j);
        expect(hyperopic_cop_number(gj) <= 4, "two disconnected sides should fall to four cops");
        JoinScnStrategy strat(gj);
        expect(best_response(gj, strat).certified, "join witnesses refuted (disconnected pair)");
    }
    for (int trial = 0; trial < 3; ++trial) {
        Graph g = connected(4 + static_cast<int>(rng() % 2));
        Graph j = disconnected(5);
        Graph gj = join(g, j);
        expect(hyperopic_cop_number(gj) <= hyperopic_cop_number(g) + 2,
               "sentry bound failed");
        JoinScnStrategy scn_strat(gj);
        expect(best_response(gj, scn_strat).certified, "join witnesses refuted (mixed pair)");
        JoinConnectedDisconnectedStrategy cd_strat(gj);
        expect(best_response(gj, cd_strat).certified, "sentry strategy refuted");
    }
}

void two_phase_products() {
    std::mt19937_64 rng(77);
    std::vector<std::pair<Graph, Graph>> pairs;
    pairs.emplace_back(path(4), path(5));
    pairs.emplace_back(tree_random(4, 11), tree_random(5, 12));
    pairs.emplace_back(complete(2), tree_random(8, 13));
    pairs.emplace_back(cycle(4), path(4));
    pairs.emplace_back(complete(3), path(4));
    pairs.emplace_back(complete(2), complete(2));
    pairs.emplace_back(er_connected(4, 0.5, 21), er_connected(5, 0.5, 22));
    pairs.emplace_back(tree_random(6, 14), path(3));
    pairs.emplace_back(cycle(5), complete(2));
    pairs.emplace_back(er_connected(4, 0.6, 23), tree_random(4, 24));
    int index = 0;
    for (const auto& [g, j] : pairs) {
        ++index;
        CartesianTwoPhaseStrategy strat(g, j);
        expect(strat.cop_count() == hyperopic_cop_number(g) + hyperopic_cop_number(j),
               "cop budget mismatch on pair " + std::to_string(index));
        BestResponse r = best_response(strat.product(), strat);
        expect(r.certified, "two-phase strategy refuted on pair " + std::to_string(index));
    }
}

void property_suite() {
    // belief soundness over 1000 instrumented plays
    std::mt19937_64 rng(5150);
    int plays = 0;
    while (plays < 1000) {
        Graph g = er_connected(5 + static_cast<int>(rng() % 3), 0.5, rng());
        int k = 1 + static_cast<int>(rng() % 2);
        SolveResult r = solve_hyperopic(g, k);
        if (!r.cops_win) continue;
        PolicyCopStrategy cops(g, r.policy);
        SeededRandomRobber robber(rng());
        Trace t = referee(g, cops, robber, {.round_cap = 300, .instrument_belief = true});
        expect(t.outcome == Outcome::captured, "winning policy failed to capture");
        ++plays;
    }

    // solver monotonicity in k, and policy self-check on every winning solve
    for (const Graph& g : load_corpus("connected_le6.g6")) {
        bool prev = false;
        for (int k = 1; k <= 3; ++k) {
            SolveResult r = solve_hyperopic(g, k);
            expect(!prev || r.cops_win, "k-monotonicity violated on " + emit_graph6(g));
            if (r.cops_win)
                expect(extract_policy_check(g, k, r),
                       "policy self-check failed on " + emit_graph6(g));
            prev = r.cops_win;
        }
    }

    // format round trip on 500 random graphs
    std::mt19937_64 rng2(31);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 1 + static_cast<int>(rng2() % 20);
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                if (rng2() % 2) edges.emplace_back(u, v);
        Graph g = Graph::from_edges(n, edges);
        expect(parse_graph6(emit_graph6(g)) == g, "graph6 round trip failed");
    }
}

void conjecture_scan_small() {
    std::vector<Graph> corpus;
    for (const Graph& g : load_corpus("connected_le6.g6"))
        if (g.order() <= 4) corpus.push_back(g);
    expect(corpus.size() == 10, "expected the ten connected graphs on up to four vertices");
    std::vector<ConjectureRow> rows = conjecture_scan(corpus);
    expect(rows.size() == 55, "expected all unordered pairs");
    std::string first = conjecture_rows_csv(rows);
    std::string second = conjecture_rows_csv(conjecture_scan(corpus));
    expect(first == second, "scan output not reproducible");
    int counterexamples = 0;
    for (const ConjectureRow& r : rows)
        if (!r.conj1_consistent || !r.conj2_consistent) ++counterexamples;
    std::cout << "  scan: " << rows.size() << " pairs, " << counterexamples
              << " counterexample candidates\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<Check> checks = {
        {1, "hyperopic cop number of K_n is ceil(n/2) for n=2..7", complete_graph_numbers},
        {2, "hyperopic cop number of K_n minus an edge is floor(n/2) for n=4..7",
         clique_minus_edge_numbers},
        {3, "leafed cliques need exactly two cops, below the clique itself",
         leafed_clique_numbers},
        {4, "random trees are one-cop, cycles are not", trees_and_cycles},
        {5, "small-common-neighbourhood values and the literal-scan agreement",
         scn_values_and_oracle},
        {6, "guarding the grid path: blind one loses, sighted one wins, pair certified",
         guard_game},
        {7, "clique times path is exactly two cops, sweep certified", clique_times_path},
        {8, "clique times clique stays within four cops with upsilon two", clique_times_clique},
        {9, "bound audit over all connected graphs on up to six vertices", corpus_bound_audit},
        {10, "join suite: witness-sum, four-cop and sentry bounds with certified strategies",
         join_suite},
        {11, "two-phase pursuit certified on ten product pairs", two_phase_products},
        {12, "property suite: belief soundness, monotonicity, policy checks, round trips",
         property_suite},
        {13, "conjecture scan over all small factor pairs, reproducible", conjecture_scan_small},
    };

    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    int failures = 0;
    for (const Check& c : checks) {
        if (only != 0 && c.id != only) continue;
        auto start = std::chrono::steady_clock::now();
        try {
            c.body();
            auto secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            std::printf("PASS %2d: %s (%.1fs)\n", c.id, c.title.c_str(), secs);
        } catch (const std::exception& e) {
            ++failures;
            std::printf("FAIL %2d: %s\n         %s\n", c.id, c.title.c_str(), e.what());
        }
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
