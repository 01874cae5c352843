#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "hyperopic/format.hpp"
#include "hyperopic/generators.hpp"
#include "hyperopic/solver.hpp"

using namespace hyperopic;

namespace {

// Independent reference: depth-bounded minimax over explicit candidate
// sets, memoised monotonically in the depth.  Deliberately built on plain
// containers rather than the solver's interned node space.
class MiniOracle {
  public:
    MiniOracle(const Graph& g, int k, bool pooled) : g_(g), k_(k), pooled_(pooled) {}

    bool cops_win() {
        long long states = 2;
        for (int i = 0; i < k_; ++i) states *= g_.order();
        states *= 1LL << g_.order();
        depth_ = static_cast<int>(std::min<long long>(states * 2 + 2, 20000));
        std::vector<std::vector<Vertex>> placements;
        std::vector<Vertex> pick;
        all_multisets(pick, 0, placements);
        for (const auto& c0 : placements) {
            std::set<Vertex> open;
            for (Vertex v = 0; v < g_.order(); ++v)
                if (!occupied(c0, v)) open.insert(v);
            bool all = true;
            for (const auto& branch : split(c0, open))
                if (!win(c0, branch, true, depth_)) {
                    all = false;
                    break;
                }
            if (all) return true;
        }
        return false;
    }

  private:
    using State = std::tuple<std::vector<Vertex>, std::vector<Vertex>, bool>;

    static bool occupied(const std::vector<Vertex>& cops, Vertex v) {
        for (Vertex c : cops)
            if (c == v) return true;
        return false;
    }

    void all_multisets(std::vector<Vertex>& pick, Vertex from,
                       std::vector<std::vector<Vertex>>& out) {
        if (static_cast<int>(pick.size()) == k_) {
            out.push_back(pick);
            return;
        }
        for (Vertex v = from; v < g_.order(); ++v) {
            pick.push_back(v);
            all_multisets(pick, v, out);
            pick.pop_back();
        }
    }

    std::vector<std::set<Vertex>> split(const std::vector<Vertex>& cops,
                                        const std::set<Vertex>& candidates) const {
        std::vector<std::set<Vertex>> out;
        std::set<Vertex> pool;
        for (Vertex v : candidates) {
            bool all_adjacent = true;
            for (Vertex c : cops)
                if (!g_.adjacent(c, v)) all_adjacent = false;
            if (pooled_ && all_adjacent)
                pool.insert(v);
            else
                out.push_back({v});
        }
        if (!pool.empty()) out.push_back(pool);
        return out;
    }

    bool win(const std::vector<Vertex>& cops, const std::set<Vertex>& belief, bool cop_turn,
             int depth) {
        if (depth <= 0) return false;
        State s{cops, std::vector<Vertex>(belief.begin(), belief.end()), cop_turn};
        if (proven_.count(s)) return true;
        auto it = failed_upto_.find(s);
        if (it != failed_upto_.end() && it->second >= depth) return false;
        bool result;
        if (cop_turn) {
            result = false;
            std::set<std::vector<Vertex>> actions;
            std::vector<Vertex> cur(cops.size());
            collect_actions(cops, cur, 0, actions);
            for (const auto& act : actions) {
                std::set<Vertex> survivors;
                for (Vertex v : belief)
                    if (!occupied(act, v)) survivors.insert(v);
                if (survivors.empty()) {
                    result = true;
                    break;
                }
                bool all = true;
                for (const auto& branch : split(act, survivors))
                    if (!win(act, branch, false, depth - 1)) {
                        all = false;
                        break;
                    }
                if (all) {
                    result = true;
                    break;
                }
            }
        } else {
            std::set<Vertex> expanded;
            for (Vertex b : belief) {
                if (!occupied(cops, b)) expanded.insert(b);
                for (Vertex w : g_.neighbours(b))
                    if (!occupied(cops, w)) expanded.insert(w);
            }
            result = true;
            for (const auto& branch : split(cops, expanded))
                if (!win(cops, branch, true, depth - 1)) {
                    result = false;
                    break;
                }
        }
        if (result)
            proven_.insert(s);
        else if (it == failed_upto_.end() || it->second < depth)
            failed_upto_[s] = depth;
        return result;
    }

    void collect_actions(const std::vector<Vertex>& cops, std::vector<Vertex>& cur, std::size_t i,
                         std::set<std::vector<Vertex>>& out) const {
        if (i == cops.size()) {
            std::vector<Vertex> sorted = cur;
            std::sort(sorted.begin(), sorted.end());
            out.insert(sorted);
            return;
        }
        cur[i] = cops[i];
        collect_actions(cops, cur, i + 1, out);
        for (Vertex w : g_.neighbours(cops[i])) {
            cur[i] = w;
            collect_actions(cops, cur, i + 1, out);
        }
    }

    const Graph& g_;
    int k_;
    bool pooled_;
    int depth_;
    std::set<State> proven_;
    std::map<State, int> failed_upto_;
};

}  // namespace

TEST_CASE("classic solving matches the known small values") {
    REQUIRE_FALSE(solve_classic(cycle(4), 1).cops_win);
    REQUIRE(solve_classic(cycle(4), 2).cops_win);
    for (int m = 2; m <= 6; ++m) REQUIRE(solve_classic(path(m), 1).cops_win);
    REQUIRE(solve_classic(cartesian(complete(3), complete(3)), 2).cops_win);
    REQUIRE(cop_number(complete(7)) == 1);
    REQUIRE(cop_number(cycle(5)) == 2);
}

TEST_CASE("hyperopic solving matches the known family values") {
    REQUIRE_FALSE(solve_hyperopic(complete(5), 2).cops_win);
    REQUIRE(solve_hyperopic(complete(5), 3).cops_win);
    REQUIRE(solve_hyperopic(leafed_complete(5), 2).cops_win);
    REQUIRE_FALSE(solve_hyperopic(complete_minus_edge(6), 2).cops_win);
    REQUIRE(solve_hyperopic(complete_minus_edge(6), 3).cops_win);
    REQUIRE(hyperopic_cop_number(tree_random(8, 21)) == 1);
    REQUIRE(hyperopic_cop_number(cartesian(complete(4), path(3))) == 2);
}

TEST_CASE("guard objective on the small strong grid") {
    Graph s = strong(path(2), path(3));
    std::vector<Vertex> row{0, 1, 2};
    Objective guard = Objective::guard(row);
    REQUIRE(solve_classic(s, 1, guard).cops_win);
    REQUIRE_FALSE(solve_hyperopic(s, 1, guard).cops_win);
    REQUIRE(solve_hyperopic(s, 2, guard).cops_win);

    REQUIRE_THROWS_AS(solve_hyperopic(s, 1, Objective::guard({3, 0, 1})), usage_error);
}

TEST_CASE("agreement with the bounded minimax reference on small graphs") {
    std::ifstream in(std::string(HYPEROPIC_DATA_DIR) + "/connected_le6.g6");
    REQUIRE(in.good());
    std::vector<Graph> graphs = read_graph6_stream(in);
    int checked = 0;
    for (const Graph& g : graphs) {
        if (g.order() > 5) continue;
        for (int k = 1; k <= 2; ++k) {
            CAPTURE(emit_graph6(g), k);
            REQUIRE(solve_hyperopic(g, k).cops_win == MiniOracle(g, k, true).cops_win());
            REQUIRE(solve_classic(g, k).cops_win == MiniOracle(g, k, false).cops_win());
        }
        ++checked;
    }
    REQUIRE(checked == 31);
}

TEST_CASE("policies replay cleanly") {
    SECTION("tree with one hyperopic cop") {
        Graph t = tree_random(7, 5);
        SolveResult r = solve_hyperopic(t, 1);
        REQUIRE(r.cops_win);
        REQUIRE(extract_policy_check(t, 1, r));
    }
    SECTION("three cops on the five-clique") {
        SolveResult r = solve_hyperopic(complete(5), 3);
        REQUIRE(r.cops_win);
        REQUIRE(extract_policy_check(complete(5), 3, r));
    }
    SECTION("classic pair on a cycle") {
        SolveResult r = solve_classic(cycle(6), 2);
        REQUIRE(r.cops_win);
        REQUIRE(extract_policy_check(cycle(6), 2, r));
    }
    SECTION("a corrupted policy is rejected") {
        Graph t = path(4);
        SolveResult r = solve_hyperopic(t, 1);
        REQUIRE(r.cops_win);
        for (auto& [node, act] : r.policy.actions) act = CopConfig({3}).code();
        REQUIRE_FALSE(extract_policy_check(t, 1, r));
    }
    SECTION("guard policy stays safe") {
        Graph s = strong(path(2), path(3));
        SolveResult r = solve_classic(s, 1, Objective::guard({0, 1, 2}));
        REQUIRE(r.cops_win);
        REQUIRE(extract_policy_check(s, 1, r));
    }
}

TEST_CASE("full information never makes guarding harder") {
    // A winning blind guard works with sight: the cops can recompute the
    // coarser observation from the robber's position and play it.
    std::mt19937_64 rng(61);
    int tried = 0;
    while (tried < 8) {
        Graph g = er_connected(6, 0.5, rng());
        auto [u, v] = g.edges().front();
        std::vector<Vertex> p{u, v};
        Objective guard = Objective::guard(p);
        for (int k = 1; k <= 2; ++k)
            if (solve_hyperopic(g, k, guard).cops_win)
                REQUIRE(solve_classic(g, k, guard).cops_win);
        ++tried;
    }
}

TEST_CASE("win monotonicity in the cop count") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        Graph g = er_connected(6, 0.5, seed + 40);
        bool prev = false;
        for (int k = 1; k <= 3; ++k) {
            bool now = solve_hyperopic(g, k).cops_win;
            if (prev) REQUIRE(now);
            prev = now;
        }
    }
}

TEST_CASE("degenerate boards") {
    // single vertex: the cop placement covers everything
    Graph k1 = complete(1);
    SolveResult r = solve_hyperopic(k1, 1);
    REQUIRE(r.cops_win);
    REQUIRE(r.value == 0);

    // two cops smother a two-path at placement
    SolveResult r2 = solve_hyperopic(path(2), 2);
    REQUIRE(r2.cops_win);
    REQUIRE(r2.value == 0);
}

TEST_CASE("solver guard rails") {
    Graph two = Graph::from_edges(4, {{0, 1}, {2, 3}});
    REQUIRE_THROWS_AS(solve_hyperopic(two, 1), usage_error);
    REQUIRE_THROWS_AS(solve_hyperopic(path(3), 0), usage_error);
    REQUIRE_THROWS_AS(solve_hyperopic(path(3), 7), usage_error);

    SolveOptions tiny;
    tiny.node_budget = 10;
    REQUIRE_THROWS_AS(solve_hyperopic(complete(6), 2, Objective::capture(), tiny),
                      resource_error);
    REQUIRE_THROWS_AS(solve_classic(complete(8), 3, Objective::capture(), tiny), resource_error);
}

TEST_CASE("policy dump is a sorted stable table") {
    SolveResult r = solve_hyperopic(path(3), 1);
    std::string dump = policy_to_text(r.policy);
    REQUIRE(dump.find("k 1") == 0);
    REQUIRE(dump.find("model hyperopic") != std::string::npos);
    REQUIRE(dump == policy_to_text(r.policy));
    REQUIRE(dump.find("->") != std::string::npos);
}

TEST_CASE("solve tables answer from arbitrary positions") {
    Graph k5 = complete(5);
    SolveTable table(k5, 3, true);
    REQUIRE(table.initial_win());
    // clustered start still wins with three cops
    REQUIRE(table.win(CopConfig({0, 0, 0}), VertexSet::of({1, 2, 3, 4})));
    auto act = table.action(CopConfig({0, 0, 0}), VertexSet::of({1, 2, 3, 4}));
    REQUIRE(act.has_value());

    SolveTable classic(path(5), 1, false);
    REQUIRE(classic.win(CopConfig({0}), VertexSet::single(4)));
    REQUIRE(classic.value(CopConfig({0}), VertexSet::single(4)) >= 4);
}
