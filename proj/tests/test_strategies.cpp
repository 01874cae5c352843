#include <catch2/catch_amalgamated.hpp>

#include <memory>

#include "hyperopic/generators.hpp"
#include "hyperopic/strategies.hpp"

using namespace hyperopic;

TEST_CASE("join witnesses capture in one round") {
    Graph h = strong(path(4), path(2));
    Graph hh = join(h, h);
    JoinScnStrategy strat(hh);
    REQUIRE(strat.cop_count() == 4);
    BestResponse r = best_response(hh, strat);
    REQUIRE(r.certified);
    REQUIRE(r.worst_round <= 2);
}

TEST_CASE("join of two disconnected graphs falls to four cops") {
    Graph two_edges = Graph::from_edges(4, {{0, 1}, {2, 3}});
    Graph joined = join(two_edges, two_edges);
    JoinScnStrategy strat(joined);
    REQUIRE(strat.cop_count() <= 4);
    BestResponse r = best_response(joined, strat);
    REQUIRE(r.certified);
}

TEST_CASE("a pendant vertex brings the join down to three cops") {
    Graph spike = path(3);                    // upsilon 1
    Graph other = complete_minus_edge(4);     // upsilon 2
    Graph joined = join(spike, other);
    JoinScnStrategy strat(joined);
    REQUIRE(strat.cop_count() == 3);
    REQUIRE(best_response(joined, strat).certified);
}

TEST_CASE("sentries plus a factor policy clear a join with a disconnected side") {
    Graph c4 = cycle(4);
    Graph two_edges = Graph::from_edges(4, {{0, 1}, {2, 3}});
    Graph joined = join(c4, two_edges);
    JoinConnectedDisconnectedStrategy strat(joined);
    REQUIRE(strat.cop_count() == hyperopic_cop_number(c4) + 2);
    BestResponse r = best_response(joined, strat);
    REQUIRE(r.certified);

    // a robber that jumps into the disconnected side dies on the next move
    ScriptedRobber jumper({0, 4});
    Trace t = referee(joined, strat, jumper, {.instrument_belief = true});
    REQUIRE(t.outcome == Outcome::captured);

    REQUIRE_THROWS_AS(JoinConnectedDisconnectedStrategy(join(c4, path(3))), usage_error);
}

TEST_CASE("anchored witnesses realise the classic-plus-scn bound") {
    for (std::uint64_t seed : {3ULL, 8ULL, 15ULL}) {
        Graph g = er_connected(6, 0.6, seed);
        auto classic = std::make_shared<SolveTable>(g, cop_number(g), false);
        auto strat = make_scn_anchored(g, classic);
        CAPTURE(seed);
        BestResponse r = best_response(g, *strat);
        REQUIRE(r.certified);
        REQUIRE(strat->cop_count() == cop_number(g) + upsilon(g).upsilon);
    }
}

TEST_CASE("the leafed clique falls to the leaf witness plus one classic cop") {
    Graph g5 = leafed_complete(5);
    auto classic = std::make_shared<SolveTable>(g5, cop_number(g5), false);
    auto strat = make_scn_anchored(g5, classic);
    REQUIRE(strat->cop_count() == 2);
    BestResponse r = best_response(g5, *strat);
    REQUIRE(r.certified);
    REQUIRE(r.worst_round <= 1);
}

TEST_CASE("universal vertex with a low-degree mate needs two cops") {
    // wheel-like: universal vertex over a 5-cycle, every rim vertex deg 3
    Graph wheel = join(path(1), cycle(5));
    auto strat = make_universal_anchored(wheel);
    REQUIRE(strat->cop_count() == 2);
    BestResponse r = best_response(wheel, *strat);
    REQUIRE(r.certified);
}

TEST_CASE("triangle-free anchoring keeps the robber visible") {
    Graph c6 = cycle(6);
    auto classic = std::make_shared<SolveTable>(c6, cop_number(c6), false);
    auto strat = make_triangle_free_anchored(c6, classic);
    BestResponse r = best_response(c6, *strat);
    REQUIRE(r.certified);
    REQUIRE(strat->cop_count() == cop_number(c6) + 1);
}

TEST_CASE("cut-vertex anchoring uses one cop above the classic number") {
    SECTION("two triangles glued at a vertex") {
        Graph g = Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
        CutVertexAnchoredStrategy strat(g);
        REQUIRE(strat.cop_count() == cop_number(g) + 1);
        BestResponse r = best_response(g, strat);
        REQUIRE(r.certified);
    }
    SECTION("triangle with a tail") {
        Graph g = Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}});
        CutVertexAnchoredStrategy strat(g);
        BestResponse r = best_response(g, strat);
        REQUIRE(r.certified);
    }
    SECTION("a robber hiding at the cut vertex is taken by the anchor") {
        Graph g = Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
        CutVertexAnchoredStrategy strat(g);
        ScriptedRobber hider({2});  // adjacent to both posts, invisible at placement
        Trace t = referee(g, strat, hider);
        REQUIRE(t.outcome == Outcome::captured);
        REQUIRE(t.end_round <= 1);
    }
    SECTION("rejects graphs without a cut vertex") {
        REQUIRE_THROWS_AS(CutVertexAnchoredStrategy(cycle(5)), usage_error);
    }
}

TEST_CASE("certified strategies match the solver at their cop count") {
    Graph joined = join(cycle(4), complete_minus_edge(4));
    JoinScnStrategy join_strat(joined);
    REQUIRE(best_response(joined, join_strat).certified);
    REQUIRE(solve_hyperopic(joined, join_strat.cop_count()).cops_win);

    CartesianTwoPhaseStrategy two_phase(complete(3), path(3));
    REQUIRE(solve_hyperopic(two_phase.product(), two_phase.cop_count()).cops_win);

    KnPmSweepStrategy sweep(3, 4);
    REQUIRE(solve_hyperopic(sweep.product(), 2).cops_win);
    REQUIRE_FALSE(solve_hyperopic(sweep.product(), 1).cops_win);
}

TEST_CASE("isometric path guarding") {
    Graph s = strong(path(2), path(3));
    std::vector<Vertex> row{0, 1, 2};

    SECTION("two cops guard the short path") {
        IsometricGuardStrategy strat(s, row);
        BestResponse r = best_response(s, strat, Objective::guard(row));
        REQUIRE(r.certified);
    }
    SECTION("a single edge is guarded by standing on it") {
        Graph k4 = complete(4);
        IsometricGuardStrategy strat(k4, {0, 1});
        BestResponse r = best_response(k4, strat, Objective::guard({0, 1}));
        REQUIRE(r.certified);
    }
    SECTION("image tracking on a longer path") {
        Graph grid = cartesian(path(5), path(2));
        std::vector<Vertex> p{0, 2, 4, 6, 8};
        REQUIRE(is_isometric_path(grid, p));
        IsometricGuardStrategy strat(grid, p);
        BestResponse r = best_response(grid, strat, Objective::guard(p));
        REQUIRE(r.certified);
    }
    SECTION("rejects a non-isometric path") {
        Graph c4 = cycle(4);
        REQUIRE_THROWS_AS(IsometricGuardStrategy(c4, {0, 1, 2, 3}), usage_error);
    }
}

TEST_CASE("sweep strategy on complete-times-path") {
    SECTION("small instances certify with two cops") {
        for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}, {4, 5}, {1, 4}}) {
            KnPmSweepStrategy strat(n, m);
            CAPTURE(n, m);
            BestResponse r = best_response(strat.product(), strat);
            REQUIRE(r.certified);
            if (n == 4 && m == 5) REQUIRE(r.worst_round <= m + 2);
            if (m == 2) REQUIRE(r.worst_round <= 1);
        }
    }
}

TEST_CASE("two-phase pursuit on products") {
    SECTION("two trees need one cop each") {
        Graph a = path(3);
        Graph b = tree_random(4, 2);
        CartesianTwoPhaseStrategy strat(a, b);
        REQUIRE(strat.cop_count() == 2);
        BestResponse r = best_response(strat.product(), strat);
        REQUIRE(r.certified);
    }
    SECTION("four-cycle from two edges") {
        CartesianTwoPhaseStrategy strat(complete(2), complete(2));
        BestResponse r = best_response(strat.product(), strat);
        REQUIRE(r.certified);
        REQUIRE(strat.cop_count() == 2);
    }
    SECTION("clique times path stays within its budget") {
        CartesianTwoPhaseStrategy strat(complete(4), path(3));
        REQUIRE(strat.cop_count() == 3);  // 2 + 1
        BestResponse r = best_response(strat.product(), strat);
        REQUIRE(r.certified);
    }
}

TEST_CASE("best response refutes a hopeless strategy") {
    Graph c4 = cycle(4);
    SolveResult r1 = solve_hyperopic(path(4), 1);  // winning policy, wrong graph size is fine

    class OneSitter : public CopStrategy {
      public:
        std::string name() const override { return "one_sitter"; }
        int cop_count() const override { return 1; }
        CopConfig initial_placement() const override { return CopConfig({0}); }
        Memory initial_memory() const override { return {}; }
        Memory observe(const Observation&, Memory mem) const override { return mem; }
        std::pair<CopConfig, Memory> act(Memory mem) const override {
            return {CopConfig({0}), std::move(mem)};
        }
    } sitter;

    BestResponse r = best_response(c4, sitter);
    REQUIRE_FALSE(r.certified);
    REQUIRE(r.refutation.has_value());
    REQUIRE(r.refutation->outcome == Outcome::evaded);

    // removing a cop from the guard pair loses the guard game
    Graph s = strong(path(2), path(3));
    BestResponse guard = best_response(s, sitter, Objective::guard({0, 1, 2}));
    REQUIRE_FALSE(guard.certified);
    REQUIRE(guard.refutation.has_value());
}
