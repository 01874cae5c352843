#include <catch2/catch_amalgamated.hpp>

#include "hyperopic/generators.hpp"
#include "hyperopic/referee.hpp"
#include "hyperopic/solver.hpp"
#include "hyperopic/trace_io.hpp"

using namespace hyperopic;

namespace {

// Holds a fixed configuration forever.
class SittingCops : public CopStrategy {
  public:
    explicit SittingCops(CopConfig c) : config_(std::move(c)) {}
    std::string name() const override { return "sitting"; }
    int cop_count() const override { return config_.count(); }
    CopConfig initial_placement() const override { return config_; }
    Memory initial_memory() const override { return {}; }
    Memory observe(const Observation&, Memory mem) const override { return mem; }
    std::pair<CopConfig, Memory> act(Memory mem) const override { return {config_, std::move(mem)}; }

  private:
    CopConfig config_;
};

class CheatingCops : public CopStrategy {
  public:
    std::string name() const override { return "cheating"; }
    int cop_count() const override { return 1; }
    CopConfig initial_placement() const override { return CopConfig({0}); }
    Memory initial_memory() const override { return {}; }
    Memory observe(const Observation&, Memory mem) const override { return mem; }
    std::pair<CopConfig, Memory> act(Memory mem) const override {
        return {CopConfig({3}), std::move(mem)};  // teleports
    }
};

}  // namespace

TEST_CASE("optimal tree policy captures any robber") {
    Graph t = tree_random(9, 13);
    SolveResult r = solve_hyperopic(t, 1);
    REQUIRE(r.cops_win);
    PolicyCopStrategy cops(t, r.policy);

    SECTION("greedy evader") {
        GreedyEvader robber;
        Trace trace = referee(t, cops, robber, {.round_cap = 200, .instrument_belief = true});
        REQUIRE(trace.outcome == Outcome::captured);
        REQUIRE(trace.end_round <= r.value);
    }
    SECTION("stationary robber") {
        StationaryRobber robber(t.order() - 1);
        Trace trace = referee(t, cops, robber, {.round_cap = 200, .instrument_belief = true});
        REQUIRE(trace.outcome == Outcome::captured);
    }
    SECTION("seeded random robbers stay inside the belief") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            SeededRandomRobber robber(seed);
            Trace trace = referee(t, cops, robber, {.round_cap = 200, .instrument_belief = true});
            REQUIRE(trace.outcome == Outcome::captured);
        }
    }
}

TEST_CASE("standing still on a cycle is evasion") {
    Graph c6 = cycle(6);
    SittingCops cops(CopConfig({0, 1}));
    StationaryRobber robber(3);
    Trace trace = referee(c6, cops, robber);
    REQUIRE(trace.outcome == Outcome::evaded);
    REQUIRE(trace.end_round <= 2);
}

TEST_CASE("placement on a cop is immediate capture") {
    Graph p3 = path(3);
    SittingCops cops(CopConfig({1}));
    StationaryRobber robber(1);
    Trace trace = referee(p3, cops, robber);
    REQUIRE(trace.outcome == Outcome::captured);
    REQUIRE(trace.end_round == 0);
}

TEST_CASE("walking onto a cop is capture too") {
    Graph p3 = path(3);
    SittingCops cops(CopConfig({1}));
    ScriptedRobber lemming({0, 1});
    Trace trace = referee(p3, cops, lemming);
    REQUIRE(trace.outcome == Outcome::captured);
    REQUIRE(trace.end_round == 1);
    REQUIRE(trace.rounds.back().robber_move == 1);
}

TEST_CASE("illegal moves are named") {
    Graph p4 = path(4);
    CheatingCops cops;
    StationaryRobber robber(2);
    try {
        referee(p4, cops, robber);
        FAIL("expected a rule violation");
    } catch (const rule_violation& e) {
        REQUIRE(e.mover == "cops");
        REQUIRE(e.round == 1);
    }

    class CheatingRobber : public RobberStrategy {
      public:
        std::string name() const override { return "cheater"; }
        Vertex place(const Graph&, const CopConfig&) override { return 3; }
        Vertex move(const Graph&, const CopConfig&, Vertex) override { return 0; }
    } teleporter;
    SittingCops sitting(CopConfig({1}));
    try {
        referee(p4, sitting, teleporter);
        FAIL("expected a rule violation");
    } catch (const rule_violation& e) {
        REQUIRE(e.mover == "robber");
    }
}

TEST_CASE("the round cap cuts endless pursuits off") {
    Graph c6 = cycle(6);
    SittingCops cops(CopConfig({0}));
    SeededRandomRobber robber(2);  // fresh randomness defeats the repetition check
    Trace t = referee(c6, cops, robber, {.round_cap = 7});
    REQUIRE((t.outcome == Outcome::evaded || t.outcome == Outcome::cutoff));
    REQUIRE(t.end_round <= 7);
}

TEST_CASE("scripted play produces a faithful trace") {
    Graph p5 = path(5);
    SolveResult r = solve_hyperopic(p5, 1);
    PolicyCopStrategy cops(p5, r.policy);
    ScriptedRobber robber({4, 4, 3});
    Trace trace = referee(p5, cops, robber, {.instrument_belief = true});
    REQUIRE(trace.outcome == Outcome::captured);

    std::string text = trace_to_text(trace);
    REQUIRE(text.find("place cops") == 0);
    REQUIRE(text.find("outcome captured") != std::string::npos);

    nlohmann::json j = trace_to_json(trace);
    REQUIRE(j["outcome"] == "captured");
    REQUIRE(j["rounds"].is_array());
    REQUIRE(!j["rounds"].empty());
}

TEST_CASE("belief soundness across random instrumented plays") {
    std::mt19937_64 rng(99);
    int plays = 0;
    while (plays < 60) {
        Graph g = er_connected(6, 0.5, rng());
        int k = 1 + static_cast<int>(rng() % 2);
        SolveResult r = solve_hyperopic(g, k);
        if (!r.cops_win) continue;
        PolicyCopStrategy cops(g, r.policy);
        SeededRandomRobber robber(rng());
        Trace t = referee(g, cops, robber, {.round_cap = 500, .instrument_belief = true});
        REQUIRE(t.outcome == Outcome::captured);
        ++plays;
    }
}
