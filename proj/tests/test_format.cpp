#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "hyperopic/format.hpp"
#include "hyperopic/generators.hpp"

using namespace hyperopic;

TEST_CASE("graph6 worked examples") {
    // 'B' encodes order 3 and 'w' = 111000 the full upper triangle.
    Graph bw = parse_graph6("Bw");
    REQUIRE(bw == complete(3));
    REQUIRE(emit_graph6(complete(3)) == "Bw");

    // 'A' encodes order 2 and '_' = 100000 a single edge.
    Graph a = parse_graph6("A_");
    REQUIRE(a.order() == 2);
    REQUIRE(a.adjacent(0, 1));
    REQUIRE(emit_graph6(a) == "A_");
}

TEST_CASE("graph6 error paths") {
    REQUIRE_THROWS_AS(parse_graph6(""), usage_error);
    REQUIRE_THROWS_AS(parse_graph6("B"), usage_error);       // truncated bits
    REQUIRE_THROWS_AS(parse_graph6("Bwz"), usage_error);     // trailing bytes
    REQUIRE_THROWS_AS(parse_graph6("A`"), usage_error);      // nonzero padding
    REQUIRE_THROWS_AS(parse_graph6(std::string(1, char(20))), usage_error);
}

TEST_CASE("graph6 long size form covers 63 and 64 vertices") {
    Graph p63 = path(63);
    std::string code = emit_graph6(p63);
    REQUIRE(code.substr(0, 1) == "~");
    REQUIRE(parse_graph6(code) == p63);

    Graph p64 = path(64);
    REQUIRE(parse_graph6(emit_graph6(p64)) == p64);
}

TEST_CASE("round trip on a 500-graph corpus") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 1 + static_cast<int>(rng() % 16);
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                if (rng() % 2) edges.emplace_back(u, v);
        Graph g = Graph::from_edges(n, edges);
        REQUIRE(parse_graph6(emit_graph6(g)) == g);
        REQUIRE(parse_edgelist(emit_edgelist(g)) == g);
    }
}

TEST_CASE("edgelist parsing") {
    Graph g = parse_edgelist("4\n0 1\n1 2\n2 3\n");
    REQUIRE(g == path(4));

    std::vector<std::string> warnings;
    Graph dup = parse_edgelist("3\n0 1\n1 0\n1 2\n", &warnings);
    REQUIRE(dup == path(3));
    REQUIRE(warnings.size() == 1);

    REQUIRE_THROWS_AS(parse_edgelist("3\n0 7\n"), usage_error);
    REQUIRE_THROWS_AS(parse_edgelist("3\n1 1\n"), usage_error);
    REQUIRE_THROWS_AS(parse_edgelist(""), usage_error);
}

TEST_CASE("corpus files parse and have the known counts") {
    std::ifstream in(std::string(HYPEROPIC_DATA_DIR) + "/connected_le6.g6");
    REQUIRE(in.good());
    std::vector<Graph> graphs = read_graph6_stream(in);
    REQUIRE(graphs.size() == 143);
    for (const Graph& g : graphs) {
        REQUIRE(is_connected(g));
        REQUIRE(g.order() <= 6);
    }
}
