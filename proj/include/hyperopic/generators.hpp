#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hyperopic/graph.hpp"

namespace hyperopic {

inline Graph complete(int n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

inline Graph path(int n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Graph::from_edges(n, edges);
}

inline Graph cycle(int n) {
    if (n < 3) throw usage_error("cycle needs at least 3 vertices");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return Graph::from_edges(n, edges);
}

inline Graph complete_minus_edge(int n) {
    if (n < 2) throw usage_error("complete_minus_edge needs at least 2 vertices");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (!(u == 0 && v == 1)) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

// Complete graph on vertices 0..n-1 plus a pendant leaf (vertex n) attached
// to vertex 0.
inline Graph leafed_complete(int n) {
    if (n + 1 > kMaxVertices) throw usage_error("leafed_complete exceeds the 64-vertex limit");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    edges.emplace_back(0, n);
    return Graph::from_edges(n + 1, edges);
}

namespace detail {

// mt19937_64 output is fixed by the standard, so seeded corpora are
// byte-stable across platforms.  Distributions are not, hence the modulo.
inline std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

}  // namespace detail

inline Graph tree_random(int n, std::uint64_t seed) {
    if (n < 1 || n > kMaxVertices) throw usage_error("tree size out of range 1..64");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 1; v < n; ++v)
        edges.emplace_back(v, static_cast<Vertex>(detail::rand_below(rng, static_cast<std::uint64_t>(v))));
    return Graph::from_edges(n, edges);
}

// Erdos-Renyi sample, resampled until connected.  Deterministic per seed.
inline Graph er_connected(int n, double p, std::uint64_t seed) {
    if (n < 1 || n > kMaxVertices) throw usage_error("graph size out of range 1..64");
    if (!(p > 0.0 && p < 1.0)) throw usage_error("edge probability must be in (0,1)");
    std::mt19937_64 rng(seed);
    constexpr int kRetryCap = 1000;
    for (int attempt = 0; attempt < kRetryCap; ++attempt) {
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) {
                double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                if (x < p) edges.emplace_back(u, v);
            }
        Graph g = Graph::from_edges(n, edges);
        if (is_connected(g)) return g;
    }
    throw resource_error("er_connected: no connected sample within 1000 attempts", kRetryCap);
}

// ---------------------------------------------------------------------------
// Generator mini-syntax: family:arg[,arg], with join:/cartesian:/strong:
// combinators taking two nested specs, e.g. "strong:path:2,path:3".
// ---------------------------------------------------------------------------

namespace detail {

struct SpecParser {
    const std::string& text;
    std::uint64_t default_seed = 0;
    std::size_t pos = 0;

    std::string word() {
        std::size_t start = pos;
        while (pos < text.size() && text[pos] != ':' && text[pos] != ',') ++pos;
        return text.substr(start, pos - start);
    }
    void expect(char c) {
        if (pos >= text.size() || text[pos] != c)
            throw usage_error("bad generator spec '" + text + "' at position " +
                              std::to_string(pos) + ": expected '" + c + "'");
        ++pos;
    }
    long long number() {
        std::string w = word();
        try {
            std::size_t used = 0;
            long long v = std::stoll(w, &used);
            if (used != w.size()) throw std::invalid_argument(w);
            return v;
        } catch (const std::exception&) {
            throw usage_error("bad number '" + w + "' in generator spec '" + text + "'");
        }
    }
    double real() {
        std::string w = word();
        try {
            std::size_t used = 0;
            double v = std::stod(w, &used);
            if (used != w.size()) throw std::invalid_argument(w);
            return v;
        } catch (const std::exception&) {
            throw usage_error("bad number '" + w + "' in generator spec '" + text + "'");
        }
    }

    Graph parse() {
        std::string family = word();
        if (family == "join" || family == "cartesian" || family == "strong" ||
            family == "union") {
            expect(':');
            Graph left = parse();
            expect(',');
            Graph right = parse();
            if (family == "join") return hyperopic::join(left, right);
            if (family == "cartesian") return hyperopic::cartesian(left, right);
            if (family == "union") return hyperopic::disjoint_union(left, right);
            return hyperopic::strong(left, right);
        }
        expect(':');
        if (family == "complete") return complete(static_cast<int>(number()));
        if (family == "path") return path(static_cast<int>(number()));
        if (family == "cycle") return cycle(static_cast<int>(number()));
        if (family == "complete_minus_edge") return complete_minus_edge(static_cast<int>(number()));
        if (family == "leafed_complete") return leafed_complete(static_cast<int>(number()));
        if (family == "tree_random") {
            int n = static_cast<int>(number());
            return tree_random(n, trailing_seed());
        }
        if (family == "er_connected") {
            int n = static_cast<int>(number());
            expect(',');
            double p = real();
            return er_connected(n, p, trailing_seed());
        }
        throw usage_error("unknown graph family '" + family + "'");
    }

    // Seeded families accept an optional trailing seed argument; without it
    // the caller-supplied default applies.
    std::uint64_t trailing_seed() {
        if (pos < text.size() && text[pos] == ',') {
            std::size_t mark = pos;
            ++pos;
            std::string w = word();
            try {
                std::size_t used = 0;
                std::uint64_t v = std::stoull(w, &used);
                if (used == w.size()) return v;
            } catch (const std::exception&) {
            }
            pos = mark;  // the comma belongs to an enclosing combinator
        }
        return default_seed;
    }
};

}  // namespace detail

inline Graph generate(const std::string& spec, std::uint64_t default_seed = 0) {
    detail::SpecParser p{spec, default_seed};
    Graph g = p.parse();
    if (p.pos != spec.size()) throw usage_error("trailing input in generator spec '" + spec + "'");
    return g;
}

}  // namespace hyperopic
