#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "hyperopic/graph.hpp"

namespace hyperopic {

enum class GraphFormat { graph6, edgelist };

// ---------------------------------------------------------------------------
// graph6: 6-bit groups offset by 63, upper triangle in column-major order
// (for j = 1..n-1, i = 0..j-1).  Short size form covers n <= 62 in one byte;
// 63 and 64 use the '~' + 3 byte form.
// ---------------------------------------------------------------------------

inline std::string emit_graph6(const Graph& g) {
    std::string out;
    int n = g.order();
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        out.push_back('~');
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    int acc = 0, nbits = 0;
    for (Vertex j = 1; j < n; ++j)
        for (Vertex i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                nbits = 0;
            }
        }
    if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
    return out;
}

inline Graph parse_graph6(const std::string& text) {
    std::size_t pos = 0;
    auto next = [&]() -> int {
        if (pos >= text.size()) throw usage_error("graph6: truncated input");
        int c = static_cast<unsigned char>(text[pos++]);
        if (c < 63 || c > 126) throw usage_error("graph6: byte out of range at " + std::to_string(pos - 1));
        return c - 63;
    };
    int n;
    if (!text.empty() && text[0] == '~') {
        ++pos;
        int a = next(), b = next(), c = next();
        n = (a << 12) | (b << 6) | c;
    } else {
        n = next();
    }
    if (n < 1 || n > kMaxVertices)
        throw usage_error("graph6: order " + std::to_string(n) + " out of range 1..64");
    std::vector<std::pair<Vertex, Vertex>> edges;
    int acc = 0, nbits = 0;
    for (Vertex j = 1; j < n; ++j)
        for (Vertex i = 0; i < j; ++i) {
            if (nbits == 0) {
                acc = next();
                nbits = 6;
            }
            if ((acc >> (nbits - 1)) & 1) edges.emplace_back(i, j);
            --nbits;
        }
    if (nbits > 0 && (acc & ((1 << nbits) - 1)) != 0)
        throw usage_error("graph6: nonzero padding bits");
    if (pos != text.size()) throw usage_error("graph6: trailing bytes");
    return Graph::from_edges(n, edges);
}

// ---------------------------------------------------------------------------
// Edge list: first line is the vertex count, then one "u v" pair per line,
// 0-indexed.  Duplicate edges are merged with a warning.
// ---------------------------------------------------------------------------

inline std::string emit_edgelist(const Graph& g) {
    std::ostringstream out;
    out << g.order() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
    return out.str();
}

inline Graph parse_edgelist(const std::string& text, std::vector<std::string>* warnings = nullptr) {
    std::istringstream in(text);
    int n;
    if (!(in >> n)) throw usage_error("edgelist: missing vertex count");
    if (n < 1 || n > kMaxVertices)
        throw usage_error("edgelist: order " + std::to_string(n) + " out of range 1..64");
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<std::uint64_t> seen(static_cast<std::size_t>(n), 0);
    long long u, v;
    while (in >> u >> v) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw usage_error("edgelist: edge " + std::to_string(u) + " " + std::to_string(v) +
                              " out of range for order " + std::to_string(n));
        if (u == v) throw usage_error("edgelist: self-loop at " + std::to_string(u));
        if ((seen[static_cast<std::size_t>(u)] >> v) & 1) {
            if (warnings)
                warnings->push_back("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
            continue;
        }
        seen[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
        seen[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (!in.eof()) throw usage_error("edgelist: malformed edge line");
    return Graph::from_edges(n, edges);
}

inline std::string emit(const Graph& g, GraphFormat f) {
    return f == GraphFormat::graph6 ? emit_graph6(g) : emit_edgelist(g);
}

inline Graph parse(const std::string& text, GraphFormat f, std::vector<std::string>* warnings = nullptr) {
    return f == GraphFormat::graph6 ? parse_graph6(text) : parse_edgelist(text, warnings);
}

// Reads one graph6 code per line; blank lines are skipped.
inline std::vector<Graph> read_graph6_stream(std::istream& in) {
    std::vector<Graph> out;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        out.push_back(parse_graph6(line));
    }
    return out;
}

}  // namespace hyperopic
