#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperopic/errors.hpp"
#include "hyperopic/vertex_set.hpp"

namespace hyperopic {

inline constexpr int kMaxVertices = 64;

// Join results remember which vertices came from the left factor.
struct JoinParts {
    int left_count;  // vertices 0..left_count-1 are the left factor
};

enum class ProductKind { cartesian, strong };

// Product results remember the factor grid: vertex (i,j) sits at index
// i*right_count + j.
struct ProductGrid {
    ProductKind kind;
    int left_count;
    int right_count;
};

// Immutable simple undirected graph on at most 64 vertices.  Adjacency is
// stored as open neighbourhoods: v is never in adj(v).
class Graph {
  public:
    static Graph from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
        if (n < 1 || n > kMaxVertices)
            throw usage_error("vertex count " + std::to_string(n) + " out of range 1..64");
        Graph g;
        g.n_ = n;
        g.adj_.assign(static_cast<std::size_t>(n), 0);
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw usage_error("edge endpoint out of range: " + std::to_string(u) + " " +
                                  std::to_string(v));
            if (u == v) throw usage_error("self-loop at vertex " + std::to_string(u));
            g.adj_[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
            g.adj_[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
        }
        return g;
    }

    int order() const { return n_; }
    VertexSet vertices() const { return VertexSet::first_n(n_); }
    VertexSet neighbours(Vertex v) const { return VertexSet(adj_[static_cast<std::size_t>(v)]); }
    VertexSet closed_neighbours(Vertex v) const {
        return VertexSet(adj_[static_cast<std::size_t>(v)] | (std::uint64_t{1} << v));
    }
    bool adjacent(Vertex u, Vertex v) const {
        return (adj_[static_cast<std::size_t>(u)] >> v) & 1;
    }
    int degree(Vertex v) const { return neighbours(v).size(); }

    int edge_count() const {
        int twice = 0;
        for (Vertex v = 0; v < n_; ++v) twice += degree(v);
        return twice / 2;
    }

    std::vector<std::pair<Vertex, Vertex>> edges() const {
        std::vector<std::pair<Vertex, Vertex>> out;
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v : neighbours(u))
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    // Union of closed neighbourhoods over a set: where a robber on some
    // vertex of s can be after one move.
    VertexSet closed_neighbourhood_of(VertexSet s) const {
        std::uint64_t out = s.bits;
        for (Vertex v : s) out |= adj_[static_cast<std::size_t>(v)];
        return VertexSet(out);
    }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::optional<JoinParts>& join_parts() const { return join_parts_; }
    const std::optional<ProductGrid>& product_grid() const { return product_grid_; }

    Graph with_labels(std::vector<std::string> labels) const {
        Graph g = *this;
        g.labels_ = std::move(labels);
        return g;
    }
    Graph with_join_parts(JoinParts p) const {
        Graph g = *this;
        g.join_parts_ = p;
        return g;
    }
    Graph with_product_grid(ProductGrid p) const {
        Graph g = *this;
        g.product_grid_ = p;
        return g;
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

  private:
    int n_ = 0;
    std::vector<std::uint64_t> adj_;
    std::vector<std::string> labels_;
    std::optional<JoinParts> join_parts_;
    std::optional<ProductGrid> product_grid_;
};

// ---------------------------------------------------------------------------
// Distances and structural metrics
// ---------------------------------------------------------------------------

inline constexpr int kUnreachable = -1;

inline std::vector<int> bfs_distances(const Graph& g, Vertex src) {
    std::vector<int> dist(static_cast<std::size_t>(g.order()), kUnreachable);
    VertexSet frontier = VertexSet::single(src);
    VertexSet seen = frontier;
    int d = 0;
    while (!frontier.empty()) {
        for (Vertex v : frontier) dist[static_cast<std::size_t>(v)] = d;
        VertexSet next = g.closed_neighbourhood_of(frontier) - seen;
        seen |= next;
        frontier = next;
        ++d;
    }
    return dist;
}

inline std::vector<std::vector<int>> all_pairs_distances(const Graph& g) {
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<std::size_t>(g.order()));
    for (Vertex v = 0; v < g.order(); ++v) out.push_back(bfs_distances(g, v));
    return out;
}

inline bool is_connected(const Graph& g) {
    VertexSet seen = VertexSet::single(0);
    for (;;) {
        VertexSet grown = seen | g.closed_neighbourhood_of(seen);
        if (grown == seen) break;
        seen = grown;
    }
    return seen == g.vertices();
}

struct GraphMetrics {
    std::optional<int> diameter;  // nullopt when disconnected
    bool is_connected = false;
    bool is_triangle_free = false;
    VertexSet cut_vertices;
    VertexSet universal_vertices;
    int min_degree = 0;
};

namespace detail {

// Articulation points by lowpoint search.
struct CutVertexFinder {
    const Graph& g;
    std::vector<int> order, low;
    int counter = 0;
    VertexSet cuts;

    explicit CutVertexFinder(const Graph& graph)
        : g(graph),
          order(static_cast<std::size_t>(graph.order()), -1),
          low(static_cast<std::size_t>(graph.order()), 0) {}

    void dfs(Vertex v, Vertex parent) {
        order[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = counter++;
        int children = 0;
        for (Vertex w : g.neighbours(v)) {
            if (order[static_cast<std::size_t>(w)] < 0) {
                ++children;
                dfs(w, v);
                low[static_cast<std::size_t>(v)] =
                    std::min(low[static_cast<std::size_t>(v)], low[static_cast<std::size_t>(w)]);
                if (parent >= 0 &&
                    low[static_cast<std::size_t>(w)] >= order[static_cast<std::size_t>(v)])
                    cuts.add(v);
            } else if (w != parent) {
                low[static_cast<std::size_t>(v)] =
                    std::min(low[static_cast<std::size_t>(v)], order[static_cast<std::size_t>(w)]);
            }
        }
        if (parent < 0 && children > 1) cuts.add(v);
    }

    VertexSet run() {
        for (Vertex v = 0; v < g.order(); ++v)
            if (order[static_cast<std::size_t>(v)] < 0) dfs(v, -1);
        return cuts;
    }
};

}  // namespace detail

inline GraphMetrics metrics(const Graph& g) {
    GraphMetrics m;
    m.is_connected = is_connected(g);
    int diam = 0;
    for (Vertex v = 0; v < g.order(); ++v) {
        for (int d : bfs_distances(g, v)) {
            if (d == kUnreachable)
                diam = -1;
            else if (diam >= 0)
                diam = std::max(diam, d);
        }
        if (diam < 0) break;
    }
    if (diam >= 0) m.diameter = diam;

    m.is_triangle_free = true;
    for (Vertex u = 0; u < g.order() && m.is_triangle_free; ++u)
        for (Vertex v : g.neighbours(u)) {
            if (v <= u) continue;
            if (!(g.neighbours(u) & g.neighbours(v)).empty()) {
                m.is_triangle_free = false;
                break;
            }
        }

    m.cut_vertices = detail::CutVertexFinder(g).run();

    m.min_degree = g.order();
    for (Vertex v = 0; v < g.order(); ++v) {
        int d = g.degree(v);
        m.min_degree = std::min(m.min_degree, d);
        if (d == g.order() - 1) m.universal_vertices.add(v);
    }
    return m;
}

// Connected components, ordered by lowest member.
inline std::vector<VertexSet> components(const Graph& g) {
    std::vector<VertexSet> out;
    VertexSet left = g.vertices();
    while (!left.empty()) {
        VertexSet comp = VertexSet::single(left.lowest());
        for (;;) {
            VertexSet grown = comp | g.closed_neighbourhood_of(comp);
            if (grown == comp) break;
            comp = grown;
        }
        out.push_back(comp);
        left -= comp;
    }
    return out;
}

// Induced subgraph with kept vertices reindexed in ascending order.
struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> to_parent;  // to_parent[new index] = old index
};

inline InducedSubgraph induced(const Graph& g, VertexSet keep) {
    if (keep.empty()) throw usage_error("induced subgraph of an empty set");
    std::vector<Vertex> to_parent = keep.to_vector();
    std::vector<int> to_child(static_cast<std::size_t>(g.order()), -1);
    for (std::size_t i = 0; i < to_parent.size(); ++i)
        to_child[static_cast<std::size_t>(to_parent[i])] = static_cast<int>(i);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u : keep)
        for (Vertex v : g.neighbours(u) & keep)
            if (u < v)
                edges.emplace_back(to_child[static_cast<std::size_t>(u)],
                                   to_child[static_cast<std::size_t>(v)]);
    return {Graph::from_edges(static_cast<int>(to_parent.size()), edges), std::move(to_parent)};
}

// ---------------------------------------------------------------------------
// Binary operators
// ---------------------------------------------------------------------------

inline Graph disjoint_union(const Graph& g, const Graph& j) {
    int n = g.order() + j.order();
    if (n > kMaxVertices)
        throw usage_error("union has " + std::to_string(n) + " vertices, limit is 64");
    std::vector<std::pair<Vertex, Vertex>> edges = g.edges();
    for (auto [u, v] : j.edges()) edges.emplace_back(u + g.order(), v + g.order());
    return Graph::from_edges(n, edges);
}

inline Graph join(const Graph& g, const Graph& j) {
    int n = g.order() + j.order();
    if (n > kMaxVertices)
        throw usage_error("join has " + std::to_string(n) + " vertices, limit is 64");
    std::vector<std::pair<Vertex, Vertex>> edges = g.edges();
    for (auto [u, v] : j.edges()) edges.emplace_back(u + g.order(), v + g.order());
    for (Vertex u = 0; u < g.order(); ++u)
        for (Vertex v = 0; v < j.order(); ++v) edges.emplace_back(u, g.order() + v);
    return Graph::from_edges(n, edges).with_join_parts(JoinParts{g.order()});
}

namespace detail {

inline Graph product(const Graph& g, const Graph& j, ProductKind kind) {
    long long n = static_cast<long long>(g.order()) * j.order();
    if (n > kMaxVertices)
        throw usage_error("product has " + std::to_string(n) + " vertices, limit is 64");
    auto at = [&](Vertex i, Vertex k) { return i * j.order() + k; };
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i < g.order(); ++i)
        for (Vertex k = 0; k < j.order(); ++k) {
            for (Vertex l : j.neighbours(k))
                if (l > k) edges.emplace_back(at(i, k), at(i, l));
            for (Vertex h : g.neighbours(i))
                if (h > i) edges.emplace_back(at(i, k), at(h, k));
            if (kind == ProductKind::strong)
                for (Vertex h : g.neighbours(i))
                    for (Vertex l : j.neighbours(k))
                        if (at(h, l) > at(i, k)) edges.emplace_back(at(i, k), at(h, l));
        }
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (Vertex i = 0; i < g.order(); ++i)
        for (Vertex k = 0; k < j.order(); ++k)
            labels.push_back("(" + std::to_string(i) + "," + std::to_string(k) + ")");
    return Graph::from_edges(static_cast<int>(n), edges)
        .with_product_grid(ProductGrid{kind, g.order(), j.order()})
        .with_labels(std::move(labels));
}

}  // namespace detail

inline Graph cartesian(const Graph& g, const Graph& j) {
    return detail::product(g, j, ProductKind::cartesian);
}
inline Graph strong(const Graph& g, const Graph& j) {
    return detail::product(g, j, ProductKind::strong);
}

// ---------------------------------------------------------------------------
// Neighbourhood and path queries
// ---------------------------------------------------------------------------

// Intersection of the open neighbourhoods of all vertices in s.
inline VertexSet common_neighbourhood(const Graph& g, VertexSet s) {
    if (s.empty()) throw usage_error("common_neighbourhood of an empty set");
    VertexSet out = g.vertices();
    for (Vertex v : s) out &= g.neighbours(v);
    return out;
}

// True when the listed path preserves graph distances between all its
// vertices.  The list must be a path: consecutive entries adjacent, no
// repeats.
inline bool is_isometric_path(const Graph& g, const std::vector<Vertex>& p) {
    if (p.empty()) throw usage_error("empty path");
    VertexSet seen;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0 || p[i] >= g.order()) throw usage_error("path vertex out of range");
        if (seen.contains(p[i])) throw usage_error("path repeats a vertex");
        seen.add(p[i]);
        if (i > 0 && !g.adjacent(p[i - 1], p[i]))
            throw usage_error("path vertices " + std::to_string(p[i - 1]) + " and " +
                              std::to_string(p[i]) + " are not adjacent");
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::vector<int> dist = bfs_distances(g, p[i]);
        for (std::size_t k = i + 1; k < p.size(); ++k)
            if (dist[static_cast<std::size_t>(p[k])] != static_cast<int>(k - i)) return false;
    }
    return true;
}

}  // namespace hyperopic
