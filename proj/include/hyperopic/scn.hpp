#pragma once

#include <vector>

#include "hyperopic/graph.hpp"

namespace hyperopic {

// Minimum small-common-neighbourhood set: the smallest non-empty S with
// |intersection of N(v) over v in S| <= |S|.  S = V always qualifies, so the
// search terminates.
struct ScnResult {
    int upsilon = 0;
    VertexSet witness;  // lexicographically smallest among minimum sets
    VertexSet common;   // common neighbourhood of the witness
};

namespace detail {

// Depth-first extension in increasing vertex order visits candidate sets in
// lexicographic order, so the first hit is the canonical witness.  Once a
// partial set already satisfies the bound its lex-smallest completion is the
// smallest remaining candidate overall: intersections only shrink as the set
// grows while the threshold stays fixed at k.
inline bool scn_extend(const Graph& g, int k, Vertex from, VertexSet chosen, VertexSet inter,
                       VertexSet& out) {
    int have = chosen.size();
    if (inter.size() <= k) {
        for (Vertex v = from; have < k; ++v) {
            chosen.add(v);
            ++have;
        }
        out = chosen;
        return true;
    }
    if (have == k) return false;
    for (Vertex v = from; v <= g.order() - (k - have); ++v)
        if (scn_extend(g, k, v + 1, VertexSet(chosen).add(v), inter & g.neighbours(v), out))
            return true;
    return false;
}

}  // namespace detail

inline ScnResult upsilon(const Graph& g) {
    for (int k = 1; k <= g.order(); ++k) {
        VertexSet witness;
        if (detail::scn_extend(g, k, 0, VertexSet(), g.vertices(), witness)) {
            return {k, witness, common_neighbourhood(g, witness)};
        }
    }
    throw internal_error("upsilon: no small common neighbourhood set found");
}

// Literal transcription of the cardinality-by-cardinality scan over the power
// set, no pruning.  Test reference only; guarded to 20 vertices.
inline ScnResult upsilon_oracle(const Graph& g) {
    if (g.order() > 20) throw usage_error("upsilon_oracle is limited to 20 vertices");
    int n = g.order();
    for (int k = 1; k <= n; ++k) {
        std::vector<Vertex> idx(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
        for (;;) {
            VertexSet s;
            for (Vertex v : idx) s.add(v);
            VertexSet inter = common_neighbourhood(g, s);
            if (inter.size() <= k) return {k, s, inter};
            int i = k - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (int t = i + 1; t < k; ++t)
                idx[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(t - 1)] + 1;
        }
    }
    throw internal_error("upsilon_oracle: no small common neighbourhood set found");
}

// All minimum small-common-neighbourhood sets (used by the join audits that
// need to know whether every minimum set stays inside one side).
inline std::vector<VertexSet> all_minimum_scn_sets(const Graph& g) {
    int k = upsilon(g).upsilon;
    std::vector<VertexSet> out;
    std::vector<Vertex> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    int n = g.order();
    for (;;) {
        VertexSet s;
        for (Vertex v : idx) s.add(v);
        if (common_neighbourhood(g, s).size() <= k) out.push_back(s);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int t = i + 1; t < k; ++t)
            idx[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(t - 1)] + 1;
    }
    return out;
}

}  // namespace hyperopic
