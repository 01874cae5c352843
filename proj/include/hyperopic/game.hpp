#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hyperopic/graph.hpp"

namespace hyperopic {

inline constexpr int kMaxCops = 6;

// Sorted multiset of cop-occupied vertices.
struct CopConfig {
    std::vector<Vertex> positions;  // ascending, repeats allowed

    CopConfig() = default;
    explicit CopConfig(std::vector<Vertex> p) : positions(std::move(p)) {
        std::sort(positions.begin(), positions.end());
    }

    int count() const { return static_cast<int>(positions.size()); }

    VertexSet occupied() const {
        VertexSet s;
        for (Vertex v : positions) s.add(v);
        return s;
    }

    // Packs positions most-significant-first, so numeric order on equal-size
    // configs is lexicographic order on the sorted vertex lists.
    std::uint64_t code() const {
        std::uint64_t c = 0;
        for (Vertex v : positions) c = (c << 6) | static_cast<std::uint64_t>(v);
        return c;
    }
    static CopConfig from_code(std::uint64_t code, int k) {
        std::vector<Vertex> p(static_cast<std::size_t>(k));
        for (int i = k - 1; i >= 0; --i) {
            p[static_cast<std::size_t>(i)] = static_cast<Vertex>(code & 63);
            code >>= 6;
        }
        return CopConfig(std::move(p));
    }

    bool operator==(const CopConfig& o) const { return positions == o.positions; }
    bool operator<(const CopConfig& o) const { return positions < o.positions; }

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < positions.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(positions[i]);
        }
        return s + "}";
    }
};

// What the cop player sees after a half-move: its own configuration and
// either the robber's vertex or nothing.
struct Observation {
    CopConfig cops;
    std::optional<Vertex> robber;  // nullopt = invisible

    bool visible() const { return robber.has_value(); }
};

// Robber positions consistent with the cops' observation history.
struct BeliefState {
    VertexSet candidates;
};

// The robber is invisible exactly when every cop stands on a neighbour of
// the robber's vertex.  A cop on the robber itself is capture, which must be
// resolved before asking for visibility.
inline bool visible(const Graph& g, const CopConfig& cops, Vertex r) {
    if (cops.occupied().contains(r))
        throw usage_error("visibility query with a cop on the robber");
    for (Vertex c : cops.positions)
        if (!g.adjacent(c, r)) return true;
    return false;
}

// Vertices invisible to this configuration: the common neighbourhood of all
// cop positions, minus the occupied vertices.
inline VertexSet invisible_region(const Graph& g, const CopConfig& cops) {
    VertexSet inter = g.vertices();
    for (Vertex c : cops.positions) inter &= g.neighbours(c);
    return inter - cops.occupied();
}

// All canonical configurations reachable in one round: each cop stays or
// moves to one neighbour, deduplicated as multisets, ascending code order.
inline std::vector<CopConfig> cop_actions(const Graph& g, const CopConfig& cops) {
    std::set<std::vector<Vertex>> seen;
    std::vector<Vertex> current(cops.positions.size());
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == cops.positions.size()) {
            std::vector<Vertex> sorted = current;
            std::sort(sorted.begin(), sorted.end());
            seen.insert(std::move(sorted));
            return;
        }
        for (Vertex v : g.closed_neighbours(cops.positions[i])) {
            current[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    std::vector<CopConfig> out;
    out.reserve(seen.size());
    for (const auto& p : seen) out.push_back(CopConfig(p));
    return out;
}

inline VertexSet robber_moves(const Graph& g, Vertex r) { return g.closed_neighbours(r); }

// One observation-consistent continuation of a belief.
struct BeliefBranch {
    std::optional<Vertex> robber;  // visible candidate, or nullopt for the invisible pool
    VertexSet candidates;          // singleton when visible
};

namespace detail {

// Splits surviving candidates into visible singletons plus one invisible
// pool.  The pieces partition the input.
inline std::vector<BeliefBranch> split_by_visibility(const Graph& g, const CopConfig& cops,
                                                     VertexSet candidates) {
    std::vector<BeliefBranch> out;
    VertexSet pool = candidates & invisible_region(g, cops);
    for (Vertex v : candidates - pool) out.push_back({v, VertexSet::single(v)});
    if (!pool.empty()) out.push_back({std::nullopt, pool});
    return out;
}

}  // namespace detail

struct BeliefUpdate {
    BeliefState after;                   // candidates still alive (not captured)
    std::vector<BeliefBranch> branches;  // empty means guaranteed capture
};

// Cops moved to new_cops: candidates under a cop are captured, the rest
// split by what the cops would now observe.
inline BeliefUpdate belief_after_cop_move(const Graph& g, const BeliefState& belief,
                                          const CopConfig& new_cops) {
    if (belief.candidates.empty()) throw usage_error("belief update from an empty belief");
    VertexSet alive = belief.candidates - new_cops.occupied();
    return {BeliefState{alive}, detail::split_by_visibility(g, new_cops, alive)};
}

// Robber moved: expand every candidate by one step (pass included), drop
// cop-occupied vertices, split by visibility.
inline BeliefUpdate belief_after_robber_move(const Graph& g, const BeliefState& belief,
                                             const CopConfig& cops) {
    if (belief.candidates.empty()) throw usage_error("belief update from an empty belief");
    VertexSet expanded = g.closed_neighbourhood_of(belief.candidates) - cops.occupied();
    return {BeliefState{expanded}, detail::split_by_visibility(g, cops, expanded)};
}

// Narrows a belief by a live observation.  The observation must be one of
// the legal branches of the matching update.
inline BeliefState belief_with_observation(const Graph& g, const BeliefState& pre,
                                           const CopConfig& cops, const Observation& obs) {
    if (obs.robber) {
        if (!pre.candidates.contains(*obs.robber))
            throw internal_error("observation names a vertex outside the belief");
        return BeliefState{VertexSet::single(*obs.robber)};
    }
    return BeliefState{pre.candidates & invisible_region(g, cops)};
}

// Multiset action legality: some assignment of old positions to new ones
// where every cop stays or crosses one edge.  Bitmask DP over matched new
// positions (k <= 6).
inline bool legal_cop_action(const Graph& g, const CopConfig& from, const CopConfig& to) {
    if (from.count() != to.count()) return false;
    int k = from.count();
    std::vector<char> reachable(static_cast<std::size_t>(k * k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            reachable[static_cast<std::size_t>(i * k + j)] =
                g.closed_neighbours(from.positions[static_cast<std::size_t>(i)])
                    .contains(to.positions[static_cast<std::size_t>(j)]);
    std::vector<char> dp(std::size_t{1} << k, 0);
    dp[0] = 1;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
        if (!dp[mask]) continue;
        int i = std::popcount(mask);
        if (i == k) return true;
        for (int j = 0; j < k; ++j)
            if (!((mask >> j) & 1) && reachable[static_cast<std::size_t>(i * k + j)])
                dp[mask | (std::uint32_t{1} << j)] = 1;
    }
    return dp[(std::size_t{1} << k) - 1];
}

}  // namespace hyperopic
