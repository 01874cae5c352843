#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hyperopic/referee.hpp"
#include "hyperopic/scn.hpp"
#include "hyperopic/solver.hpp"

namespace hyperopic {

namespace detail {

// Shared observation bookkeeping for strategy memories: a sound belief over
// the play graph plus the latest observation.  Three memory words.
struct ObsWords {
    static constexpr std::size_t kWords = 3;

    VertexSet belief;
    std::uint64_t next_kind;  // 0: placement pending, 1: post-cop, 2: post-robber
    bool last_visible = false;
    Vertex last_vertex = 0;

    static ObsWords unpack(const Memory& mem, std::size_t at) {
        ObsWords s;
        s.belief = VertexSet(mem[at]);
        s.next_kind = mem[at + 1];
        s.last_visible = (mem[at + 2] >> 8) & 1;
        s.last_vertex = static_cast<Vertex>(mem[at + 2] & 63);
        return s;
    }
    void pack(Memory& mem, std::size_t at) const {
        mem[at] = belief.bits;
        mem[at + 1] = next_kind;
        mem[at + 2] = (static_cast<std::uint64_t>(last_visible) << 8) |
                      static_cast<std::uint64_t>(last_vertex);
    }

    static ObsWords absorbed(const Graph& g, const Memory& mem, std::size_t at,
                             const Observation& obs) {
        ObsWords s = unpack(mem, at);
        BeliefState b{s.belief};
        if (s.next_kind == 0) {
            b = belief_after_cop_move(g, BeliefState{g.vertices()}, obs.cops).after;
            s.next_kind = 1;
        } else if (s.next_kind == 1) {
            b = belief_after_cop_move(g, b, obs.cops).after;
            s.next_kind = 2;
        } else {
            b = belief_after_robber_move(g, b, obs.cops).after;
            s.next_kind = 1;
        }
        s.belief = belief_with_observation(g, b, obs.cops, obs).candidates;
        s.last_visible = obs.visible();
        s.last_vertex = obs.robber.value_or(0);
        return s;
    }
};

// Next hop on a shortest path, lowest index on ties; `from` when arrived.
inline Vertex toward_step(const Graph& g, Vertex from, Vertex target) {
    if (from == target) return from;
    std::vector<int> dist = bfs_distances(g, target);
    for (Vertex v : g.neighbours(from))
        if (dist[static_cast<std::size_t>(v)] == dist[static_cast<std::size_t>(from)] - 1) return v;
    throw internal_error("no route from " + std::to_string(from) + " to " + std::to_string(target));
}

// Per-slot realisation of a target multiset: slot i keeps or crosses one
// edge.  Lexicographically first feasible assignment in slot order.
inline std::optional<std::vector<Vertex>> assign_moves(const Graph& g,
                                                       const std::vector<Vertex>& from,
                                                       const CopConfig& to) {
    std::size_t k = from.size();
    std::vector<Vertex> pool = to.positions;
    std::vector<Vertex> out(k, -1);
    std::vector<char> used(pool.size(), 0);
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (i == k) return true;
        Vertex prev = -1;
        for (std::size_t t = 0; t < pool.size(); ++t) {
            if (used[t] || pool[t] == prev) continue;
            if (!g.closed_neighbours(from[i]).contains(pool[t])) {
                prev = pool[t];
                continue;
            }
            used[t] = 1;
            out[i] = pool[t];
            if (self(self, i + 1)) return true;
            used[t] = 0;
            prev = pool[t];
        }
        return false;
    };
    if (from.size() != pool.size()) return std::nullopt;
    if (!rec(rec, 0)) return std::nullopt;
    return out;
}

inline std::uint64_t pack_positions(const std::vector<Vertex>& pos) {
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < pos.size(); ++i)
        w |= static_cast<std::uint64_t>(pos[i] & 0xff) << (8 * i);
    return w;
}
inline std::vector<Vertex> unpack_positions(std::uint64_t w, std::size_t k) {
    std::vector<Vertex> pos(k);
    for (std::size_t i = 0; i < k; ++i) pos[i] = static_cast<Vertex>((w >> (8 * i)) & 0xff);
    return pos;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Join strategy from the small-common-neighbourhood witnesses of the two
// sides: hold the witnesses; a visible robber is taken by a cop from the
// other side, an invisible one is swept out of the two common
// neighbourhoods in a single simultaneous move.
// ---------------------------------------------------------------------------

class JoinScnStrategy : public CopStrategy {
  public:
    explicit JoinScnStrategy(const Graph& joined) : g_(joined) {
        if (!joined.join_parts()) throw usage_error("join strategy needs join metadata");
        int left = joined.join_parts()->left_count;
        VertexSet left_mask = VertexSet::first_n(left);
        InducedSubgraph gl = induced(joined, left_mask);
        InducedSubgraph gr = induced(joined, joined.vertices() - left_mask);
        for (Vertex v : upsilon(gl.graph).witness) left_witness_.push_back(gl.to_parent[static_cast<std::size_t>(v)]);
        for (Vertex v : upsilon(gr.graph).witness) right_witness_.push_back(gr.to_parent[static_cast<std::size_t>(v)]);
        VertexSet wl, wr;
        for (Vertex v : left_witness_) wl.add(v);
        for (Vertex v : right_witness_) wr.add(v);
        left_targets_ = (common_neighbourhood(joined, wl) & left_mask).to_vector();
        right_targets_ = (common_neighbourhood(joined, wr) - left_mask).to_vector();
        left_mask_ = left_mask;
    }

    std::string name() const override { return "join_scn"; }
    int cop_count() const override {
        return static_cast<int>(left_witness_.size() + right_witness_.size());
    }
    CopConfig initial_placement() const override {
        std::vector<Vertex> all = left_witness_;
        all.insert(all.end(), right_witness_.begin(), right_witness_.end());
        return CopConfig(all);
    }
    Memory initial_memory() const override {
        Memory mem(detail::ObsWords::kWords + 1, 0);
        mem[3] = detail::pack_positions(slots());
        return mem;
    }
    Memory observe(const Observation& obs, Memory mem) const override {
        detail::ObsWords::absorbed(g_, mem, 0, obs).pack(mem, 0);
        return mem;
    }
    std::pair<CopConfig, Memory> act(Memory mem) const override {
        auto s = detail::ObsWords::unpack(mem, 0);
        std::vector<Vertex> pos = detail::unpack_positions(mem[3], static_cast<std::size_t>(cop_count()));
        if (s.last_visible) {
            // Any cop on the other side is adjacent through the join.
            std::size_t left_slots = left_witness_.size();
            bool robber_left = left_mask_.contains(s.last_vertex);
            std::size_t slot = robber_left ? left_slots : 0;
            pos[slot] = s.last_vertex;
        } else {
            for (std::size_t i = 0; i < left_targets_.size(); ++i) pos[i] = left_targets_[i];
            for (std::size_t i = 0; i < right_targets_.size(); ++i)
                pos[left_witness_.size() + i] = right_targets_[i];
        }
        mem[3] = detail::pack_positions(pos);
        return {CopConfig(pos), std::move(mem)};
    }

  private:
    std::vector<Vertex> slots() const {
        std::vector<Vertex> all = left_witness_;
        all.insert(all.end(), right_witness_.begin(), right_witness_.end());
        return all;
    }
    const Graph& g_;
    VertexSet left_mask_;
    std::vector<Vertex> left_witness_, right_witness_;
    std::vector<Vertex> left_targets_, right_targets_;
};

// ---------------------------------------------------------------------------
// Anchored play: a fixed anchor set is held while the robber is visible and
// mobile cops run a perfect-information pursuit.  On invisibility the robber
// sits in the common neighbourhood of every cop, so when that pool is no
// larger than the anchor cohort the anchors take it in one move.
// ---------------------------------------------------------------------------

using MobilePolicy = std::function<CopConfig(const CopConfig& mobiles, Vertex robber)>;

class AnchoredClassicStrategy : public CopStrategy {
  public:
    AnchoredClassicStrategy(const Graph& g, std::vector<Vertex> anchors,
                            std::optional<std::vector<Vertex>> response,
                            std::vector<Vertex> mobile_start, MobilePolicy mobile_policy,
                            std::string name = "anchored_classic")
        : g_(g),
          anchors_(std::move(anchors)),
          response_(std::move(response)),
          mobile_start_(std::move(mobile_start)),
          mobile_policy_(std::move(mobile_policy)),
          name_(std::move(name)) {
        if (response_) {
            VertexSet common = common_neighbourhood(g_, [&] {
                VertexSet a;
                for (Vertex v : anchors_) a.add(v);
                return a;
            }());
            for (Vertex t : *response_)
                if (!common.contains(t))
                    throw usage_error("anchored response target outside the common neighbourhood");
        }
    }

    std::string name() const override { return name_; }
    int cop_count() const override {
        return static_cast<int>(anchors_.size() + mobile_start_.size());
    }
    CopConfig initial_placement() const override {
        std::vector<Vertex> all = anchors_;
        all.insert(all.end(), mobile_start_.begin(), mobile_start_.end());
        return CopConfig(all);
    }
    Memory initial_memory() const override {
        Memory mem(detail::ObsWords::kWords + 1, 0);
        std::vector<Vertex> slots = anchors_;
        slots.insert(slots.end(), mobile_start_.begin(), mobile_start_.end());
        mem[3] = detail::pack_positions(slots);
        return mem;
    }
    Memory observe(const Observation& obs, Memory mem) const override {
        detail::ObsWords::absorbed(g_, mem, 0, obs).pack(mem, 0);
        return mem;
    }
    std::pair<CopConfig, Memory> act(Memory mem) const override {
        auto s = detail::ObsWords::unpack(mem, 0);
        std::vector<Vertex> pos =
            detail::unpack_positions(mem[3], static_cast<std::size_t>(cop_count()));
        std::size_t na = anchors_.size();
        if (!s.last_visible) {
            std::vector<Vertex> pool = s.belief.to_vector();
            if (response_ && s.belief.subset_of([&] {
                    VertexSet t;
                    for (Vertex v : *response_) t.add(v);
                    return t;
                }())) {
                for (std::size_t i = 0; i < response_->size() && i < na; ++i)
                    pos[i] = (*response_)[i];
            } else if (pool.size() <= na) {
                for (std::size_t i = 0; i < pool.size(); ++i) pos[i] = pool[i];
            } else {
                throw usage_error("anchored strategy: invisible pool of " +
                                  std::to_string(pool.size()) + " exceeds " +
                                  std::to_string(na) + " anchors and no response covers it");
            }
        } else {
            std::vector<Vertex> mobiles(pos.begin() + static_cast<long>(na), pos.end());
            if (!mobiles.empty()) {
                CopConfig target = mobile_policy_(CopConfig(mobiles), s.last_vertex);
                auto assigned = detail::assign_moves(g_, mobiles, target);
                if (!assigned)
                    throw internal_error("anchored strategy: mobile policy action unreachable");
                for (std::size_t i = 0; i < mobiles.size(); ++i) pos[na + i] = (*assigned)[i];
            } else if (s.belief.size() == 1) {
                // No mobile cohort (universal-vertex mode): the first anchor
                // adjacent to the robber takes it.
                for (std::size_t i = 0; i < na; ++i)
                    if (g_.adjacent(pos[i], s.last_vertex)) {
                        pos[i] = s.last_vertex;
                        break;
                    }
            }
        }
        mem[3] = detail::pack_positions(pos);
        return {CopConfig(pos), std::move(mem)};
    }

  private:
    const Graph& g_;
    std::vector<Vertex> anchors_;
    std::optional<std::vector<Vertex>> response_;
    std::vector<Vertex> mobile_start_;
    MobilePolicy mobile_policy_;
    std::string name_;
};

// Anchors on a minimum small-common-neighbourhood witness plus a classic
// cohort: the construction behind the c_H <= c + upsilon bound.
inline std::unique_ptr<AnchoredClassicStrategy> make_scn_anchored(
    const Graph& g, std::shared_ptr<SolveTable> classic_table) {
    ScnResult scn = upsilon(g);
    std::vector<Vertex> anchors = scn.witness.to_vector();
    std::vector<Vertex> response = scn.common.to_vector();
    std::vector<Vertex> mobile_start = classic_table->initial().positions;
    auto policy = [table = std::move(classic_table)](const CopConfig& mobiles, Vertex r) {
        auto act = table->action(mobiles, VertexSet::single(r));
        if (!act) throw internal_error("classic table has no action");
        return *act;
    };
    return std::make_unique<AnchoredClassicStrategy>(g, std::move(anchors), std::move(response),
                                                     std::move(mobile_start), std::move(policy),
                                                     "anchored_scn");
}

// Universal vertex u plus a low-degree vertex v, no mobile cohort: the
// two-cop bound for graphs with a universal vertex and some deg <= 3.
inline std::unique_ptr<AnchoredClassicStrategy> make_universal_anchored(const Graph& g) {
    GraphMetrics m = metrics(g);
    if (m.universal_vertices.empty()) throw usage_error("no universal vertex");
    Vertex u = m.universal_vertices.lowest();
    std::optional<Vertex> v;
    for (Vertex x = 0; x < g.order(); ++x)
        if (x != u && g.degree(x) <= 3) {
            v = x;
            break;
        }
    if (!v) throw usage_error("no vertex of degree at most 3");
    std::vector<Vertex> anchors{std::min(u, *v), std::max(u, *v)};
    VertexSet a;
    a.add(u);
    a.add(*v);
    std::vector<Vertex> response = common_neighbourhood(g, a).to_vector();
    return std::make_unique<AnchoredClassicStrategy>(g, std::move(anchors), std::move(response),
                                                     std::vector<Vertex>{}, MobilePolicy{},
                                                     "anchored_universal");
}

// One sentry anchor plus a classic cohort on a triangle-free graph, where
// the robber stays visible while cops spread over two adjacent vertices.
inline std::unique_ptr<AnchoredClassicStrategy> make_triangle_free_anchored(
    const Graph& g, std::shared_ptr<SolveTable> classic_table) {
    std::vector<Vertex> anchors{0};
    std::vector<Vertex> mobile_start = classic_table->initial().positions;
    auto policy = [table = std::move(classic_table)](const CopConfig& mobiles, Vertex r) {
        auto act = table->action(mobiles, VertexSet::single(r));
        if (!act) throw internal_error("classic table has no action");
        return *act;
    };
    return std::make_unique<AnchoredClassicStrategy>(g, std::move(anchors), std::nullopt,
                                                     std::move(mobile_start), std::move(policy),
                                                     "anchored_triangle_free");
}

// ---------------------------------------------------------------------------
// Cut-vertex pursuit with one extra cop: one cop sits on each side of the
// cut, the rest start on the cut vertex.  Once the robber shows itself on
// one side, the opposite cop anchors while the others run a classic
// pursuit confined to the robber's side plus the cut vertex.  Invisibility
// means the robber sits in the common neighbourhood of everything, which
// here is at most the cut vertex itself.
// ---------------------------------------------------------------------------

class CutVertexAnchoredStrategy : public CopStrategy {
  public:
    explicit CutVertexAnchoredStrategy(const Graph& g, std::uint64_t budget = 50'000'000)
        : g_(g) {
        GraphMetrics m = metrics(g_);
        if (m.cut_vertices.empty()) throw usage_error("no cut vertex");
        cut_ = m.cut_vertices.lowest();
        InducedSubgraph rest = induced(g_, g_.vertices() - VertexSet::single(cut_));
        std::vector<VertexSet> comps = components(rest.graph);
        VertexSet first_comp;
        for (Vertex v : comps[0]) first_comp.add(rest.to_parent[static_cast<std::size_t>(v)]);
        left_set_ = first_comp | VertexSet::single(cut_);
        right_set_ = (g_.vertices() - first_comp);
        left_post_ = (g_.neighbours(cut_) & first_comp).lowest();
        right_post_ = (g_.neighbours(cut_) - first_comp).lowest();
        int c = cop_number(g_);
        mobile_count_ = c;
        left_game_ = induced(g_, left_set_);
        right_game_ = induced(g_, right_set_);
        left_table_ = std::make_shared<SolveTable>(left_game_.graph, c, false, budget);
        right_table_ = std::make_shared<SolveTable>(right_game_.graph, c, false, budget);
    }

    std::string name() const override { return "anchored_cut_vertex"; }
    int cop_count() const override { return mobile_count_ + 1; }
    // slot 0 sits in the first side, slot 1 in the other, the rest on the cut
    CopConfig initial_placement() const override { return CopConfig(initial_slots()); }
    Memory initial_memory() const override {
        Memory mem(detail::ObsWords::kWords + 2, 0);
        mem[3] = detail::pack_positions(initial_slots());
        mem[4] = 0;  // side: 0 unknown, 1 left, 2 right
        return mem;
    }
    Memory observe(const Observation& obs, Memory mem) const override {
        detail::ObsWords::absorbed(g_, mem, 0, obs).pack(mem, 0);
        return mem;
    }
    std::pair<CopConfig, Memory> act(Memory mem) const override {
        auto s = detail::ObsWords::unpack(mem, 0);
        std::vector<Vertex> pos =
            detail::unpack_positions(mem[3], static_cast<std::size_t>(cop_count()));
        if (!s.last_visible) {
            std::vector<Vertex> pool = s.belief.to_vector();
            if (pool.size() > 1)
                throw usage_error("cut-vertex strategy: invisible pool beyond the cut vertex");
            if (!pool.empty()) pos[0] = pool[0];  // every cop neighbours the pool
        } else {
            Vertex r = s.last_vertex;
            bool captured = false;
            for (std::size_t c = 0; c < pos.size(); ++c)
                if (g_.adjacent(pos[c], r)) {
                    pos[c] = r;
                    captured = true;
                    break;
                }
            if (!captured) {
                if (mem[4] == 0) mem[4] = left_set_.contains(r) && r != cut_ ? 1 : 2;
                bool left = mem[4] == 1;
                const InducedSubgraph& side = left ? left_game_ : right_game_;
                auto& table = left ? left_table_ : right_table_;
                std::vector<int> to_child(static_cast<std::size_t>(g_.order()), -1);
                for (std::size_t i = 0; i < side.to_parent.size(); ++i)
                    to_child[static_cast<std::size_t>(side.to_parent[i])] = static_cast<int>(i);
                std::vector<std::size_t> slots;
                std::vector<Vertex> child_pos;
                for (std::size_t c = 0; c < pos.size(); ++c) {
                    if (c == (left ? 1u : 0u)) continue;  // opposite post anchors
                    int child = to_child[static_cast<std::size_t>(pos[c])];
                    if (child < 0) continue;  // outside the active side: hold
                    slots.push_back(c);
                    child_pos.push_back(child);
                }
                int r_child = to_child[static_cast<std::size_t>(r)];
                if (r_child >= 0 && !child_pos.empty()) {
                    auto action = table->action(CopConfig(child_pos),
                                                VertexSet::single(r_child));
                    if (action) {
                        auto assigned = detail::assign_moves(side.graph, child_pos, *action);
                        if (assigned)
                            for (std::size_t i = 0; i < slots.size(); ++i)
                                pos[slots[i]] =
                                    side.to_parent[static_cast<std::size_t>((*assigned)[i])];
                    }
                }
            }
        }
        mem[3] = detail::pack_positions(pos);
        return {CopConfig(pos), std::move(mem)};
    }

  private:
    std::vector<Vertex> initial_slots() const {
        std::vector<Vertex> slots{left_post_, right_post_};
        for (int i = 1; i < mobile_count_; ++i) slots.push_back(cut_);
        return slots;
    }

    const Graph& g_;
    Vertex cut_ = 0, left_post_ = 0, right_post_ = 0;
    int mobile_count_ = 0;
    VertexSet left_set_, right_set_;
    InducedSubgraph left_game_, right_game_;
    std::shared_ptr<SolveTable> left_table_, right_table_;
};

// ---------------------------------------------------------------------------
// Join of a connected graph with a disconnected one: two sentries pin the
// disconnected side (a robber there is always visible and taken at once),
// while a hyperopic cohort clears the connected side.  Observations on the
// connected side coincide exactly with the factor game, so the factor
// policy is replayed move for move.
// ---------------------------------------------------------------------------

class JoinConnectedDisconnectedStrategy : public CopStrategy {
  public:
    explicit JoinConnectedDisconnectedStrategy(const Graph& joined) : g_(joined) {
        if (!joined.join_parts()) throw usage_error("join strategy needs join metadata");
        left_count_ = joined.join_parts()->left_count;
        VertexSet left_mask = VertexSet::first_n(left_count_);
        InducedSubgraph gl = induced(joined, left_mask);
        InducedSubgraph gr = induced(joined, joined.vertices() - left_mask);
        if (!is_connected(gl.graph)) throw usage_error("left join factor must be connected");
        std::vector<VertexSet> comps = components(gr.graph);
        if (comps.size() < 2) throw usage_error("right join factor must be disconnected");
        left_ = gl.graph;
        sentries_ = {gr.to_parent[static_cast<std::size_t>(comps[0].lowest())],
                     gr.to_parent[static_cast<std::size_t>(comps[1].lowest())]};
        int k = hyperopic_cop_number(left_);
        SolveResult solved = solve_hyperopic(left_, k);
        if (!solved.cops_win) throw internal_error("factor solve lost at its own cop number");
        policy_ = std::move(solved.policy);
    }

    std::string name() const override { return "join_connected_disconnected"; }
    int cop_count() const override { return policy_.k + 2; }
    CopConfig initial_placement() const override {
        std::vector<Vertex> all = sentries_;
        for (Vertex v : policy_.initial.positions) all.push_back(v);
        return CopConfig(all);
    }
    // mem: [model cops code, model belief, model phase, j-flag/robber, slots]
    Memory initial_memory() const override {
        Memory mem{policy_.initial.code(), 0, 0, 0, 0};
        std::vector<Vertex> slots = sentries_;
        for (Vertex v : policy_.initial.positions) slots.push_back(v);
        mem[4] = detail::pack_positions(slots);
        return mem;
    }

    Memory observe(const Observation& obs, Memory mem) const override {
        if (obs.robber && *obs.robber >= left_count_) {
            mem[3] = 0x100 | static_cast<std::uint64_t>(*obs.robber);
            return mem;
        }
        mem[3] = 0;
        CopConfig model_cops = CopConfig::from_code(mem[0], policy_.k);
        BeliefState belief{VertexSet(mem[1])};
        if (mem[2] == 0) {
            belief = belief_after_cop_move(left_, BeliefState{left_.vertices()}, model_cops).after;
            mem[2] = 1;
        } else if (mem[2] == 1) {
            belief = belief_after_cop_move(left_, belief, model_cops).after;
            mem[2] = 2;
        } else {
            belief = belief_after_robber_move(left_, belief, model_cops).after;
            mem[2] = 1;
        }
        Observation model_obs{model_cops, obs.robber};
        mem[1] = belief_with_observation(left_, belief, model_cops, model_obs).candidates.bits;
        return mem;
    }

    std::pair<CopConfig, Memory> act(Memory mem) const override {
        std::vector<Vertex> pos =
            detail::unpack_positions(mem[4], static_cast<std::size_t>(cop_count()));
        if (mem[3] & 0x100) {
            pos[2] = static_cast<Vertex>(mem[3] & 63);  // cross-side capture by a mobile cop
        } else {
            CopConfig model_cops = CopConfig::from_code(mem[0], policy_.k);
            auto action = policy_.lookup(model_cops, VertexSet(mem[1]));
            if (!action)
                throw internal_error("factor policy has no action for cops=" +
                                     model_cops.to_string() + " belief=" +
                                     VertexSet(mem[1]).to_string());
            std::vector<Vertex> mobiles(pos.begin() + 2, pos.end());
            auto assigned = detail::assign_moves(left_, mobiles, *action);
            if (!assigned) throw internal_error("factor policy action unreachable");
            for (std::size_t i = 0; i < assigned->size(); ++i) pos[2 + i] = (*assigned)[i];
            mem[0] = action->code();
        }
        mem[4] = detail::pack_positions(pos);
        return {CopConfig(pos), std::move(mem)};
    }

  private:
    const Graph& g_;
    int left_count_;
    Graph left_;
    std::vector<Vertex> sentries_;
    Policy policy_;
};

// ---------------------------------------------------------------------------
// Two-cop guarding of an isometric path: the far cop shadows the robber's
// distance class along the path and any entry onto the path is met by an
// adjacent cop.
// ---------------------------------------------------------------------------

class IsometricGuardStrategy : public CopStrategy {
  public:
    IsometricGuardStrategy(const Graph& g, std::vector<Vertex> path) : g_(g), path_(std::move(path)) {
        if (!is_isometric_path(g_, path_)) throw usage_error("guard path is not isometric");
        for (Vertex v : path_) path_set_.add(v);
        dist0_ = bfs_distances(g_, path_[0]);
    }

    std::string name() const override { return "isometric_guard"; }
    int cop_count() const override { return 2; }
    CopConfig initial_placement() const override {
        int kk = edges();
        return CopConfig({path_[0], kk > 2 ? path_[3] : path_[1]});
    }
    // mem: [obs words.., c1 | c2<<8 | image index<<16]
    Memory initial_memory() const override {
        Memory mem(detail::ObsWords::kWords + 1, 0);
        int kk = edges();
        int m = kk > 2 ? 3 : 1;
        mem[3] = pack_state(path_[0], path_[static_cast<std::size_t>(m)], m);
        return mem;
    }
    Memory observe(const Observation& obs, Memory mem) const override {
        detail::ObsWords::absorbed(g_, mem, 0, obs).pack(mem, 0);
        return mem;
    }
    std::pair<CopConfig, Memory> act(Memory mem) const override {
        auto s = detail::ObsWords::unpack(mem, 0);
        auto [c1, c2, m] = unpack_state(mem[3]);
        int kk = edges();
        if (s.last_visible) {
            Vertex r = s.last_vertex;
            if (path_set_.contains(r) && (g_.adjacent(c2, r) || g_.adjacent(c1, r))) {
                if (g_.adjacent(c2, r))
                    c2 = r;
                else
                    c1 = r;
            } else if (kk > 2) {
                int j = std::min(dist0_[static_cast<std::size_t>(r)], kk);
                int target = j >= 3 ? j : 3;
                if (m < target)
                    ++m;
                else if (m > target)
                    --m;
                c2 = path_[static_cast<std::size_t>(m)];
            }
        } else if (kk > 2) {
            // The two posts are three or more apart along an isometric path,
            // so no vertex neighbours both.
            throw internal_error("isometric guard: invisible robber with far posts");
        }
        mem[3] = pack_state(c1, c2, m);
        return {CopConfig({c1, c2}), std::move(mem)};
    }

    const std::vector<Vertex>& path() const { return path_; }

  private:
    int edges() const { return static_cast<int>(path_.size()) - 1; }
    static std::uint64_t pack_state(Vertex c1, Vertex c2, int m) {
        return static_cast<std::uint64_t>(c1) | (static_cast<std::uint64_t>(c2) << 8) |
               (static_cast<std::uint64_t>(m) << 16);
    }
    static std::tuple<Vertex, Vertex, int> unpack_state(std::uint64_t w) {
        return {static_cast<Vertex>(w & 0xff), static_cast<Vertex>((w >> 8) & 0xff),
                static_cast<int>((w >> 16) & 0xff)};
    }

    const Graph& g_;
    std::vector<Vertex> path_;
    VertexSet path_set_;
    std::vector<int> dist0_;
};

// ---------------------------------------------------------------------------
// Sweep on (complete graph x path): the two cops hold adjacent layers in
// distinct columns and slide that posture down from the far end of the
// path.  The posture dominates both of its layers, so a robber stepping
// into or behind it is taken at once, and an invisible robber sits on one
// of the two shared neighbours of the posts.  The descent ends with the
// posts on the first two layers, where the whole graph is covered.
// ---------------------------------------------------------------------------

class KnPmSweepStrategy : public CopStrategy {
  public:
    KnPmSweepStrategy(int n, int m)
        : n_(n), m_(m), g_(cartesian(complete(n), path(m))) {
        if (m < 2) throw usage_error("sweep strategy needs a path with at least 2 vertices");
    }

    const Graph& product() const { return g_; }
    std::string name() const override { return "kn_pm_sweep"; }
    int cop_count() const override { return 2; }
    CopConfig initial_placement() const override {
        return CopConfig({at(0, m_ - 2), at(n_ > 1 ? 1 : 0, m_ - 1)});
    }
    Memory initial_memory() const override {
        Memory mem(detail::ObsWords::kWords + 1, 0);
        mem[3] = detail::pack_positions({at(0, m_ - 2), at(n_ > 1 ? 1 : 0, m_ - 1)});
        return mem;
    }
    Memory observe(const Observation& obs, Memory mem) const override {
        detail::ObsWords::absorbed(g_, mem, 0, obs).pack(mem, 0);
        return mem;
    }
    std::pair<CopConfig, Memory> act(Memory mem) const override {
        auto s = detail::ObsWords::unpack(mem, 0);
        std::vector<Vertex> pos = detail::unpack_positions(mem[3], 2);
        if (!s.last_visible) {
            std::vector<Vertex> pool = s.belief.to_vector();
            if (pool.size() > 2)
                throw internal_error("sweep strategy: invisible pool larger than two");
            for (std::size_t i = 0; i < pool.size(); ++i) pos[i] = pool[i];
        } else if (g_.adjacent(pos[0], s.last_vertex)) {
            pos[0] = s.last_vertex;
        } else if (g_.adjacent(pos[1], s.last_vertex)) {
            pos[1] = s.last_vertex;
        } else if (layer(pos[0]) > 0) {
            pos[0] = pos[0] - 1;  // slide the posture one layer down
            pos[1] = pos[1] - 1;
        }
        mem[3] = detail::pack_positions(pos);
        return {CopConfig(pos), std::move(mem)};
    }

  private:
    Vertex at(int i, int j) const { return i * m_ + j; }
    int layer(Vertex v) const { return v % m_; }

    int n_, m_;
    Graph g_;
};

// ---------------------------------------------------------------------------
// Two-phase pursuit on a Cartesian product with c_H(G) + c_H(J) cops.
// Phase 1 sweeps the G-layers one at a time, leaving behind one tracker per
// layer that shadows the robber's first coordinate.  Phase 2 lets the
// trackers play the J-factor game inside the robber's column while the
// leftover cohort walks into the robber's layer to pin never-ending first
// coordinate changes.  Whenever the robber goes invisible with a pool no
// larger than the cop count, the pool is swept outright.
// ---------------------------------------------------------------------------

class CartesianTwoPhaseStrategy : public CopStrategy {
  public:
    CartesianTwoPhaseStrategy(const Graph& g, const Graph& j, std::uint64_t budget = 50'000'000)
        : left_(g), right_(j), product_(cartesian(g, j)) {
        if (g.order() < 2 || j.order() < 2)
            throw usage_error("two-phase strategy needs factors with at least 2 vertices");
        kg_ = hyperopic_cop_number(left_);
        kj_ = hyperopic_cop_number(right_);
        table_g_ = std::make_shared<SolveTable>(left_, kg_, true, budget);
        table_j_ = std::make_shared<SolveTable>(right_, kj_, true, budget);
    }

    const Graph& product() const { return product_; }
    std::string name() const override { return "cartesian_two_phase"; }
    int cop_count() const override { return kg_ + kj_; }

    CopConfig initial_placement() const override {
        return CopConfig(initial_slots());
    }
    // mem: [obs words.., slots, tracker mask | cohort mask<<8, phase | stage<<8 | walked<<16]
    Memory initial_memory() const override {
        Memory mem(detail::ObsWords::kWords + 3, 0);
        mem[3] = detail::pack_positions(initial_slots());
        mem[4] = (static_cast<std::uint64_t>((1u << kg_) - 1)) << 8;  // cohort = squad slots
        mem[5] = 0;
        return mem;
    }
    Memory observe(const Observation& obs, Memory mem) const override {
        auto before = detail::ObsWords::unpack(mem, 0);
        bool post_cop_move = before.next_kind != 2;  // placement or our own move
        detail::ObsWords::absorbed(product_, mem, 0, obs).pack(mem, 0);
        if (!post_cop_move) return mem;

        // Promotion happens on the observation right after the cops' own
        // move: if a cohort cop now stands on the robber's known first
        // coordinate inside the stage layer, it becomes that layer's
        // tracker and the next stage begins.
        auto s = detail::ObsWords::unpack(mem, 0);
        std::uint32_t tracker_mask = mem[4] & 0xff;
        std::uint32_t cohort_mask = (mem[4] >> 8) & 0xff;
        int phase = static_cast<int>(mem[5] & 0xff);
        int stage = static_cast<int>((mem[5] >> 8) & 0xff);
        bool walked = ((mem[5] >> 16) & 1) != 0;
        if (phase != 0) return mem;
        VertexSet proj = project_g(s.belief);
        if (proj.size() != 1) return mem;
        Vertex u = proj.lowest();
        std::vector<Vertex> pos =
            detail::unpack_positions(mem[3], static_cast<std::size_t>(cop_count()));
        int promote = -1;
        for (int c = 0; c < cop_count(); ++c)
            if (((cohort_mask >> c) & 1) && coords(pos[static_cast<std::size_t>(c)]).first == u &&
                coords(pos[static_cast<std::size_t>(c)]).second == stage) {
                promote = c;
                break;
            }
        if (promote < 0) return mem;
        tracker_mask |= 1u << promote;
        cohort_mask &= ~(1u << promote);
        ++stage;
        walked = false;
        if (stage >= kj_) {
            phase = 1;
            cohort_mask = 0;
        } else {
            cohort_mask |= 1u << (kg_ + stage - 1);  // marker joins the new cohort
        }
        mem[4] = tracker_mask | (static_cast<std::uint64_t>(cohort_mask) << 8);
        mem[5] = static_cast<std::uint64_t>(phase) | (static_cast<std::uint64_t>(stage) << 8) |
                 (static_cast<std::uint64_t>(walked ? 1 : 0) << 16);
        return mem;
    }

    std::pair<CopConfig, Memory> act(Memory mem) const override {
        auto s = detail::ObsWords::unpack(mem, 0);
        int total = cop_count();
        std::vector<Vertex> pos = detail::unpack_positions(mem[3], static_cast<std::size_t>(total));
        std::uint32_t tracker_mask = mem[4] & 0xff;
        std::uint32_t cohort_mask = (mem[4] >> 8) & 0xff;
        int phase = static_cast<int>(mem[5] & 0xff);
        int stage = static_cast<int>((mem[5] >> 8) & 0xff);
        bool walked = ((mem[5] >> 16) & 1) != 0;

        auto pack = [&](std::vector<Vertex> p) {
            mem[3] = detail::pack_positions(p);
            mem[4] = tracker_mask | (static_cast<std::uint64_t>(cohort_mask) << 8);
            mem[5] = static_cast<std::uint64_t>(phase) | (static_cast<std::uint64_t>(stage) << 8) |
                     (static_cast<std::uint64_t>(walked ? 1 : 0) << 16);
            return std::make_pair(CopConfig(std::move(p)), std::move(mem));
        };

        // Invisible with a coverable pool: every cop neighbours every
        // candidate, take the whole pool now.
        if (!s.last_visible && s.belief.size() <= total && !s.belief.empty()) {
            std::vector<Vertex> pool = s.belief.to_vector();
            for (std::size_t i = 0; i < pool.size(); ++i) pos[i] = pool[i];
            return pack(std::move(pos));
        }
        // Visible and adjacent: take the robber before it moves again.
        if (s.last_visible)
            for (int c = 0; c < total; ++c)
                if (product_.adjacent(pos[static_cast<std::size_t>(c)], s.last_vertex)) {
                    pos[static_cast<std::size_t>(c)] = s.last_vertex;
                    return pack(std::move(pos));
                }

        VertexSet proj_g = project_g(s.belief);
        VertexSet proj_j = project_j(s.belief);

        // Trackers mirror the robber's first coordinate when it is known;
        // a tracker that did not need to mirror is free to play the
        // J-factor game below.
        std::uint32_t mirrored = 0;
        if (proj_g.size() == 1) {
            Vertex u = proj_g.lowest();
            for (int c = 0; c < total; ++c) {
                if (!((tracker_mask >> c) & 1)) continue;
                auto [cu, cv] = coords(pos[static_cast<std::size_t>(c)]);
                if (cu != u && left_.closed_neighbours(cu).contains(u)) {
                    pos[static_cast<std::size_t>(c)] = vertex_at(u, cv);
                    mirrored |= 1u << c;
                }
            }
        }

        if (phase == 0) {
            if (!walked) {
                // Walk the cohort to the factor solve's initial positions
                // inside the stage layer.
                std::vector<int> slots;
                for (int c = 0; c < total; ++c)
                    if ((cohort_mask >> c) & 1) slots.push_back(c);
                std::vector<Vertex> targets = table_g_->initial().positions;
                bool all_there = true;
                for (std::size_t i = 0; i < slots.size(); ++i) {
                    auto [cu, cv] = coords(pos[static_cast<std::size_t>(slots[i])]);
                    Vertex tu = targets[i];
                    if (cv != stage) {
                        pos[static_cast<std::size_t>(slots[i])] =
                            vertex_at(cu, detail::toward_step(right_, cv, stage));
                        all_there = false;
                    } else if (cu != tu) {
                        pos[static_cast<std::size_t>(slots[i])] =
                            vertex_at(detail::toward_step(left_, cu, tu), cv);
                        all_there = false;
                    }
                }
                if (!all_there) return pack(std::move(pos));
                walked = true;
            }
            // Play the factor game against the projected belief.
            std::vector<int> slots;
            std::vector<Vertex> gpos;
            VertexSet occ_g;
            for (int c = 0; c < total; ++c)
                if ((cohort_mask >> c) & 1) {
                    slots.push_back(c);
                    gpos.push_back(coords(pos[static_cast<std::size_t>(c)]).first);
                    occ_g.add(gpos.back());
                }
            VertexSet bg = proj_g - occ_g;
            if (!bg.empty()) {
                auto action = table_g_->action(CopConfig(gpos), bg);
                if (action) {
                    auto assigned = detail::assign_moves(left_, gpos, *action);
                    if (assigned)
                        for (std::size_t i = 0; i < slots.size(); ++i)
                            pos[static_cast<std::size_t>(slots[i])] =
                                vertex_at((*assigned)[i], stage);
                }
            }
            return pack(std::move(pos));
        }

        // Phase 2: trackers that held their first coordinate play the
        // J-factor game inside the robber's column.
        if (proj_g.size() == 1 && mirrored == 0) {
            std::vector<int> tslots;
            std::vector<Vertex> jpos;
            for (int c = 0; c < total; ++c)
                if ((tracker_mask >> c) & 1) {
                    tslots.push_back(c);
                    jpos.push_back(coords(pos[static_cast<std::size_t>(c)]).second);
                }
            Vertex u = proj_g.lowest();
            VertexSet bj = proj_j;
            for (Vertex w : jpos) bj.remove(w);
            if (!bj.empty() && !tslots.empty()) {
                auto action = table_j_->action(CopConfig(jpos), bj);
                if (action) {
                    auto assigned = detail::assign_moves(right_, jpos, *action);
                    if (assigned)
                        for (std::size_t i = 0; i < tslots.size(); ++i)
                            pos[static_cast<std::size_t>(tslots[i])] =
                                vertex_at(u, (*assigned)[i]);
                }
            }
        }
        // The reserve walks into the robber's layer and replays the
        // G-factor game there, breaking endless first-coordinate changes.
        if (proj_j.size() == 1) {
            Vertex q = proj_j.lowest();
            std::vector<int> rslots;
            std::vector<Vertex> rg;
            VertexSet occ_g;
            bool walking = false;
            for (int c = 0; c < total; ++c) {
                if ((tracker_mask >> c) & 1) continue;
                auto [cu, cv] = coords(pos[static_cast<std::size_t>(c)]);
                if (cv != q) {
                    pos[static_cast<std::size_t>(c)] =
                        vertex_at(cu, detail::toward_step(right_, cv, q));
                    walking = true;
                } else {
                    rslots.push_back(c);
                    rg.push_back(cu);
                    occ_g.add(cu);
                }
            }
            if (!walking && !rslots.empty()) {
                VertexSet bg = proj_g - occ_g;
                if (!bg.empty()) {
                    auto action = table_g_->action(CopConfig(rg), bg);
                    if (action) {
                        auto assigned = detail::assign_moves(left_, rg, *action);
                        if (assigned)
                            for (std::size_t i = 0; i < rslots.size(); ++i)
                                pos[static_cast<std::size_t>(rslots[i])] =
                                    vertex_at((*assigned)[i], q);
                    }
                }
            }
        }
        return pack(std::move(pos));
    }

  private:
    std::vector<Vertex> initial_slots() const {
        std::vector<Vertex> slots;
        for (Vertex u : table_g_->initial().positions) slots.push_back(vertex_at(u, 0));
        for (int t = 1; t <= kj_; ++t) slots.push_back(vertex_at(0, t));
        return slots;
    }
    std::pair<Vertex, Vertex> coords(Vertex v) const { return {v / right_.order(), v % right_.order()}; }
    Vertex vertex_at(Vertex u, Vertex w) const { return u * right_.order() + w; }
    VertexSet project_g(VertexSet b) const {
        VertexSet out;
        for (Vertex v : b) out.add(v / right_.order());
        return out;
    }
    VertexSet project_j(VertexSet b) const {
        VertexSet out;
        for (Vertex v : b) out.add(v % right_.order());
        return out;
    }

    Graph left_, right_, product_;
    int kg_ = 0, kj_ = 0;
    std::shared_ptr<SolveTable> table_g_, table_j_;
};

// ---------------------------------------------------------------------------
// Best response: exhaustive adversary against a deterministic strategy.
// Every robber placement and move is branched; observations are determined
// by the true position.  Certified carries the worst-case capture round;
// Refuted carries a concrete trace (an evasion lasso, or a surviving visit
// to the guarded path).
// ---------------------------------------------------------------------------

struct BestResponse {
    bool certified = false;
    int worst_round = 0;
    std::optional<Trace> refutation;
    std::size_t states = 0;
};

struct VerifyOptions {
    std::uint64_t state_cap = 5'000'000;
};

namespace detail {

struct VerifyState {
    std::uint32_t mem_id;
    std::uint64_t cops;
    Vertex robber;
    bool operator==(const VerifyState& o) const {
        return mem_id == o.mem_id && cops == o.cops && robber == o.robber;
    }
};
struct VerifyStateHash {
    std::size_t operator()(const VerifyState& s) const {
        return static_cast<std::size_t>(
            mix64(s.cops ^ mix64(s.mem_id) ^ mix64(static_cast<std::uint64_t>(s.robber) << 32)));
    }
};

}  // namespace detail

inline BestResponse best_response(const Graph& g, const CopStrategy& strategy,
                                  const Objective& objective = Objective::capture(),
                                  const VerifyOptions& options = {}) {
    VertexSet path_set;
    for (Vertex v : objective.guard_path) path_set.add(v);

    std::map<Memory, std::uint32_t> mem_ids;
    std::vector<Memory> mems;
    auto intern_mem = [&](const Memory& m) {
        auto [it, fresh] = mem_ids.try_emplace(m, static_cast<std::uint32_t>(mems.size()));
        if (fresh) mems.push_back(m);
        return it->second;
    };

    std::unordered_map<detail::VerifyState, std::uint32_t, detail::VerifyStateHash> index;
    struct NodeInfo {
        detail::VerifyState state;
        std::int64_t parent = -1;  // state id; -1 for initial states
        std::uint64_t parent_action = 0;
        int depth = 0;
        // transition data, filled on expansion
        std::uint64_t action = 0;
        bool captures = false;
        bool violates = false;
        std::vector<std::uint32_t> succ;
    };
    std::vector<NodeInfo> nodes;

    auto intern_state = [&](detail::VerifyState s, std::int64_t parent, std::uint64_t pact,
                            int depth) {
        auto [it, fresh] = index.try_emplace(s, static_cast<std::uint32_t>(nodes.size()));
        if (fresh) {
            if (nodes.size() >= options.state_cap)
                throw resource_error("best_response state cap exceeded", nodes.size());
            NodeInfo n;
            n.state = s;
            n.parent = parent;
            n.parent_action = pact;
            n.depth = depth;
            nodes.push_back(std::move(n));
        }
        return it->second;
    };

    CopConfig c0 = strategy.initial_placement();
    int k = strategy.cop_count();
    if (c0.count() != k) throw rule_violation("cops", 0, "placement has the wrong cop count");
    Memory mem0 = strategy.initial_memory();
    VertexSet open = g.vertices() - c0.occupied();
    std::vector<std::uint32_t> initial_states;
    for (Vertex r0 : open) {
        Observation obs = make_observation(g, c0, r0);
        Memory m1 = strategy.observe(obs, mem0);
        initial_states.push_back(
            intern_state({intern_mem(m1), c0.code(), r0}, -1, 0, 0));
    }

    // Forward closure.
    for (std::uint32_t id = 0; id < nodes.size(); ++id) {
        detail::VerifyState st = nodes[id].state;
        CopConfig cops = CopConfig::from_code(st.cops, k);
        auto [action, mem2] = strategy.act(mems[st.mem_id]);
        if (!legal_cop_action(g, cops, action))
            throw rule_violation("cops", nodes[id].depth + 1,
                                 "configuration " + action.to_string() +
                                     " is not reachable from " + cops.to_string());
        nodes[id].action = action.code();
        if (action.occupied().contains(st.robber)) {
            nodes[id].captures = true;
            continue;
        }
        if (!path_set.empty() && path_set.contains(st.robber)) {
            nodes[id].violates = true;  // on the guarded path and not taken
            continue;
        }
        Observation obs1 = make_observation(g, action, st.robber);
        Memory m3 = strategy.observe(obs1, std::move(mem2));
        int depth = nodes[id].depth;
        for (Vertex r2 : g.closed_neighbours(st.robber) - action.occupied()) {
            Observation obs2 = make_observation(g, action, r2);
            Memory m4 = strategy.observe(obs2, m3);
            std::uint32_t sid = intern_state({intern_mem(m4), action.code(), r2},
                                             static_cast<std::int64_t>(id), action.code(), depth + 1);
            nodes[id].succ.push_back(sid);
        }
    }

    BestResponse out;
    out.states = nodes.size();

    auto build_trace = [&](std::uint32_t bad, bool lasso) {
        std::vector<std::uint32_t> chain;
        for (std::int64_t cur = bad; cur >= 0; cur = nodes[static_cast<std::size_t>(cur)].parent)
            chain.push_back(static_cast<std::uint32_t>(cur));
        std::reverse(chain.begin(), chain.end());
        Trace t;
        t.initial_cops = c0;
        t.initial_robber = nodes[chain[0]].state.robber;
        t.initial_observation = make_observation(g, c0, t.initial_robber);
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            const NodeInfo& n = nodes[chain[i]];
            CopConfig action = CopConfig::from_code(n.action, k);
            TraceRound r;
            r.cop_action = action;
            r.after_cops = make_observation(g, action, n.state.robber);
            r.robber_move = nodes[chain[i + 1]].state.robber;
            r.after_robber = make_observation(g, action, *r.robber_move);
            t.rounds.push_back(std::move(r));
        }
        const NodeInfo& last = nodes[chain.back()];
        if (last.violates || lasso) {
            TraceRound r;
            r.cop_action = CopConfig::from_code(last.action, k);
            if (!last.violates) r.after_cops = make_observation(g, r.cop_action, last.state.robber);
            t.rounds.push_back(std::move(r));
        }
        t.outcome = Outcome::evaded;
        t.end_round = static_cast<int>(t.rounds.size());
        return t;
    };

    if (!path_set.empty()) {
        // Guard objective: safe iff no reachable violation.
        for (std::uint32_t id = 0; id < nodes.size(); ++id)
            if (nodes[id].violates) {
                out.certified = false;
                out.refutation = build_trace(id, false);
                return out;
            }
        out.certified = true;
        int worst = 0;
        for (std::uint32_t id = 0; id < nodes.size(); ++id)
            if (nodes[id].captures) worst = std::max(worst, nodes[id].depth + 1);
        out.worst_round = worst;
        return out;
    }

    // Capture objective: least fixpoint (a state wins when its move captures
    // or every robber continuation wins), exact worst rounds on the winners.
    std::vector<std::uint8_t> win(nodes.size(), 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = nodes.size(); i-- > 0;) {
            if (win[i]) continue;
            bool w;
            if (nodes[i].captures) {
                w = true;
            } else {
                w = true;
                for (std::uint32_t s : nodes[i].succ)
                    if (!win[s]) {
                        w = false;
                        break;
                    }
            }
            if (w) {
                win[i] = 1;
                changed = true;
            }
        }
    }
    for (std::uint32_t ini : initial_states)
        if (!win[ini]) {
            // Assemble an evasion lasso: follow losing branches until a
            // state repeats.
            std::vector<std::uint32_t> path{ini};
            std::unordered_map<std::uint32_t, char> seen{{ini, 1}};
            std::uint32_t cur = ini;
            for (;;) {
                std::uint32_t next = 0;
                bool found = false;
                for (std::uint32_t s : nodes[cur].succ)
                    if (!win[s]) {
                        next = s;
                        found = true;
                        break;
                    }
                if (!found) throw internal_error("losing state with no losing continuation");
                if (seen.count(next)) break;
                seen.emplace(next, 1);
                path.push_back(next);
                cur = next;
            }
            // Rebuild parents along this concrete path for the trace.
            for (std::size_t i = 1; i < path.size(); ++i) {
                nodes[path[i]].parent = path[i - 1];
                nodes[path[i]].parent_action = nodes[path[i - 1]].action;
            }
            nodes[path[0]].parent = -1;
            out.certified = false;
            out.refutation = build_trace(path.back(), true);
            return out;
        }
    std::vector<int> value(nodes.size(), detail::kInfValue);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = nodes.size(); i-- > 0;) {
            if (!win[i]) continue;
            int v;
            if (nodes[i].captures) {
                v = 1;
            } else {
                v = 0;
                for (std::uint32_t s : nodes[i].succ) v = std::max(v, 1 + value[s]);
            }
            if (v < value[i]) {
                value[i] = v;
                changed = true;
            }
        }
    }
    out.certified = true;
    int worst = 0;
    for (std::uint32_t ini : initial_states) worst = std::max(worst, value[ini]);
    out.worst_round = worst;
    return out;
}

}  // namespace hyperopic
