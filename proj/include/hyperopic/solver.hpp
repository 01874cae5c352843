#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperopic/game.hpp"
#include "hyperopic/graph.hpp"

namespace hyperopic {

struct Objective {
    std::vector<Vertex> guard_path;  // empty = capture
    static Objective capture() { return {}; }
    static Objective guard(std::vector<Vertex> p) { return {std::move(p)}; }
    bool is_guard() const { return !guard_path.empty(); }
};

struct SolveOptions {
    std::uint64_t node_budget = 50'000'000;
    bool want_policy = true;
};

// Chosen cop action per winning solver node, keyed by (configuration code,
// belief mask) with the cops to move.
struct Policy {
    int k = 0;
    bool pooled = false;
    CopConfig initial;
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> actions;

    std::optional<CopConfig> lookup(const CopConfig& cops, VertexSet belief) const {
        auto it = actions.find({cops.code(), belief.bits});
        if (it == actions.end()) return std::nullopt;
        return CopConfig::from_code(it->second, k);
    }
};

struct SolveResult {
    bool cops_win = false;
    int value = 0;  // worst-case cop moves to capture; 0 for guard wins
    Policy policy;
    std::size_t explored = 0;
    CopConfig initial;  // best initial placement when cops_win
    Objective objective;
};

// Observation split under a chosen model: visible candidates are seen
// exactly; in the pooled (hyperopic) model the invisible ones collapse into
// one pool, in the classic model everything is exact.
inline std::vector<BeliefBranch> observation_split(const Graph& g, const CopConfig& cops,
                                                   VertexSet candidates, bool pooled) {
    std::vector<BeliefBranch> out;
    VertexSet pool = pooled ? (candidates & invisible_region(g, cops)) : VertexSet();
    for (Vertex v : candidates - pool) out.push_back({v, VertexSet::single(v)});
    if (!pool.empty()) out.push_back({std::nullopt, pool});
    return out;
}

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline constexpr int kInfValue = std::numeric_limits<int>::max() / 2;

// Node space of the one-sided imperfect-information game for one (graph,
// cop count, observation model) triple.  kind 0 nodes have the cops to
// move, kind 1 the robber.  A cop action removes captured candidates and
// splits the rest by visibility; a robber turn expands every candidate by
// one step and splits again.  The adversary resolves every split, so a cop
// win requires all branches to win.  The classic game is the pooled=false
// instance, where every branch is a visible singleton.
class SolverCore {
  public:
    SolverCore(const Graph& g, int k, bool pooled, VertexSet guard_path, std::uint64_t budget)
        : g_(g), k_(k), pooled_(pooled), guard_path_(guard_path), budget_(budget) {}

    struct Initial {
        std::uint64_t cops;
        std::vector<std::uint32_t> branches;  // empty = all placements captured
    };

    void seed_all_initials() {
        std::vector<Vertex> pick;
        seed_initial_rec(pick, 0);
    }

    // Extra cop-to-move seed; strategy machines consult the table from
    // positions the canonical play never visits.
    std::uint32_t seed_cop_node(std::uint64_t cops, VertexSet belief) {
        return intern(cops, belief.bits, 0);
    }

    void close() {
        while (frontier_ < cops_of_.size()) {
            std::uint32_t id = static_cast<std::uint32_t>(frontier_++);
            auto touch = [](std::uint32_t) {};
            if (kind_of_[id] == 0) {
                const ConfigInfo& ci = config(cops_of_[id]);
                VertexSet belief(belief_of_[id]);
                for (std::uint64_t act : ci.actions) {
                    VertexSet survivors = belief - VertexSet(config(act).occ);
                    if (!survivors.empty()) split(survivors, act, 1, touch);
                }
            } else {
                std::uint64_t code = cops_of_[id];
                VertexSet expanded =
                    g_.closed_neighbourhood_of(VertexSet(belief_of_[id])) - VertexSet(config(code).occ);
                split(expanded, code, 0, touch);
            }
        }
    }

    void solve() {
        if (guard_path_.empty())
            solve_capture();
        else
            solve_guard();
    }

    bool node_won(std::uint32_t id) const { return win_[id] != 0; }
    int node_value(std::uint32_t id) const { return value_[id]; }
    std::size_t node_count() const { return cops_of_.size(); }
    const std::vector<Initial>& initials() const { return initials_; }
    std::uint64_t cops_code_of(std::uint32_t id) const { return cops_of_[id]; }
    std::uint64_t belief_bits_of(std::uint32_t id) const { return belief_of_[id]; }
    std::uint8_t kind_of(std::uint32_t id) const { return kind_of_[id]; }
    bool is_guard() const { return !guard_path_.empty(); }
    int cop_count() const { return k_; }

    std::optional<std::uint32_t> find_cop_node(std::uint64_t cops, std::uint64_t belief) const {
        auto it = index_.find(key(cops, belief, 0));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    // Cops win from this placement iff every placement branch wins; the
    // value is the worst branch.  nullopt on a loss.
    std::optional<int> initial_value(const Initial& ini) const {
        int worst = 0;
        for (std::uint32_t b : ini.branches) {
            if (!win_[b]) return std::nullopt;
            worst = std::max(worst, value_[b]);
        }
        return worst;
    }

    // Best action from a winning cop node.  Capture objective: minimal
    // horizon, ties to the lexicographically smallest configuration (the
    // action list is enumerated in that order).  Guard: the lex-first
    // action that clears the path and stays inside the safe region.
    std::optional<std::uint64_t> best_action(std::uint32_t id) {
        if (!win_[id] || kind_of_[id] != 0) return std::nullopt;
        const ConfigInfo& ci = config(cops_of_[id]);
        VertexSet belief(belief_of_[id]);
        std::optional<std::uint64_t> best;
        int best_value = kInfValue;
        for (std::uint64_t act : ci.actions) {
            VertexSet survivors = belief - VertexSet(config(act).occ);
            if (is_guard()) {
                if (!(survivors & guard_path_).empty()) continue;
                bool safe = true;
                split(survivors, act, 1, [&](std::uint32_t succ) {
                    if (!win_[succ]) safe = false;
                });
                if (safe) return act;
                continue;
            }
            int cost;
            if (survivors.empty()) {
                cost = 1;
            } else {
                bool all = true;
                int worst = 0;
                split(survivors, act, 1, [&](std::uint32_t succ) {
                    if (!win_[succ])
                        all = false;
                    else
                        worst = std::max(worst, value_[succ]);
                });
                if (!all) continue;
                cost = 1 + worst;
            }
            if (cost < best_value) {
                best_value = cost;
                best = act;
            }
        }
        return best;
    }

  private:
    struct ConfigInfo {
        std::uint64_t occ;
        std::uint64_t invis;
        std::vector<std::uint64_t> actions;
    };

    static std::pair<std::uint64_t, std::uint64_t> key(std::uint64_t cops, std::uint64_t belief,
                                                       std::uint8_t kind) {
        return {(cops << 1) | kind, belief};
    }
    struct KeyHash {
        std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const {
            return static_cast<std::size_t>(mix64(p.first ^ mix64(p.second)));
        }
    };

    const ConfigInfo& config(std::uint64_t code) {
        auto it = configs_.find(code);
        if (it != configs_.end()) return it->second;
        CopConfig c = CopConfig::from_code(code, k_);
        ConfigInfo ci;
        ci.occ = c.occupied().bits;
        ci.invis = pooled_ ? invisible_region(g_, c).bits : 0;
        for (const CopConfig& a : cop_actions(g_, c)) ci.actions.push_back(a.code());
        return configs_.emplace(code, std::move(ci)).first->second;
    }

    std::uint32_t intern(std::uint64_t cops, std::uint64_t belief, std::uint8_t kind) {
        auto [it, fresh] =
            index_.try_emplace(key(cops, belief, kind), static_cast<std::uint32_t>(cops_of_.size()));
        if (fresh) {
            if (cops_of_.size() >= budget_)
                throw resource_error("solver node budget exceeded", cops_of_.size());
            cops_of_.push_back(cops);
            belief_of_.push_back(belief);
            kind_of_.push_back(kind);
            win_.push_back(0);
            value_.push_back(kInfValue);
        }
        return it->second;
    }

    // Observation split of a candidate set under configuration `code`.
    template <typename Fn>
    void split(VertexSet candidates, std::uint64_t code, std::uint8_t kind, Fn&& fn) {
        VertexSet pool = candidates & VertexSet(config(code).invis);
        for (Vertex v : candidates - pool) fn(intern(code, VertexSet::single(v).bits, kind));
        if (!pool.empty()) fn(intern(code, pool.bits, kind));
    }

    void seed_initial_rec(std::vector<Vertex>& pick, Vertex from) {
        if (static_cast<int>(pick.size()) == k_) {
            CopConfig c(pick);
            std::uint64_t code = c.code();
            Initial ini{code, {}};
            VertexSet open = g_.vertices() - VertexSet(config(code).occ);
            if (!open.empty())
                split(open, code, 0, [&](std::uint32_t b) { ini.branches.push_back(b); });
            initials_.push_back(std::move(ini));
            return;
        }
        for (Vertex v = from; v < g_.order(); ++v) {
            pick.push_back(v);
            seed_initial_rec(pick, v);
            pick.pop_back();
        }
    }

    bool cop_node_wins(std::uint32_t id) {
        const ConfigInfo& ci = config(cops_of_[id]);
        VertexSet belief(belief_of_[id]);
        for (std::uint64_t act : ci.actions) {
            VertexSet survivors = belief - VertexSet(config(act).occ);
            if (survivors.empty()) return true;
            bool all = true;
            split(survivors, act, 1, [&](std::uint32_t succ) {
                if (!win_[succ]) all = false;
            });
            if (all) return true;
        }
        return false;
    }

    bool robber_node_wins(std::uint32_t id) {
        std::uint64_t code = cops_of_[id];
        VertexSet expanded =
            g_.closed_neighbourhood_of(VertexSet(belief_of_[id])) - VertexSet(config(code).occ);
        bool all = true;
        split(expanded, code, 0, [&](std::uint32_t succ) {
            if (!win_[succ]) all = false;
        });
        return all;
    }

    int cop_node_value(std::uint32_t id) {
        const ConfigInfo& ci = config(cops_of_[id]);
        VertexSet belief(belief_of_[id]);
        int best = kInfValue;
        for (std::uint64_t act : ci.actions) {
            VertexSet survivors = belief - VertexSet(config(act).occ);
            if (survivors.empty()) return 1;
            bool all = true;
            int worst = 0;
            split(survivors, act, 1, [&](std::uint32_t succ) {
                if (!win_[succ])
                    all = false;
                else
                    worst = std::max(worst, value_[succ]);
            });
            if (all) best = std::min(best, 1 + worst);
        }
        return best;
    }

    int robber_node_value(std::uint32_t id) {
        std::uint64_t code = cops_of_[id];
        VertexSet expanded =
            g_.closed_neighbourhood_of(VertexSet(belief_of_[id])) - VertexSet(config(code).occ);
        int worst = 0;
        split(expanded, code, 0, [&](std::uint32_t succ) {
            worst = std::max(worst, win_[succ] ? value_[succ] : kInfValue);
        });
        return worst;
    }

    // Least fixpoint of the cop attractor to capture, then exact horizons.
    // Gauss-Seidel sweeps in reverse interning order converge in about
    // horizon-many passes.
    void solve_capture() {
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t i = cops_of_.size(); i-- > 0;) {
                std::uint32_t id = static_cast<std::uint32_t>(i);
                if (win_[id]) continue;
                if (kind_of_[id] == 0 ? cop_node_wins(id) : robber_node_wins(id)) {
                    win_[id] = 1;
                    changed = true;
                }
            }
        }
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t i = cops_of_.size(); i-- > 0;) {
                std::uint32_t id = static_cast<std::uint32_t>(i);
                if (!win_[id]) continue;
                int v = kind_of_[id] == 0 ? cop_node_value(id) : robber_node_value(id);
                if (v < value_[id]) {
                    value_[id] = v;
                    changed = true;
                }
            }
        }
    }

    // Guard objective: least fixpoint of the robber's attractor to a
    // violation (a path candidate surviving a cop move, including no
    // clearing action existing at all); cop win is the complement.
    // Capture stays an absorbing cop win.
    void solve_guard() {
        std::vector<std::uint8_t> robwin(cops_of_.size(), 0);
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t i = cops_of_.size(); i-- > 0;) {
                std::uint32_t id = static_cast<std::uint32_t>(i);
                if (robwin[id]) continue;
                bool rw;
                if (kind_of_[id] == 0) {
                    const ConfigInfo& ci = config(cops_of_[id]);
                    VertexSet belief(belief_of_[id]);
                    rw = true;
                    for (std::uint64_t act : ci.actions) {
                        VertexSet survivors = belief - VertexSet(config(act).occ);
                        if (!(survivors & guard_path_).empty()) continue;
                        bool escape = false;
                        if (!survivors.empty())
                            split(survivors, act, 1, [&](std::uint32_t succ) {
                                if (robwin[succ]) escape = true;
                            });
                        if (!escape) {
                            rw = false;
                            break;
                        }
                    }
                } else {
                    std::uint64_t code = cops_of_[id];
                    VertexSet expanded = g_.closed_neighbourhood_of(VertexSet(belief_of_[id])) -
                                         VertexSet(config(code).occ);
                    rw = false;
                    split(expanded, code, 0, [&](std::uint32_t succ) {
                        if (robwin[succ]) rw = true;
                    });
                }
                if (rw) {
                    robwin[id] = 1;
                    changed = true;
                }
            }
        }
        for (std::size_t i = 0; i < cops_of_.size(); ++i) {
            win_[i] = robwin[i] ? 0 : 1;
            value_[i] = 0;
        }
    }

    const Graph& g_;
    int k_;
    bool pooled_;
    VertexSet guard_path_;
    std::uint64_t budget_;

    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::uint32_t, KeyHash> index_;
    std::vector<std::uint64_t> cops_of_;
    std::vector<std::uint64_t> belief_of_;
    std::vector<std::uint8_t> kind_of_;
    std::vector<std::uint8_t> win_;
    std::vector<int> value_;
    std::unordered_map<std::uint64_t, ConfigInfo> configs_;
    std::vector<Initial> initials_;
    std::size_t frontier_ = 0;
};

inline SolveResult run_solver(const Graph& g, int k, bool pooled, const Objective& objective,
                              const SolveOptions& options) {
    if (!is_connected(g)) throw usage_error("game solving needs a connected graph");
    if (k < 1 || k > kMaxCops) throw usage_error("cop count out of range 1..6");
    VertexSet path_set;
    if (objective.is_guard()) {
        if (!is_isometric_path(g, objective.guard_path))
            throw usage_error("guard objective path is not isometric");
        for (Vertex v : objective.guard_path) path_set.add(v);
    }
    if (!pooled) {
        long double estimate = 2.0L * g.order();
        for (int i = 0; i < k; ++i) estimate *= g.order();
        if (estimate > static_cast<long double>(options.node_budget))
            throw resource_error("classic solver estimate exceeds budget",
                                 static_cast<std::size_t>(estimate));
    }

    SolverCore core(g, k, pooled, path_set, options.node_budget);
    core.seed_all_initials();
    core.close();
    core.solve();

    SolveResult result;
    result.objective = objective;
    result.explored = core.node_count();
    int best_value = kInfValue;
    std::uint64_t best_code = 0;
    bool have = false;
    for (const auto& ini : core.initials()) {
        auto v = core.initial_value(ini);
        if (v && (!have || *v < best_value)) {
            have = true;
            best_value = *v;
            best_code = ini.cops;
        }
    }
    result.cops_win = have;
    if (have) {
        result.initial = CopConfig::from_code(best_code, k);
        result.value = core.is_guard() ? 0 : best_value;
        if (options.want_policy) {
            result.policy.k = k;
            result.policy.pooled = pooled;
            result.policy.initial = result.initial;
            for (std::uint32_t id = 0; id < core.node_count(); ++id) {
                if (core.kind_of(id) != 0 || !core.node_won(id)) continue;
                if (auto act = core.best_action(id))
                    result.policy.actions[{core.cops_code_of(id), core.belief_bits_of(id)}] = *act;
            }
        }
    }
    return result;
}

}  // namespace detail

inline SolveResult solve_classic(const Graph& g, int k,
                                 const Objective& objective = Objective::capture(),
                                 const SolveOptions& options = {}) {
    return detail::run_solver(g, k, false, objective, options);
}

inline SolveResult solve_hyperopic(const Graph& g, int k,
                                   const Objective& objective = Objective::capture(),
                                   const SolveOptions& options = {}) {
    return detail::run_solver(g, k, true, objective, options);
}

inline int cop_number(const Graph& g, const SolveOptions& options = {}) {
    SolveOptions opt = options;
    opt.want_policy = false;
    for (int k = 1; k <= kMaxCops; ++k) {
        try {
            if (solve_classic(g, k, Objective::capture(), opt).cops_win) return k;
        } catch (const resource_error& e) {
            throw resource_error("cop number search stopped at k=" + std::to_string(k) + ": " +
                                     e.what(),
                                 e.explored);
        }
    }
    throw resource_error("cop number exceeds the supported 6 cops", 0);
}

inline int hyperopic_cop_number(const Graph& g, const SolveOptions& options = {}) {
    SolveOptions opt = options;
    opt.want_policy = false;
    for (int k = cop_number(g, opt); k <= kMaxCops; ++k) {
        try {
            if (solve_hyperopic(g, k, Objective::capture(), opt).cops_win) return k;
        } catch (const resource_error& e) {
            throw resource_error("hyperopic cop number search stopped at k=" + std::to_string(k) +
                                     ": " + e.what(),
                                 e.explored);
        }
    }
    throw resource_error("hyperopic cop number exceeds the supported 6 cops", 0);
}

// ---------------------------------------------------------------------------
// Policy self-check: replays the policy through the gamesim belief updates
// against every observation branch and robber move, confirming capture
// within the claimed horizon (or, for guard, that no violation is ever
// reachable).  Deliberately independent of the solver's node machinery.
// ---------------------------------------------------------------------------

inline bool extract_policy_check(const Graph& g, int k, const SolveResult& result) {
    if (!result.cops_win) throw usage_error("policy check requires a cops-win result");
    VertexSet path_set;
    for (Vertex v : result.objective.guard_path) path_set.add(v);
    const bool guard = result.objective.is_guard();

    struct Key {
        std::uint64_t cops, belief;
        bool operator==(const Key& o) const { return cops == o.cops && belief == o.belief; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& x) const {
            return static_cast<std::size_t>(detail::mix64(x.cops ^ detail::mix64(x.belief)));
        }
    };
    constexpr int kFail = -1;
    std::unordered_map<Key, int, KeyHash> memo;  // rounds to capture, kFail on failure
    std::unordered_map<Key, char, KeyHash> on_path;

    auto rec = [&](auto&& self, const CopConfig& cops, VertexSet belief) -> int {
        Key state{cops.code(), belief.bits};
        if (auto it = memo.find(state); it != memo.end()) return it->second;
        if (on_path.count(state)) return guard ? 0 : kFail;  // cycle: safe / never captures
        on_path.emplace(state, 1);
        int out = kFail;
        if (auto act = result.policy.lookup(cops, belief)) {
            BeliefUpdate after_cops = belief_after_cop_move(g, BeliefState{belief}, *act);
            bool violation = guard && !(after_cops.after.candidates & path_set).empty();
            if (!violation) {
                if (after_cops.after.candidates.empty()) {
                    out = 1;
                } else {
                    int worst = 1;
                    bool ok = true;
                    for (const BeliefBranch& obs :
                         observation_split(g, *act, after_cops.after.candidates,
                                         result.policy.pooled)) {
                        BeliefUpdate moved =
                            belief_after_robber_move(g, BeliefState{obs.candidates}, *act);
                        for (const BeliefBranch& next :
                             observation_split(g, *act, moved.after.candidates,
                                             result.policy.pooled)) {
                            int sub = self(self, *act, next.candidates);
                            if (sub == kFail) {
                                ok = false;
                                break;
                            }
                            worst = std::max(worst, 1 + sub);
                        }
                        if (!ok) break;
                    }
                    if (ok) out = guard ? 0 : worst;
                }
            }
        }
        on_path.erase(state);
        memo[state] = out;
        return out;
    };

    CopConfig c0 = result.initial;
    if (c0.count() != k) return false;
    VertexSet open = g.vertices() - c0.occupied();
    int worst = 0;
    for (const BeliefBranch& b : observation_split(g, c0, open, result.policy.pooled)) {
        int v = rec(rec, c0, b.candidates);
        if (v == kFail) return false;
        worst = std::max(worst, v);
    }
    return guard || worst <= result.value;
}

inline std::string policy_to_text(const Policy& p) {
    std::ostringstream out;
    out << "k " << p.k << "\n";
    out << "model " << (p.pooled ? "hyperopic" : "classic") << "\n";
    out << "initial " << p.initial.to_string() << "\n";
    for (const auto& [node, act] : p.actions) {
        out << "cops=" << CopConfig::from_code(node.first, p.k).to_string()
            << " belief=" << VertexSet(node.second).to_string() << " -> "
            << CopConfig::from_code(act, p.k).to_string() << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Solve table: a capture solve whose node space grows on demand.  Strategy
// machines consult it from whatever position their play reaches, not just
// along the canonical line; monotonicity keeps earlier verdicts valid when
// nodes are added.
// ---------------------------------------------------------------------------

class SolveTable {
  public:
    SolveTable(Graph g, int k, bool pooled, std::uint64_t budget = 50'000'000)
        : graph_(std::move(g)), core_(graph_, k, pooled, VertexSet(), budget) {
        if (!is_connected(graph_)) throw usage_error("solve table needs a connected graph");
        if (k < 1 || k > kMaxCops) throw usage_error("cop count out of range 1..6");
        core_.seed_all_initials();
        refresh();
    }

    const Graph& graph() const { return graph_; }
    int cop_count() const { return core_.cop_count(); }

    bool initial_win() const { return best_initial_.has_value(); }
    const CopConfig& initial() const {
        if (!best_initial_) throw internal_error("solve table: no winning initial placement");
        return *best_initial_;
    }

    bool win(const CopConfig& cops, VertexSet belief) {
        return core_.node_won(ensure(cops, belief));
    }
    int value(const CopConfig& cops, VertexSet belief) {
        return core_.node_value(ensure(cops, belief));
    }
    std::optional<CopConfig> action(const CopConfig& cops, VertexSet belief) {
        auto act = core_.best_action(ensure(cops, belief));
        if (!act) return std::nullopt;
        return CopConfig::from_code(*act, core_.cop_count());
    }

  private:
    std::uint32_t ensure(const CopConfig& cops, VertexSet belief) {
        if (belief.empty()) throw usage_error("solve table query with an empty belief");
        if (!(belief & cops.occupied()).empty())
            throw usage_error("solve table query with candidates under a cop");
        if (auto found = core_.find_cop_node(cops.code(), belief.bits)) return *found;
        std::uint32_t id = core_.seed_cop_node(cops.code(), belief);
        refresh();
        return id;
    }

    void refresh() {
        core_.close();
        core_.solve();
        best_initial_.reset();
        int best = detail::kInfValue;
        for (const auto& ini : core_.initials()) {
            auto v = core_.initial_value(ini);
            if (v && *v < best) {
                best = *v;
                best_initial_ = CopConfig::from_code(ini.cops, core_.cop_count());
            }
        }
    }

    Graph graph_;
    detail::SolverCore core_;
    std::optional<CopConfig> best_initial_;
};

}  // namespace hyperopic
