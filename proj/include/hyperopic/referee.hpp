#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hyperopic/game.hpp"
#include "hyperopic/graph.hpp"
#include "hyperopic/solver.hpp"

namespace hyperopic {

// Strategy-defined finite state, comparable and hashable so the referee and
// the verifier can detect repeated game states.
using Memory = std::vector<std::uint64_t>;

// Deterministic cop player.  `observe` absorbs one observation (they arrive
// after every half-move, the placement included); `act` is called at the
// cops' turn and may also advance the memory with its own bookkeeping.
class CopStrategy {
  public:
    virtual ~CopStrategy() = default;
    virtual std::string name() const = 0;
    virtual int cop_count() const = 0;
    virtual CopConfig initial_placement() const = 0;
    virtual Memory initial_memory() const = 0;
    virtual Memory observe(const Observation& obs, Memory mem) const = 0;
    virtual std::pair<CopConfig, Memory> act(Memory mem) const = 0;
};

// The robber plays with full information: it sees the cops and knows the
// graph.  Implementations may keep state; expose it for repetition checks.
class RobberStrategy {
  public:
    virtual ~RobberStrategy() = default;
    virtual std::string name() const = 0;
    virtual Vertex place(const Graph& g, const CopConfig& cops) = 0;
    virtual Vertex move(const Graph& g, const CopConfig& cops, Vertex current) = 0;
    virtual Memory memory_key() const { return {}; }
};

inline Observation make_observation(const Graph& g, const CopConfig& cops, Vertex r) {
    Observation obs;
    obs.cops = cops;
    if (visible(g, cops, r)) obs.robber = r;
    return obs;
}

// ---------------------------------------------------------------------------
// Trace of one refereed play
// ---------------------------------------------------------------------------

enum class Outcome { captured, evaded, cutoff };

struct TraceRound {
    CopConfig cop_action;
    std::optional<Observation> after_cops;   // absent when the move captured
    std::optional<Vertex> robber_move;       // absent when the game was over
    std::optional<Observation> after_robber; // absent when the move captured
};

struct Trace {
    CopConfig initial_cops;
    Vertex initial_robber = 0;
    std::optional<Observation> initial_observation;  // absent if placement captured
    std::vector<TraceRound> rounds;
    Outcome outcome = Outcome::cutoff;
    int end_round = 0;  // capture round, or rounds played
};

inline std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::captured: return "captured";
        case Outcome::evaded: return "evaded";
        default: return "cutoff";
    }
}

struct RefereeOptions {
    int round_cap = 10'000;
    bool instrument_belief = false;  // maintain a belief and assert soundness
};

// Plays one full game.  Capture is checked after both half-moves; evasion is
// declared when a full state (both memories, positions) repeats.
inline Trace referee(const Graph& g, CopStrategy& cops, RobberStrategy& robber,
                     const RefereeOptions& options = {}) {
    Trace trace;
    CopConfig config = cops.initial_placement();
    if (config.count() != cops.cop_count())
        throw rule_violation("cops", 0, "placement has the wrong cop count");
    for (Vertex v : config.positions)
        if (v < 0 || v >= g.order()) throw rule_violation("cops", 0, "placement off the graph");
    Memory mem = cops.initial_memory();
    trace.initial_cops = config;

    Vertex r = robber.place(g, config);
    if (r < 0 || r >= g.order()) throw rule_violation("robber", 0, "placement off the graph");
    trace.initial_robber = r;
    if (config.occupied().contains(r)) {
        trace.outcome = Outcome::captured;
        trace.end_round = 0;
        return trace;
    }

    Observation obs = make_observation(g, config, r);
    trace.initial_observation = obs;
    mem = cops.observe(obs, std::move(mem));

    BeliefState belief{VertexSet()};
    if (options.instrument_belief) {
        belief = belief_with_observation(
            g, belief_after_cop_move(g, BeliefState{g.vertices()}, config).after, config, obs);
        if (!belief.candidates.contains(r))
            throw internal_error("belief lost the robber after placement");
    }

    std::set<std::pair<Memory, std::pair<std::uint64_t, Vertex>>> seen;
    auto state_key = [&]() {
        Memory key = mem;
        Memory rk = robber.memory_key();
        key.insert(key.end(), rk.begin(), rk.end());
        return std::make_pair(key, std::make_pair(config.code(), r));
    };
    seen.insert(state_key());

    for (int round = 1; round <= options.round_cap; ++round) {
        TraceRound rec;
        auto [action, mem2] = cops.act(std::move(mem));
        mem = std::move(mem2);
        if (!legal_cop_action(g, config, action))
            throw rule_violation("cops", round, "configuration " + action.to_string() +
                                                    " is not reachable from " + config.to_string());
        config = action;
        rec.cop_action = config;
        if (config.occupied().contains(r)) {
            trace.rounds.push_back(std::move(rec));
            trace.outcome = Outcome::captured;
            trace.end_round = round;
            return trace;
        }
        obs = make_observation(g, config, r);
        rec.after_cops = obs;
        mem = cops.observe(obs, std::move(mem));
        if (options.instrument_belief) {
            belief = belief_with_observation(g, belief_after_cop_move(g, belief, config).after,
                                             config, obs);
            if (!belief.candidates.contains(r))
                throw internal_error("belief lost the robber after a cop move");
        }

        Vertex next = robber.move(g, config, r);
        if (!g.closed_neighbours(r).contains(next))
            throw rule_violation("robber", round, "move " + std::to_string(r) + "->" +
                                                      std::to_string(next) + " is not an edge");
        r = next;
        rec.robber_move = r;
        if (config.occupied().contains(r)) {
            trace.rounds.push_back(std::move(rec));
            trace.outcome = Outcome::captured;
            trace.end_round = round;
            return trace;
        }
        obs = make_observation(g, config, r);
        rec.after_robber = obs;
        mem = cops.observe(obs, std::move(mem));
        if (options.instrument_belief) {
            belief = belief_with_observation(g, belief_after_robber_move(g, belief, config).after,
                                             config, obs);
            if (!belief.candidates.contains(r))
                throw internal_error("belief lost the robber after a robber move");
        }

        trace.rounds.push_back(std::move(rec));
        if (!seen.insert(state_key()).second) {
            trace.outcome = Outcome::evaded;
            trace.end_round = round;
            return trace;
        }
    }
    trace.outcome = Outcome::cutoff;
    trace.end_round = options.round_cap;
    return trace;
}

// ---------------------------------------------------------------------------
// Stock robbers
// ---------------------------------------------------------------------------

class StationaryRobber : public RobberStrategy {
  public:
    explicit StationaryRobber(Vertex v) : v_(v) {}
    std::string name() const override { return "stationary"; }
    Vertex place(const Graph&, const CopConfig&) override { return v_; }
    Vertex move(const Graph&, const CopConfig&, Vertex current) override { return current; }

  private:
    Vertex v_;
};

class ScriptedRobber : public RobberStrategy {
  public:
    explicit ScriptedRobber(std::vector<Vertex> script) : script_(std::move(script)) {}
    std::string name() const override { return "scripted"; }
    Vertex place(const Graph&, const CopConfig&) override { return script_.at(0); }
    Vertex move(const Graph&, const CopConfig&, Vertex current) override {
        ++index_;
        return index_ < script_.size() ? script_[index_] : current;
    }
    Memory memory_key() const override { return {index_}; }

  private:
    std::vector<Vertex> script_;
    std::size_t index_ = 0;
};

// Steps to a legal vertex maximising the distance to the nearest cop,
// lowest index on ties.
class GreedyEvader : public RobberStrategy {
  public:
    std::string name() const override { return "greedy_evader"; }
    Vertex place(const Graph& g, const CopConfig& cops) override {
        return best(g, cops, g.vertices());
    }
    Vertex move(const Graph& g, const CopConfig& cops, Vertex current) override {
        return best(g, cops, g.closed_neighbours(current));
    }

  private:
    static Vertex best(const Graph& g, const CopConfig& cops, VertexSet options) {
        Vertex pick = options.lowest();
        int pick_dist = -1;
        for (Vertex v : options) {
            int nearest = g.order();
            for (Vertex c : cops.positions) {
                std::vector<int> d = bfs_distances(g, c);
                if (d[static_cast<std::size_t>(v)] >= 0)
                    nearest = std::min(nearest, d[static_cast<std::size_t>(v)]);
            }
            if (nearest > pick_dist) {
                pick_dist = nearest;
                pick = v;
            }
        }
        return pick;
    }
};

class SeededRandomRobber : public RobberStrategy {
  public:
    explicit SeededRandomRobber(std::uint64_t seed) : rng_(seed) {}
    std::string name() const override { return "random"; }
    Vertex place(const Graph& g, const CopConfig& cops) override {
        VertexSet open = g.vertices() - cops.occupied();
        if (open.empty()) return 0;
        return pick(open);
    }
    Vertex move(const Graph& g, const CopConfig& cops, Vertex current) override {
        VertexSet options = g.closed_neighbours(current) - cops.occupied();
        if (options.empty()) return current;
        return pick(options);
    }
    Memory memory_key() const override { return {draws_}; }

  private:
    Vertex pick(VertexSet s) {
        ++draws_;
        std::vector<Vertex> v = s.to_vector();
        return v[static_cast<std::size_t>(rng_() % v.size())];
    }
    std::mt19937_64 rng_;
    std::uint64_t draws_ = 0;
};

// ---------------------------------------------------------------------------
// Playback of a solver policy as a strategy: keeps the solver-side node
// (configuration, belief) in memory and follows the extracted actions.
// ---------------------------------------------------------------------------

class PolicyCopStrategy : public CopStrategy {
  public:
    PolicyCopStrategy(const Graph& g, Policy policy)
        : g_(g), policy_(std::move(policy)) {}

    std::string name() const override { return "policy"; }
    int cop_count() const override { return policy_.k; }
    CopConfig initial_placement() const override { return policy_.initial; }
    // mem: [cops code, belief bits, phase] with phase 0 = before the first
    // observation, then alternating 1 = robber about to move, 2 = cops about
    // to move.
    Memory initial_memory() const override { return {policy_.initial.code(), 0, 0}; }

    Memory observe(const Observation& obs, Memory mem) const override {
        CopConfig cops = CopConfig::from_code(mem[0], policy_.k);
        BeliefState belief{VertexSet(mem[1])};
        if (mem[2] == 0) {
            belief = belief_after_cop_move(g_, BeliefState{g_.vertices()}, cops).after;
        } else if (mem[2] == 1) {
            belief = belief_after_robber_move(g_, belief, cops).after;
        } else {
            belief = belief_after_cop_move(g_, belief, cops).after;
        }
        belief = belief_with_observation(g_, belief, cops, obs);
        mem[1] = belief.candidates.bits;
        mem[2] = (mem[2] == 2) ? 1 : 2;
        return mem;
    }

    std::pair<CopConfig, Memory> act(Memory mem) const override {
        CopConfig cops = CopConfig::from_code(mem[0], policy_.k);
        auto action = policy_.lookup(cops, VertexSet(mem[1]));
        if (!action)
            throw internal_error("policy has no action for cops=" + cops.to_string() +
                                 " belief=" + VertexSet(mem[1]).to_string());
        mem[0] = action->code();
        return {*action, std::move(mem)};
    }

  private:
    const Graph& g_;
    Policy policy_;
};

}  // namespace hyperopic
