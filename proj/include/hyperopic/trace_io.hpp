#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "hyperopic/referee.hpp"

namespace hyperopic {

namespace detail {

inline std::string observation_text(const Observation& obs) {
    std::string s = "cops=" + obs.cops.to_string();
    s += obs.robber ? " robber=" + std::to_string(*obs.robber) : " robber=invisible";
    return s;
}

}  // namespace detail

inline std::string trace_to_text(const Trace& t) {
    std::ostringstream out;
    out << "place cops " << t.initial_cops.to_string() << "\n";
    out << "place robber " << t.initial_robber << "\n";
    if (t.initial_observation)
        out << "observe " << detail::observation_text(*t.initial_observation) << "\n";
    int round = 0;
    for (const TraceRound& r : t.rounds) {
        ++round;
        out << "round " << round << " cops " << r.cop_action.to_string() << "\n";
        if (r.after_cops) out << "  observe " << detail::observation_text(*r.after_cops) << "\n";
        if (r.robber_move) out << "  robber " << *r.robber_move << "\n";
        if (r.after_robber) out << "  observe " << detail::observation_text(*r.after_robber) << "\n";
    }
    out << "outcome " << outcome_name(t.outcome) << " round " << t.end_round << "\n";
    return out.str();
}

inline nlohmann::json observation_to_json(const Observation& obs) {
    nlohmann::json j;
    j["cops"] = obs.cops.positions;
    if (obs.robber)
        j["robber"] = *obs.robber;
    else
        j["robber"] = nullptr;
    return j;
}

inline nlohmann::json trace_to_json(const Trace& t) {
    nlohmann::json j;
    j["initial"]["cops"] = t.initial_cops.positions;
    j["initial"]["robber"] = t.initial_robber;
    if (t.initial_observation)
        j["initial"]["observation"] = observation_to_json(*t.initial_observation);
    j["rounds"] = nlohmann::json::array();
    int round = 0;
    for (const TraceRound& r : t.rounds) {
        nlohmann::json jr;
        jr["round"] = ++round;
        jr["cops"] = r.cop_action.positions;
        if (r.after_cops) jr["after_cops"] = observation_to_json(*r.after_cops);
        if (r.robber_move) jr["robber"] = *r.robber_move;
        if (r.after_robber) jr["after_robber"] = observation_to_json(*r.after_robber);
        j["rounds"].push_back(std::move(jr));
    }
    j["outcome"] = outcome_name(t.outcome);
    j["end_round"] = t.end_round;
    return j;
}

}  // namespace hyperopic
