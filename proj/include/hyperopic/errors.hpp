#pragma once

#include <stdexcept>
#include <string>

namespace hyperopic {

// Bad argument or malformed input (CLI exit code 2).
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A solver or verifier hit its node budget (CLI exit code 3).
struct resource_error : std::runtime_error {
    std::size_t explored;
    resource_error(const std::string& what, std::size_t explored_)
        : std::runtime_error(what), explored(explored_) {}
};

// A strategy produced an illegal move during refereed play.
struct rule_violation : std::runtime_error {
    std::string mover;
    int round;
    rule_violation(const std::string& mover_, int round_, const std::string& what)
        : std::runtime_error("illegal move by " + mover_ + " in round " +
                             std::to_string(round_) + ": " + what),
          mover(mover_), round(round_) {}
};

// Self-check failure: a computed certificate does not hold up.  Bug signal.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace hyperopic
