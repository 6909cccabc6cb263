#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace shsim {

enum class Role { liberal, fascist, hitler };
enum class Party { liberal, fascist };
enum class Policy { liberal, fascist };

// Presidential powers on the fascist track.
enum class Power { policy_peek, investigate, special_election, execution };

enum class Phase {
    nomination,
    discussion,
    vote,
    legislative_president,
    legislative_chancellor,
    executive,
    game_over,
};

// A private role guess; "unknown" is a valid answer and never counts as correct.
enum class Guess { liberal, fascist, hitler, unknown };

enum class OutcomeKind {
    five_liberal_policies,
    hitler_killed,
    six_fascist_policies,
    hitler_elected_chancellor,
};

struct Outcome {
    OutcomeKind kind;
    Party winner;

    bool operator==(const Outcome&) const = default;
};

constexpr Party party_of(Role r) {
    return r == Role::liberal ? Party::liberal : Party::fascist;
}

constexpr Party winner_of(OutcomeKind k) {
    switch (k) {
    case OutcomeKind::five_liberal_policies:
    case OutcomeKind::hitler_killed:
        return Party::liberal;
    default:
        return Party::fascist;
    }
}

constexpr Outcome make_outcome(OutcomeKind k) { return Outcome{k, winner_of(k)}; }

// Thrown by the engine when an action violates a game rule. The message names
// the violated rule so callers (and replay validation) can surface it.
class RuleViolation : public std::runtime_error {
  public:
    explicit RuleViolation(const std::string& rule) : std::runtime_error(rule) {}
};

std::string to_string(Role r);
std::string to_string(Party p);
std::string to_string(Policy p);
std::string to_string(Power p);
std::string to_string(Phase p);
std::string to_string(Guess g);
std::string to_string(OutcomeKind k);

Role role_from_string(const std::string& s);
Party party_from_string(const std::string& s);
Policy policy_from_string(const std::string& s);
Power power_from_string(const std::string& s);
Phase phase_from_string(const std::string& s);
Guess guess_from_string(const std::string& s);
OutcomeKind outcome_kind_from_string(const std::string& s);

} // namespace shsim
