#include "shsim/types.hpp"

namespace shsim {

std::string to_string(Role r) {
    switch (r) {
    case Role::liberal: return "liberal";
    case Role::fascist: return "fascist";
    case Role::hitler: return "hitler";
    }
    return "?";
}

std::string to_string(Party p) { return p == Party::liberal ? "liberal" : "fascist"; }

std::string to_string(Policy p) { return p == Policy::liberal ? "liberal" : "fascist"; }

std::string to_string(Power p) {
    switch (p) {
    case Power::policy_peek: return "policy_peek";
    case Power::investigate: return "investigate";
    case Power::special_election: return "special_election";
    case Power::execution: return "execution";
    }
    return "?";
}

std::string to_string(Phase p) {
    switch (p) {
    case Phase::nomination: return "nomination";
    case Phase::discussion: return "discussion";
    case Phase::vote: return "vote";
    case Phase::legislative_president: return "legislative_president";
    case Phase::legislative_chancellor: return "legislative_chancellor";
    case Phase::executive: return "executive";
    case Phase::game_over: return "game_over";
    }
    return "?";
}

std::string to_string(Guess g) {
    switch (g) {
    case Guess::liberal: return "liberal";
    case Guess::fascist: return "fascist";
    case Guess::hitler: return "hitler";
    case Guess::unknown: return "unknown";
    }
    return "?";
}

std::string to_string(OutcomeKind k) {
    switch (k) {
    case OutcomeKind::five_liberal_policies: return "five_liberal_policies";
    case OutcomeKind::hitler_killed: return "hitler_killed";
    case OutcomeKind::six_fascist_policies: return "six_fascist_policies";
    case OutcomeKind::hitler_elected_chancellor: return "hitler_elected_chancellor";
    }
    return "?";
}

namespace {
[[noreturn]] void bad_enum(const std::string& what, const std::string& s) {
    throw std::invalid_argument("not a valid " + what + ": '" + s + "'");
}
} // namespace

Role role_from_string(const std::string& s) {
    if (s == "liberal") return Role::liberal;
    if (s == "fascist") return Role::fascist;
    if (s == "hitler") return Role::hitler;
    bad_enum("role", s);
}

Party party_from_string(const std::string& s) {
    if (s == "liberal") return Party::liberal;
    if (s == "fascist") return Party::fascist;
    bad_enum("party", s);
}

Policy policy_from_string(const std::string& s) {
    if (s == "liberal") return Policy::liberal;
    if (s == "fascist") return Policy::fascist;
    bad_enum("policy", s);
}

Power power_from_string(const std::string& s) {
    if (s == "policy_peek") return Power::policy_peek;
    if (s == "investigate") return Power::investigate;
    if (s == "special_election") return Power::special_election;
    if (s == "execution") return Power::execution;
    bad_enum("power", s);
}

Phase phase_from_string(const std::string& s) {
    if (s == "nomination") return Phase::nomination;
    if (s == "discussion") return Phase::discussion;
    if (s == "vote") return Phase::vote;
    if (s == "legislative_president") return Phase::legislative_president;
    if (s == "legislative_chancellor") return Phase::legislative_chancellor;
    if (s == "executive") return Phase::executive;
    if (s == "game_over") return Phase::game_over;
    bad_enum("phase", s);
}

Guess guess_from_string(const std::string& s) {
    if (s == "liberal") return Guess::liberal;
    if (s == "fascist") return Guess::fascist;
    if (s == "hitler") return Guess::hitler;
    if (s == "unknown") return Guess::unknown;
    bad_enum("guess", s);
}

OutcomeKind outcome_kind_from_string(const std::string& s) {
    if (s == "five_liberal_policies") return OutcomeKind::five_liberal_policies;
    if (s == "hitler_killed") return OutcomeKind::hitler_killed;
    if (s == "six_fascist_policies") return OutcomeKind::six_fascist_policies;
    if (s == "hitler_elected_chancellor") return OutcomeKind::hitler_elected_chancellor;
    bad_enum("outcome kind", s);
}

} // namespace shsim
