#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "shsim/state.hpp"

namespace shsim {

struct StateSummary {
    int n_players = 0;
    int round = 0;
    int liberal_policies = 0;
    int fascist_policies = 0;
    int election_tracker = 0;
    Phase phase = Phase::nomination;
    int president = 0;
    std::optional<int> nominee;
    std::optional<int> chancellor;
    std::optional<std::pair<int, int>> last_government;
    std::vector<int> alive_seats;
    std::vector<Power> unlocked_powers;
};

// Everything an agent may see: its own secrets, public information, and
// nothing of the other seats' hidden state. Views are the single choke point
// for information hygiene; prompts and baseline policies consume only this.
struct AgentView {
    int own_seat = 0;
    Role own_role = Role::liberal;
    std::set<int> known_teammates;
    std::optional<int> known_hitler;
    std::vector<std::string> player_names;
    std::vector<std::string> public_log;    // last 100 rendered log lines
    std::vector<ChatEntry> chat_window;     // most recent messages
    std::string private_memory;             // filled in by the owning agent
    std::vector<Action> legal;
    std::vector<Policy> hand;               // own cards during a legislative phase
    std::vector<std::string> private_intel; // own investigation / peek results
    StateSummary summary;

    const std::string& name_of(int seat) const { return player_names[seat]; }
};

AgentView make_view(const GameState& state, int seat);

} // namespace shsim
