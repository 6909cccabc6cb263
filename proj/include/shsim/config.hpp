#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shsim/types.hpp"

namespace shsim {

struct RoleDistribution {
    int liberals = 0;
    int fascists = 0; // excluding Hitler
    bool hitler_informed = false;

    bool operator==(const RoleDistribution&) const = default;
};

// Official role split per player count. Hitler count is always 1.
RoleDistribution role_distribution(int n_players);

// Official presidential-power track for a player count:
// fascist policy count -> power granted when an elected government enacts it.
std::map<int, Power> default_power_roadmap(int n_players);

// Pinned setup used when replaying imported games: explicit roles in seat
// order, the exact draw pile from top to bottom, and the opening president.
struct SetupOverride {
    std::vector<Role> roles;
    std::vector<Policy> deck; // index 0 = top of the draw pile
    int first_president = 0;

    bool operator==(const SetupOverride&) const = default;
};

struct GameConfig {
    int n_players = 5;
    std::uint64_t seed = 0;
    // Empty map = use default_power_roadmap(n_players).
    std::map<int, Power> power_roadmap;
    int discussion_rounds = 1;  // per decision phase; 0 disables discussions
    int chat_window = 30;       // messages visible to agents
    int max_rounds = 64;        // safety bound; exceeding it is an engine error
    int chat_cap = 500;         // max characters per chat message
    std::vector<std::string> player_names; // empty = default names
    std::optional<SetupOverride> setup;

    bool operator==(const GameConfig&) const = default;
};

// Throws std::invalid_argument describing the first problem found.
void validate(const GameConfig& config);

std::vector<std::string> default_player_names(int n_players);

} // namespace shsim
