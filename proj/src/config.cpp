#include "shsim/config.hpp"

#include <algorithm>

namespace shsim {

RoleDistribution role_distribution(int n_players) {
    switch (n_players) {
    case 5: return {3, 1, true};
    case 6: return {4, 1, true};
    case 7: return {4, 2, false};
    case 8: return {5, 2, false};
    case 9: return {5, 3, false};
    case 10: return {6, 3, false};
    default:
        throw std::invalid_argument("n_players must be in [5,10], got " +
                                    std::to_string(n_players));
    }
}

std::map<int, Power> default_power_roadmap(int n_players) {
    role_distribution(n_players); // range check
    if (n_players <= 6) {
        return {{3, Power::policy_peek}, {4, Power::execution}, {5, Power::execution}};
    }
    if (n_players <= 8) {
        return {{2, Power::investigate},
                {3, Power::special_election},
                {4, Power::execution},
                {5, Power::execution}};
    }
    return {{1, Power::investigate},
            {2, Power::investigate},
            {3, Power::special_election},
            {4, Power::execution},
            {5, Power::execution}};
}

std::vector<std::string> default_player_names(int n_players) {
    static const std::vector<std::string> pool = {"Alice", "Bob",   "Charlie", "Dana", "Eve",
                                                  "Frank", "Grace", "Henry",   "Iris", "Jack"};
    return {pool.begin(), pool.begin() + n_players};
}

void validate(const GameConfig& config) {
    role_distribution(config.n_players);
    if (config.discussion_rounds < 0)
        throw std::invalid_argument("discussion_rounds must be >= 0");
    if (config.chat_window < 0) throw std::invalid_argument("chat_window must be >= 0");
    if (config.max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
    if (config.chat_cap < 1) throw std::invalid_argument("chat_cap must be >= 1");
    if (!config.player_names.empty() &&
        config.player_names.size() != static_cast<std::size_t>(config.n_players))
        throw std::invalid_argument("player_names must match n_players");
    for (const auto& [count, power] : config.power_roadmap) {
        (void)power;
        if (count < 1 || count > 5)
            throw std::invalid_argument("power roadmap keys must be fascist counts in [1,5]");
    }
    if (config.setup) {
        const auto& s = *config.setup;
        if (s.roles.size() != static_cast<std::size_t>(config.n_players))
            throw std::invalid_argument("setup roles must match n_players");
        if (std::count(s.roles.begin(), s.roles.end(), Role::hitler) != 1)
            throw std::invalid_argument("setup roles must contain exactly one hitler");
        auto dist = role_distribution(config.n_players);
        if (std::count(s.roles.begin(), s.roles.end(), Role::liberal) != dist.liberals ||
            std::count(s.roles.begin(), s.roles.end(), Role::fascist) != dist.fascists)
            throw std::invalid_argument("setup roles do not match the official distribution");
        if (std::count(s.deck.begin(), s.deck.end(), Policy::liberal) != 6 ||
            std::count(s.deck.begin(), s.deck.end(), Policy::fascist) != 11)
            throw std::invalid_argument("setup deck must hold 6 liberal and 11 fascist policies");
        if (s.first_president < 0 || s.first_president >= config.n_players)
            throw std::invalid_argument("setup first_president out of range");
    }
}

} // namespace shsim
