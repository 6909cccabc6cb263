#include "shsim/view.hpp"

#include "shsim/engine.hpp"

namespace shsim {

AgentView make_view(const GameState& state, int seat) {
    AgentView view;
    const SeatState& self = state.seats.at(seat);
    view.own_seat = seat;
    view.own_role = self.role;
    view.known_teammates = self.known_teammates;
    view.known_hitler = self.known_hitler;
    view.player_names = state.names();

    const std::size_t log_window = 100;
    std::size_t log_start = state.log.size() > log_window ? state.log.size() - log_window : 0;
    for (std::size_t i = log_start; i < state.log.size(); ++i)
        view.public_log.push_back("[round " + std::to_string(state.log[i].round) + "] " +
                                  state.log[i].text);

    const std::size_t chat_window = static_cast<std::size_t>(state.config.chat_window);
    std::size_t chat_start = state.chat.size() > chat_window ? state.chat.size() - chat_window : 0;
    view.chat_window.assign(state.chat.begin() + chat_start, state.chat.end());

    view.legal = legal_actions(state, seat);

    if (state.phase == Phase::legislative_president && seat == state.president)
        view.hand = state.president_hand;
    else if (state.phase == Phase::legislative_chancellor && seat == state.chancellor.value_or(-1))
        view.hand = state.chancellor_hand;

    for (const auto& inv : state.investigations)
        if (inv.investigator == seat)
            view.private_intel.push_back("You investigated " + state.name_of(inv.target) +
                                         " in round " + std::to_string(inv.round) +
                                         ": they belong to the " + to_string(inv.party) +
                                         " party.");
    for (const auto& peek : state.peeks)
        if (peek.president == seat)
            view.private_intel.push_back(
                "You peeked at the top three policies in round " + std::to_string(peek.round) +
                ": " + to_string(peek.cards[0]) + ", " + to_string(peek.cards[1]) + ", " +
                to_string(peek.cards[2]) + ".");

    auto& s = view.summary;
    s.n_players = state.config.n_players;
    s.round = state.round;
    s.liberal_policies = state.liberal_policies;
    s.fascist_policies = state.fascist_policies;
    s.election_tracker = state.election_tracker;
    s.phase = state.phase;
    s.president = state.president;
    s.nominee = state.nominee;
    s.chancellor = state.chancellor;
    s.last_government = state.last_government;
    for (const auto& st : state.seats)
        if (st.alive) s.alive_seats.push_back(st.seat);
    s.unlocked_powers = state.unlocked_powers;
    return view;
}

} // namespace shsim
