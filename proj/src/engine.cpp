#include "shsim/engine.hpp"

#include <algorithm>

namespace shsim {

namespace {

void log_line(GameState& s, std::string text) {
    s.log.push_back(LogEvent{s.round, std::move(text)});
}

int next_alive_after(const GameState& s, int seat) {
    const int n = static_cast<int>(s.seats.size());
    for (int step = 1; step <= n; ++step) {
        int candidate = (seat + step) % n;
        if (s.seats[candidate].alive) return candidate;
    }
    return seat;
}

std::vector<int> alive_seats(const GameState& s) {
    std::vector<int> out;
    for (const auto& seat : s.seats)
        if (seat.alive) out.push_back(seat.seat);
    return out;
}

const std::map<int, Power>& roadmap_of(const GameState& s) {
    return s.config.power_roadmap;
}

// Reshuffles the discard pile into the draw pile when fewer than `need`
// cards remain.
void ensure_pile(GameState& s, std::size_t need) {
    if (s.deck.draw_pile.size() >= need) return;
    s.deck.draw_pile.insert(s.deck.draw_pile.end(), s.deck.discard_pile.begin(),
                            s.deck.discard_pile.end());
    s.deck.discard_pile.clear();
    shuffle_vec(s.deck.draw_pile, s.rng);
    log_line(s, "The policy deck was reshuffled (" +
                    std::to_string(s.deck.draw_pile.size()) + " cards).");
}

void finish_game(GameState& s, OutcomeKind kind, const std::string& text) {
    s.outcome = make_outcome(kind);
    s.phase = Phase::game_over;
    s.discussion.reset();
    log_line(s, text);
    log_line(s, std::string(s.outcome->winner == Party::liberal ? "Liberals" : "Fascists") +
                    " win the game.");
}

void end_round(GameState& s) {
    if (s.outcome) return;
    if (s.forced_next_president) {
        s.president = s.is_alive(*s.forced_next_president)
                          ? *s.forced_next_president
                          : next_alive_after(s, *s.forced_next_president);
        s.forced_next_president.reset();
    } else if (s.presidency_resume_seat) {
        s.president = next_alive_after(s, *s.presidency_resume_seat);
        s.presidency_resume_seat.reset();
    } else {
        s.president = next_alive_after(s, s.president);
    }
    s.round += 1;
    s.nominee.reset();
    s.chancellor.reset();
    s.votes.assign(s.seats.size(), std::nullopt);
    s.president_hand.clear();
    s.chancellor_hand.clear();
    s.pending_power.reset();
    s.veto_requested = false;
    s.veto_refused = false;
    s.discussion.reset();
    s.phase = Phase::nomination;
    log_line(s, "Round " + std::to_string(s.round) + " begins. " + s.name_of(s.president) +
                    " is president.");
}

void enter_discussion(GameState& s, DiscussionState::Slot slot) {
    DiscussionState d;
    d.slot = slot;
    d.cycles_left = s.config.discussion_rounds;
    d.order = alive_seats(s);
    shuffle_vec(d.order, s.rng);
    d.next = 0;
    s.discussion = d;
    s.phase = Phase::discussion;
}

void enter_vote(GameState& s) {
    s.votes.assign(s.seats.size(), std::nullopt);
    s.phase = Phase::vote;
}

// Called when the governmental part of a round is over (after an enactment,
// an executive power, or an accepted veto without chaos).
void finish_government(GameState& s) {
    if (s.outcome) return;
    if (s.config.discussion_rounds > 0) {
        enter_discussion(s, DiscussionState::Slot::post_enact);
    } else {
        end_round(s);
    }
}

void enact_policy(GameState& s, Policy policy, bool by_government) {
    if (policy == Policy::liberal)
        s.liberal_policies += 1;
    else
        s.fascist_policies += 1;
    s.election_tracker = 0;
    log_line(s, "A " + to_string(policy) + " policy was enacted (liberal " +
                    std::to_string(s.liberal_policies) + ", fascist " +
                    std::to_string(s.fascist_policies) + ").");
    if (!by_government) {
        // Chaos enactment: the country forgets its term limits and no
        // presidential power is granted.
        s.last_government.reset();
    }
    if (s.liberal_policies >= 5) {
        finish_game(s, OutcomeKind::five_liberal_policies, "Five liberal policies are enacted.");
        return;
    }
    if (s.fascist_policies >= 6) {
        finish_game(s, OutcomeKind::six_fascist_policies, "Six fascist policies are enacted.");
        return;
    }
    if (by_government && policy == Policy::fascist) {
        auto it = roadmap_of(s).find(s.fascist_policies);
        if (it != roadmap_of(s).end()) {
            s.pending_power = it->second;
            if (std::find(s.unlocked_powers.begin(), s.unlocked_powers.end(), it->second) ==
                s.unlocked_powers.end())
                s.unlocked_powers.push_back(it->second);
            log_line(s, "The president receives the " + to_string(it->second) + " power.");
            if (it->second == Power::policy_peek) {
                ensure_pile(s, 3);
                PolicyPeek peek;
                peek.round = s.round;
                peek.president = s.president;
                for (int i = 0; i < 3; ++i) peek.cards[i] = s.deck.draw_pile[i];
                s.peeks.push_back(peek);
            }
            s.phase = Phase::executive;
            return;
        }
    }
    finish_government(s);
}

void chaos_policy(GameState& s) {
    log_line(s, "Three governments failed in a row: the top policy is enacted automatically.");
    ensure_pile(s, 1);
    Policy top = s.deck.draw_pile.front();
    s.deck.draw_pile.erase(s.deck.draw_pile.begin());
    enact_policy(s, top, /*by_government=*/false);
}

void advance_tracker(GameState& s) {
    s.election_tracker += 1;
    log_line(s, "The election tracker advances to " + std::to_string(s.election_tracker) + ".");
    if (s.election_tracker >= 3) {
        chaos_policy(s);
        if (!s.outcome) finish_government(s);
    } else {
        end_round(s);
    }
}

void resolve_election(GameState& s) {
    int ja = 0, nein = 0;
    std::string detail;
    for (const auto& seat : s.seats) {
        if (!seat.alive) continue;
        bool v = s.votes[seat.seat].value();
        (v ? ja : nein) += 1;
        if (!detail.empty()) detail += ", ";
        detail += seat.name + (v ? ": ja" : ": nein");
    }
    log_line(s, "Votes on the government " + s.name_of(s.president) + " / " +
                    s.name_of(*s.nominee) + ": " + std::to_string(ja) + " ja, " +
                    std::to_string(nein) + " nein (" + detail + ").");
    if (ja > nein) {
        s.election_tracker = 0;
        s.chancellor = s.nominee;
        s.last_government = std::make_pair(s.president, *s.nominee);
        log_line(s, "The government was elected.");
        if (s.fascist_policies >= 3 && s.seats[*s.chancellor].role == Role::hitler) {
            finish_game(s, OutcomeKind::hitler_elected_chancellor,
                        s.name_of(*s.chancellor) +
                            " was Hitler and became chancellor after three fascist policies.");
            return;
        }
        ensure_pile(s, 3);
        s.president_hand.assign(s.deck.draw_pile.begin(), s.deck.draw_pile.begin() + 3);
        s.deck.draw_pile.erase(s.deck.draw_pile.begin(), s.deck.draw_pile.begin() + 3);
        log_line(s, "The president draws three policies.");
        s.phase = Phase::legislative_president;
    } else {
        log_line(s, "The election failed.");
        advance_tracker(s);
    }
}

bool chancellor_term_limited(const GameState& s, int candidate) {
    if (!s.last_government) return false;
    if (candidate == s.last_government->second) return true;
    // With five or fewer players alive only the last chancellor is barred.
    if (s.alive_count() > 5 && candidate == s.last_government->first) return true;
    return false;
}

[[noreturn]] void violate(const std::string& rule) { throw RuleViolation(rule); }

void require_phase(const GameState& s, Phase expected, const char* what) {
    if (s.phase != expected)
        violate(std::string(what) + " is only legal in the " + to_string(expected) +
                " phase (current phase: " + to_string(s.phase) + ")");
}

void require_actor(int seat, int expected, const GameState& s, const char* role_name) {
    if (seat != expected)
        violate("only the " + std::string(role_name) + " (" + s.name_of(expected) +
                ") may take this action");
}

} // namespace

GameState new_game(const GameConfig& config_in) {
    GameConfig config = config_in;
    if (config.power_roadmap.empty())
        config.power_roadmap = default_power_roadmap(config.n_players);
    if (config.player_names.empty())
        config.player_names = default_player_names(config.n_players);
    validate(config);

    GameState s;
    s.config = config;
    s.rng.seed(config.seed);

    const int n = config.n_players;
    const RoleDistribution dist = role_distribution(n);

    std::vector<Role> roles;
    if (config.setup) {
        roles = config.setup->roles;
    } else {
        roles.insert(roles.end(), dist.liberals, Role::liberal);
        roles.insert(roles.end(), dist.fascists, Role::fascist);
        roles.push_back(Role::hitler);
        shuffle_vec(roles, s.rng);
    }

    s.seats.resize(n);
    for (int i = 0; i < n; ++i) {
        s.seats[i].seat = i;
        s.seats[i].name = config.player_names[i];
        s.seats[i].role = roles[i];
    }

    // Fascists learn every fascist-party seat and which one is Hitler; Hitler
    // learns the fascists only in small (5-6 player) games.
    int hitler = s.hitler_seat();
    for (auto& seat : s.seats) {
        if (seat.role == Role::fascist) {
            for (const auto& other : s.seats)
                if (other.seat != seat.seat && party_of(other.role) == Party::fascist)
                    seat.known_teammates.insert(other.seat);
            seat.known_hitler = hitler;
        } else if (seat.role == Role::hitler && dist.hitler_informed) {
            for (const auto& other : s.seats)
                if (other.seat != seat.seat && other.role == Role::fascist)
                    seat.known_teammates.insert(other.seat);
            seat.known_hitler = seat.seat;
        }
    }

    if (config.setup) {
        s.deck.draw_pile = config.setup->deck;
    } else {
        s.deck.draw_pile.insert(s.deck.draw_pile.end(), 6, Policy::liberal);
        s.deck.draw_pile.insert(s.deck.draw_pile.end(), 11, Policy::fascist);
        shuffle_vec(s.deck.draw_pile, s.rng);
    }

    s.president = config.setup ? config.setup->first_president
                               : static_cast<int>(bounded(s.rng, n));
    s.votes.assign(n, std::nullopt);
    s.phase = Phase::nomination;
    s.round = 0;
    log_line(s, "Roles are dealt to " + std::to_string(n) + " players.");
    return s;
}

std::vector<int> eligible_chancellors(const GameState& s) {
    std::vector<int> out;
    for (const auto& seat : s.seats) {
        if (!seat.alive || seat.seat == s.president) continue;
        if (chancellor_term_limited(s, seat.seat)) continue;
        out.push_back(seat.seat);
    }
    return out;
}

std::vector<Action> legal_actions(const GameState& s, int seat) {
    std::vector<Action> out;
    if (s.phase == Phase::game_over || !s.is_alive(seat)) return out;

    switch (s.phase) {
    case Phase::nomination:
        if (seat == s.president)
            for (int c : eligible_chancellors(s)) out.push_back(Action::nominate(c));
        break;
    case Phase::discussion:
        if (s.discussion && s.discussion->next < s.discussion->order.size() &&
            s.discussion->order[s.discussion->next] == seat)
            out.push_back(Action::chat(""));
        break;
    case Phase::vote:
        if (!s.votes[seat]) {
            out.push_back(Action::vote(true));
            out.push_back(Action::vote(false));
        }
        break;
    case Phase::legislative_president:
        if (seat == s.president)
            for (int i = 0; i < 3; ++i) out.push_back(Action::president_discard(i));
        break;
    case Phase::legislative_chancellor:
        if (s.veto_requested) {
            if (seat == s.president) {
                out.push_back(Action::veto_consent(true));
                out.push_back(Action::veto_consent(false));
            }
        } else if (seat == s.chancellor.value_or(-1)) {
            for (int i = 0; i < 2; ++i) out.push_back(Action::chancellor_enact(i));
            if (s.fascist_policies == 5 && !s.veto_refused)
                out.push_back(Action::veto_request());
        }
        break;
    case Phase::executive:
        if (seat == s.president && s.pending_power) {
            switch (*s.pending_power) {
            case Power::policy_peek:
                out.push_back(Action::policy_peek_ack());
                break;
            case Power::investigate:
                for (const auto& t : s.seats)
                    if (t.alive && t.seat != seat && !t.investigated)
                        out.push_back(Action::investigate(t.seat));
                break;
            case Power::special_election:
                for (const auto& t : s.seats)
                    if (t.alive && t.seat != seat)
                        out.push_back(Action::special_election(t.seat));
                break;
            case Power::execution:
                for (const auto& t : s.seats)
                    if (t.alive && t.seat != seat) out.push_back(Action::execute(t.seat));
                break;
            }
        }
        break;
    case Phase::game_over:
        break;
    }
    return out;
}

bool is_legal(const GameState& s, int seat, const Action& action) {
    if (action.kind == ActionKind::chat)
        return s.phase != Phase::game_over && s.is_alive(seat);
    auto legal = legal_actions(s, seat);
    return std::find(legal.begin(), legal.end(), action) != legal.end();
}

void apply_in_place(GameState& s, int seat, const Action& action) {
    if (s.phase == Phase::game_over) violate("the game is over; no further actions are legal");
    if (!s.is_alive(seat)) violate("dead players may not act");
    if (s.round == 0) {
        s.round = 1;
        log_line(s, "Round 1 begins. " + s.name_of(s.president) + " is president.");
    }

    switch (action.kind) {
    case ActionKind::chat: {
        s.chat.push_back(ChatEntry{s.round, seat, action.text});
        if (s.phase == Phase::discussion && s.discussion &&
            s.discussion->next < s.discussion->order.size() &&
            s.discussion->order[s.discussion->next] == seat) {
            s.discussion->next += 1;
            if (s.discussion->next >= s.discussion->order.size()) {
                s.discussion->cycles_left -= 1;
                if (s.discussion->cycles_left > 0) {
                    s.discussion->order = alive_seats(s);
                    shuffle_vec(s.discussion->order, s.rng);
                    s.discussion->next = 0;
                } else {
                    auto slot = s.discussion->slot;
                    s.discussion.reset();
                    if (slot == DiscussionState::Slot::pre_vote)
                        enter_vote(s);
                    else
                        end_round(s);
                }
            }
        }
        break;
    }
    case ActionKind::nominate: {
        require_phase(s, Phase::nomination, "nomination");
        require_actor(seat, s.president, s, "president");
        if (!s.is_alive(action.target)) violate("the nominee must be alive");
        if (action.target == s.president) violate("the president may not nominate themselves");
        if (chancellor_term_limited(s, action.target))
            violate("the nominee is term-limited (served in the last elected government)");
        s.nominee = action.target;
        log_line(s, s.name_of(seat) + " nominated " + s.name_of(action.target) +
                        " for chancellor.");
        if (s.config.discussion_rounds > 0)
            enter_discussion(s, DiscussionState::Slot::pre_vote);
        else
            enter_vote(s);
        break;
    }
    case ActionKind::vote: {
        require_phase(s, Phase::vote, "voting");
        if (s.votes[seat]) violate("this player already voted in this election");
        s.votes[seat] = action.ja;
        bool all = true;
        for (const auto& st : s.seats)
            if (st.alive && !s.votes[st.seat]) all = false;
        if (all) resolve_election(s);
        break;
    }
    case ActionKind::president_discard: {
        require_phase(s, Phase::legislative_president, "discarding");
        require_actor(seat, s.president, s, "president");
        if (action.card_index < 0 || action.card_index >= 3)
            violate("the president discards one of the three drawn cards (index 0..2)");
        s.deck.discard_pile.push_back(s.president_hand[action.card_index]);
        s.chancellor_hand.clear();
        for (int i = 0; i < 3; ++i)
            if (i != action.card_index) s.chancellor_hand.push_back(s.president_hand[i]);
        s.president_hand.clear();
        s.phase = Phase::legislative_chancellor;
        log_line(s, "The president passed two policies to the chancellor.");
        break;
    }
    case ActionKind::chancellor_enact: {
        require_phase(s, Phase::legislative_chancellor, "enacting");
        require_actor(seat, s.chancellor.value_or(-1), s, "chancellor");
        if (s.veto_requested) violate("a veto is pending the president's decision");
        if (action.card_index < 0 || action.card_index >= 2)
            violate("the chancellor enacts one of the two received cards (index 0..1)");
        Policy enacted = s.chancellor_hand[action.card_index];
        s.deck.discard_pile.push_back(s.chancellor_hand[1 - action.card_index]);
        s.chancellor_hand.clear();
        enact_policy(s, enacted, /*by_government=*/true);
        break;
    }
    case ActionKind::veto_request: {
        require_phase(s, Phase::legislative_chancellor, "requesting a veto");
        require_actor(seat, s.chancellor.value_or(-1), s, "chancellor");
        if (s.fascist_policies != 5) violate("veto power unlocks once five fascist policies are enacted");
        if (s.veto_refused) violate("the president already rejected a veto this session");
        if (s.veto_requested) violate("a veto request is already pending");
        s.veto_requested = true;
        log_line(s, "The chancellor requested to veto the agenda.");
        break;
    }
    case ActionKind::veto_consent: {
        require_phase(s, Phase::legislative_chancellor, "deciding a veto");
        require_actor(seat, s.president, s, "president");
        if (!s.veto_requested) violate("no veto request is pending");
        s.veto_requested = false;
        if (action.accept) {
            s.deck.discard_pile.insert(s.deck.discard_pile.end(), s.chancellor_hand.begin(),
                                       s.chancellor_hand.end());
            s.chancellor_hand.clear();
            log_line(s, "The president agreed to the veto; the agenda is discarded.");
            advance_tracker(s);
        } else {
            s.veto_refused = true;
            log_line(s, "The president rejected the veto; the chancellor must enact a policy.");
        }
        break;
    }
    case ActionKind::policy_peek_ack: {
        require_phase(s, Phase::executive, "using a power");
        require_actor(seat, s.president, s, "president");
        if (s.pending_power != Power::policy_peek) violate("no policy peek is pending");
        log_line(s, "The president examined the top three policies.");
        s.pending_power.reset();
        finish_government(s);
        break;
    }
    case ActionKind::investigate: {
        require_phase(s, Phase::executive, "using a power");
        require_actor(seat, s.president, s, "president");
        if (s.pending_power != Power::investigate) violate("no investigation is pending");
        if (!s.is_alive(action.target)) violate("only living players can be investigated");
        if (action.target == seat) violate("the president may not investigate themselves");
        if (s.seats[action.target].investigated)
            violate("a player may only be investigated once per game");
        s.seats[action.target].investigated = true;
        s.investigations.push_back(Investigation{s.round, seat, action.target,
                                                 party_of(s.seats[action.target].role)});
        log_line(s, s.name_of(seat) + " investigated " + s.name_of(action.target) +
                        "'s party membership.");
        s.pending_power.reset();
        finish_government(s);
        break;
    }
    case ActionKind::special_election: {
        require_phase(s, Phase::executive, "using a power");
        require_actor(seat, s.president, s, "president");
        if (s.pending_power != Power::special_election) violate("no special election is pending");
        if (!s.is_alive(action.target)) violate("the chosen president must be alive");
        if (action.target == seat) violate("the president may not choose themselves");
        s.forced_next_president = action.target;
        if (!s.presidency_resume_seat) s.presidency_resume_seat = seat;
        log_line(s, s.name_of(seat) + " called a special election: " + s.name_of(action.target) +
                        " will be the next president.");
        s.pending_power.reset();
        finish_government(s);
        break;
    }
    case ActionKind::execute: {
        require_phase(s, Phase::executive, "using a power");
        require_actor(seat, s.president, s, "president");
        if (s.pending_power != Power::execution) violate("no execution is pending");
        if (!s.is_alive(action.target)) violate("the target is already dead");
        if (action.target == seat) violate("the president may not execute themselves");
        s.seats[action.target].alive = false;
        log_line(s, s.name_of(seat) + " executed " + s.name_of(action.target) + ".");
        s.pending_power.reset();
        if (s.seats[action.target].role == Role::hitler) {
            finish_game(s, OutcomeKind::hitler_killed,
                        s.name_of(action.target) + " was Hitler.");
        } else {
            log_line(s, s.name_of(action.target) + " was not Hitler.");
            finish_government(s);
        }
        break;
    }
    }
}

GameState apply(const GameState& state, int seat, const Action& action) {
    GameState next = state;
    apply_in_place(next, seat, action);
    return next;
}

std::optional<Outcome> check_outcome(const GameState& s) {
    if (s.liberal_policies >= 5) return make_outcome(OutcomeKind::five_liberal_policies);
    if (s.fascist_policies >= 6) return make_outcome(OutcomeKind::six_fascist_policies);
    int hitler = s.hitler_seat();
    if (hitler >= 0 && !s.seats[hitler].alive) return make_outcome(OutcomeKind::hitler_killed);
    if (s.chancellor && s.fascist_policies >= 3 && s.seats[*s.chancellor].role == Role::hitler)
        return make_outcome(OutcomeKind::hitler_elected_chancellor);
    return std::nullopt;
}

bool cards_conserved(const GameState& s) {
    int lib = s.deck.liberal_remaining() + s.liberal_policies;
    int fas = s.deck.fascist_remaining() + s.fascist_policies;
    int held_lib = 0, held_fas = 0;
    for (Policy p : s.president_hand) (p == Policy::liberal ? held_lib : held_fas) += 1;
    for (Policy p : s.chancellor_hand) (p == Policy::liberal ? held_lib : held_fas) += 1;
    return lib + held_lib == 6 && fas + held_fas == 11;
}

} // namespace shsim
