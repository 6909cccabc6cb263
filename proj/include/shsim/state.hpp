#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "shsim/action.hpp"
#include "shsim/config.hpp"
#include "shsim/rng.hpp"
#include "shsim/types.hpp"

namespace shsim {

struct PolicyDeck {
    std::vector<Policy> draw_pile; // index 0 = top
    std::vector<Policy> discard_pile;

    int liberal_remaining() const;
    int fascist_remaining() const;
};

struct SeatState {
    int seat = 0;
    std::string name;
    Role role = Role::liberal;
    bool alive = true;
    std::set<int> known_teammates;   // fascist-party seats known per the rules
    std::optional<int> known_hitler; // which teammate is Hitler, when known
    bool investigated = false;       // a player may only be investigated once
};

// One public log line; these render into the agents' prompt window.
struct LogEvent {
    int round = 0;
    std::string text;

    bool operator==(const LogEvent&) const = default;
};

struct ChatEntry {
    int round = 0;
    int speaker = 0;
    std::string text;

    bool operator==(const ChatEntry&) const = default;
};

// Private knowledge gained through powers; visible only to the acting seat.
struct Investigation {
    int round = 0;
    int investigator = 0;
    int target = 0;
    Party party = Party::liberal;
};

struct PolicyPeek {
    int round = 0;
    int president = 0;
    std::array<Policy, 3> cards{};
};

struct DiscussionState {
    enum class Slot { pre_vote, post_enact };
    Slot slot = Slot::pre_vote;
    std::vector<int> order; // randomized speaking order, one entry per alive seat
    std::size_t next = 0;
    int cycles_left = 1;
};

// Complete authoritative game situation. All engine randomness flows through
// `rng`, which is advanced only by new_game/apply so that replaying a recorded
// action sequence reproduces every state bit-for-bit.
struct GameState {
    GameConfig config;

    int round = 0; // 0 before play; bumps to 1 with the first applied action
    int liberal_policies = 0;
    int fascist_policies = 0;
    int election_tracker = 0;

    int president = 0;
    std::optional<int> nominee;
    std::optional<int> chancellor; // seat of the sitting elected chancellor
    std::optional<std::pair<int, int>> last_government; // (president, chancellor)

    std::vector<Power> unlocked_powers; // insertion-ordered, duplicate-free
    Phase phase = Phase::nomination;

    PolicyDeck deck;
    std::vector<SeatState> seats;
    std::vector<LogEvent> log;
    std::vector<ChatEntry> chat;
    std::optional<Outcome> outcome;

    // Phase-local bookkeeping.
    std::optional<DiscussionState> discussion;
    std::vector<std::optional<bool>> votes;
    std::vector<Policy> president_hand;
    std::vector<Policy> chancellor_hand;
    std::optional<Power> pending_power;
    bool veto_requested = false;
    bool veto_refused = false;
    std::optional<int> forced_next_president;   // set by special election
    std::optional<int> presidency_resume_seat;  // rotation anchor during a special election

    std::vector<Investigation> investigations;
    std::vector<PolicyPeek> peeks;

    Rng rng;

    int alive_count() const;
    int hitler_seat() const;
    bool is_alive(int seat) const;
    const std::string& name_of(int seat) const;
    std::vector<std::string> names() const;
};

// Stable digest of the externally visible state (not the RNG), used to verify
// replay determinism. FNV-1a over a canonical rendering.
std::uint64_t state_digest(const GameState& state);
std::string state_digest_hex(const GameState& state);

} // namespace shsim
