#include "shsim/state.hpp"

#include <algorithm>

namespace shsim {

int PolicyDeck::liberal_remaining() const {
    auto count = [](const std::vector<Policy>& v) {
        return static_cast<int>(std::count(v.begin(), v.end(), Policy::liberal));
    };
    return count(draw_pile) + count(discard_pile);
}

int PolicyDeck::fascist_remaining() const {
    auto count = [](const std::vector<Policy>& v) {
        return static_cast<int>(std::count(v.begin(), v.end(), Policy::fascist));
    };
    return count(draw_pile) + count(discard_pile);
}

int GameState::alive_count() const {
    int n = 0;
    for (const auto& s : seats)
        if (s.alive) ++n;
    return n;
}

int GameState::hitler_seat() const {
    for (const auto& s : seats)
        if (s.role == Role::hitler) return s.seat;
    return -1;
}

bool GameState::is_alive(int seat) const {
    return seat >= 0 && seat < static_cast<int>(seats.size()) && seats[seat].alive;
}

const std::string& GameState::name_of(int seat) const { return seats[seat].name; }

std::vector<std::string> GameState::names() const {
    std::vector<std::string> out;
    out.reserve(seats.size());
    for (const auto& s : seats) out.push_back(s.name);
    return out;
}

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv(std::uint64_t& h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= kFnvPrime;
    }
    h ^= 0x1f;
    h *= kFnvPrime;
}

void fnv(std::uint64_t& h, long long v) { fnv(h, std::to_string(v)); }

} // namespace

std::uint64_t state_digest(const GameState& state) {
    std::uint64_t h = kFnvOffset;
    fnv(h, state.round);
    fnv(h, state.liberal_policies);
    fnv(h, state.fascist_policies);
    fnv(h, state.election_tracker);
    fnv(h, state.president);
    fnv(h, to_string(state.phase));
    fnv(h, state.nominee.value_or(-1));
    fnv(h, state.chancellor.value_or(-1));
    fnv(h, state.last_government ? state.last_government->first : -1);
    fnv(h, state.last_government ? state.last_government->second : -1);
    for (Power p : state.unlocked_powers) fnv(h, to_string(p));
    for (Policy p : state.deck.draw_pile) fnv(h, to_string(p));
    for (Policy p : state.deck.discard_pile) fnv(h, to_string(p));
    for (const auto& s : state.seats) {
        fnv(h, s.alive ? 1 : 0);
        fnv(h, to_string(s.role));
        fnv(h, s.investigated ? 1 : 0);
    }
    for (const auto& v : state.votes) fnv(h, v ? (*v ? 1 : 0) : -1);
    for (Policy p : state.president_hand) fnv(h, to_string(p));
    for (Policy p : state.chancellor_hand) fnv(h, to_string(p));
    if (state.outcome) fnv(h, to_string(state.outcome->kind));
    fnv(h, static_cast<long long>(state.log.size()));
    for (const auto& e : state.log) fnv(h, e.text);
    fnv(h, static_cast<long long>(state.chat.size()));
    for (const auto& c : state.chat) {
        fnv(h, c.speaker);
        fnv(h, c.text);
    }
    return h;
}

std::string state_digest_hex(const GameState& state) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = state_digest(state);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

} // namespace shsim
