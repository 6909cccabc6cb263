#include "doctest.h"

#include <algorithm>
#include <set>

#include "shsim/engine.hpp"

using namespace shsim;

namespace {

GameConfig cfg(int n_players, std::uint64_t seed, int discussion_rounds = 0) {
    GameConfig c;
    c.n_players = n_players;
    c.seed = seed;
    c.discussion_rounds = discussion_rounds;
    return c;
}

// Plays every alive seat's vote, the president's choice first in seat order.
void cast_votes(GameState& s, bool ja) {
    for (const auto& seat : s.seats)
        if (seat.alive && s.phase == Phase::vote) apply_in_place(s, seat.seat, Action::vote(ja));
}

int first_eligible(const GameState& s) {
    auto legal = legal_actions(s, s.president);
    REQUIRE(!legal.empty());
    return legal.front().target;
}

// Drives one fully approved election: nomination of the first eligible seat,
// then unanimous ja.
void elect_government(GameState& s) {
    REQUIRE(s.phase == Phase::nomination);
    apply_in_place(s, s.president, Action::nominate(first_eligible(s)));
    cast_votes(s, true);
}

} // namespace

TEST_CASE("role_distribution matches the official table") {
    CHECK(role_distribution(5) == RoleDistribution{3, 1, true});
    CHECK(role_distribution(6) == RoleDistribution{4, 1, true});
    CHECK(role_distribution(7) == RoleDistribution{4, 2, false});
    CHECK(role_distribution(8) == RoleDistribution{5, 2, false});
    CHECK(role_distribution(9) == RoleDistribution{5, 3, false});
    CHECK(role_distribution(10) == RoleDistribution{6, 3, false});
    CHECK_THROWS_AS(role_distribution(4), std::invalid_argument);
    CHECK_THROWS_AS(role_distribution(11), std::invalid_argument);
}

TEST_CASE("new_game deals the 5-player role multiset and a 6/11 deck") {
    auto s = new_game(cfg(5, 42));
    int lib = 0, fas = 0, hit = 0;
    for (const auto& seat : s.seats) {
        if (seat.role == Role::liberal) ++lib;
        if (seat.role == Role::fascist) ++fas;
        if (seat.role == Role::hitler) ++hit;
    }
    CHECK(lib == 3);
    CHECK(fas == 1);
    CHECK(hit == 1);
    CHECK(s.deck.liberal_remaining() == 6);
    CHECK(s.deck.fascist_remaining() == 11);
    CHECK(s.round == 0);
    CHECK(s.phase == Phase::nomination);
    CHECK(cards_conserved(s));
}

TEST_CASE("new_game is deterministic for a fixed config") {
    auto a = new_game(cfg(7, 1234));
    auto b = new_game(cfg(7, 1234));
    CHECK(state_digest(a) == state_digest(b));
    for (int i = 0; i < 7; ++i) CHECK(a.seats[i].role == b.seats[i].role);
    CHECK(a.president == b.president);
    CHECK(a.deck.draw_pile == b.deck.draw_pile);
}

TEST_CASE("teammate knowledge follows the player count") {
    auto small = new_game(cfg(5, 7));
    for (const auto& seat : small.seats) {
        if (seat.role == Role::liberal) CHECK(seat.known_teammates.empty());
        if (seat.role == Role::fascist) CHECK(!seat.known_teammates.empty());
        if (seat.role == Role::hitler) CHECK(!seat.known_teammates.empty()); // informed at 5
    }
    auto big = new_game(cfg(7, 7));
    for (const auto& seat : big.seats) {
        if (seat.role == Role::hitler) CHECK(seat.known_teammates.empty()); // uninformed at 7
        if (seat.role == Role::fascist) {
            CHECK(seat.known_teammates.size() == 2); // the other fascist + hitler
            CHECK(seat.known_hitler.has_value());
        }
    }
}

TEST_CASE("vote phase offers ja and nein to every alive seat, nothing to the dead") {
    auto s = new_game(cfg(5, 3));
    apply_in_place(s, s.president, Action::nominate(first_eligible(s)));
    CHECK(s.phase == Phase::vote);
    for (const auto& seat : s.seats) {
        auto legal = legal_actions(s, seat.seat);
        REQUIRE(legal.size() == 2);
        CHECK(legal[0] == Action::vote(true));
        CHECK(legal[1] == Action::vote(false));
    }
    int bystander = (s.president + 1) % 5;
    s.seats[bystander].alive = false;
    CHECK(legal_actions(s, bystander).empty());
}

TEST_CASE("nomination excludes self, the dead, and the term-limited") {
    // 5 players, one executed, last government on record: with four alive the
    // five-player relaxation applies and only the last chancellor is barred.
    auto s = new_game(cfg(5, 11));
    s.seats[4].alive = false;
    s.president = 0;
    s.last_government = std::make_pair(1, 2);
    auto legal = legal_actions(s, 0);
    std::set<int> candidates;
    for (const auto& a : legal) candidates.insert(a.target);
    CHECK(candidates == std::set<int>{1, 3}); // excludes self (0), dead (4), last chancellor (2)

    // Exactly five alive still counts as the small-game relaxation, so the
    // last president stays eligible in a fresh 5-player game.
    auto t = new_game(cfg(5, 11));
    t.president = 0;
    t.last_government = std::make_pair(1, 2);
    auto legal5 = legal_actions(t, 0);
    std::set<int> candidates5;
    for (const auto& a : legal5) candidates5.insert(a.target);
    CHECK(candidates5 == std::set<int>{1, 3, 4});

    // More than five alive: both members of the last government are barred.
    auto u = new_game(cfg(7, 11));
    u.president = 0;
    u.last_government = std::make_pair(1, 2);
    auto legal7 = legal_actions(u, 0);
    std::set<int> candidates7;
    for (const auto& a : legal7) candidates7.insert(a.target);
    CHECK(candidates7 == std::set<int>{3, 4, 5, 6});
}

TEST_CASE("three consecutive failed elections enact the top policy automatically") {
    auto s = new_game(cfg(5, 99));
    Policy top_after_two_rounds = Policy::liberal; // captured before the chaos round
    for (int fail = 0; fail < 3; ++fail) {
        REQUIRE(s.phase == Phase::nomination);
        if (fail == 2) top_after_two_rounds = s.deck.draw_pile.front();
        apply_in_place(s, s.president, Action::nominate(first_eligible(s)));
        cast_votes(s, false);
    }
    CHECK(s.liberal_policies + s.fascist_policies == 1);
    CHECK(s.election_tracker == 0);
    CHECK(!s.last_government.has_value());
    CHECK(!s.pending_power.has_value());
    if (top_after_two_rounds == Policy::liberal)
        CHECK(s.liberal_policies == 1);
    else
        CHECK(s.fascist_policies == 1);
    CHECK(cards_conserved(s));
}

TEST_CASE("a tie vote fails the election") {
    auto s = new_game(cfg(5, 17));
    s.seats[(s.president + 2) % 5].alive = false; // four alive
    apply_in_place(s, s.president, Action::nominate(first_eligible(s)));
    int voted = 0;
    for (const auto& seat : s.seats) {
        if (!seat.alive) continue;
        apply_in_place(s, seat.seat, Action::vote(voted < 2));
        ++voted;
    }
    CHECK(s.election_tracker == 1);
    CHECK(!s.chancellor.has_value());
}

TEST_CASE("a draw with two cards in the pile reshuffles the discard first") {
    auto s = new_game(cfg(5, 5));
    // Move all but two cards into the discard pile.
    while (s.deck.draw_pile.size() > 2) {
        s.deck.discard_pile.push_back(s.deck.draw_pile.back());
        s.deck.draw_pile.pop_back();
    }
    elect_government(s);
    REQUIRE(s.phase == Phase::legislative_president);
    CHECK(s.president_hand.size() == 3);
    CHECK(cards_conserved(s));
    bool reshuffled = false;
    for (const auto& e : s.log)
        if (e.text.find("reshuffled") != std::string::npos) reshuffled = true;
    CHECK(reshuffled);
}

TEST_CASE("electing Hitler as chancellor after three fascist policies ends the game") {
    auto s = new_game(cfg(5, 23));
    s.fascist_policies = 3;
    int hitler = s.hitler_seat();
    if (s.president == hitler) s.president = (hitler + 1) % 5;
    apply_in_place(s, s.president, Action::nominate(hitler));
    cast_votes(s, true);
    REQUIRE(s.outcome.has_value());
    CHECK(s.outcome->kind == OutcomeKind::hitler_elected_chancellor);
    CHECK(s.outcome->winner == Party::fascist);
    CHECK(s.phase == Phase::game_over);
    CHECK(legal_actions(s, s.president).empty());
}

TEST_CASE("electing Hitler before three fascist policies is safe") {
    auto s = new_game(cfg(5, 23));
    s.fascist_policies = 2;
    int hitler = s.hitler_seat();
    if (s.president == hitler) s.president = (hitler + 1) % 5;
    apply_in_place(s, s.president, Action::nominate(hitler));
    cast_votes(s, true);
    CHECK(!s.outcome.has_value());
    CHECK(s.phase == Phase::legislative_president);
}

TEST_CASE("check_outcome covers the policy and hitler conditions") {
    auto s = new_game(cfg(5, 31));
    CHECK(!check_outcome(s).has_value());
    s.liberal_policies = 4;
    s.fascist_policies = 5;
    CHECK(!check_outcome(s).has_value()); // hitler alive, no election
    s.liberal_policies = 5;
    REQUIRE(check_outcome(s).has_value());
    CHECK(check_outcome(s)->kind == OutcomeKind::five_liberal_policies);
    s.liberal_policies = 4;
    s.fascist_policies = 6;
    CHECK(check_outcome(s)->kind == OutcomeKind::six_fascist_policies);
    s.fascist_policies = 5;
    s.seats[s.hitler_seat()].alive = false;
    CHECK(check_outcome(s)->kind == OutcomeKind::hitler_killed);
}

TEST_CASE("illegal actions are rejected with the violated rule") {
    auto s = new_game(cfg(5, 37));
    int not_president = (s.president + 1) % 5;
    CHECK_THROWS_WITH_AS(apply(s, not_president, Action::nominate(s.president)),
                         doctest::Contains("only the president"), RuleViolation);
    CHECK_THROWS_WITH_AS(apply(s, s.president, Action::nominate(s.president)),
                         doctest::Contains("may not nominate themselves"), RuleViolation);
    CHECK_THROWS_WITH_AS(apply(s, s.president, Action::vote(true)),
                         doctest::Contains("vote"), RuleViolation);
    s.seats[not_president].alive = false;
    CHECK_THROWS_WITH_AS(apply(s, not_president, Action::chat("hi")),
                         doctest::Contains("dead players"), RuleViolation);
}

TEST_CASE("veto flow: request, rejection forces enactment, acceptance advances tracker") {
    auto make_veto_state = [](int tracker) {
        auto s = new_game(cfg(5, 41));
        s.fascist_policies = 5; // veto unlocked
        // Keep conservation intact: 5 enacted fascists + hand of two.
        s.deck.draw_pile.assign(6, Policy::liberal);
        s.deck.draw_pile.insert(s.deck.draw_pile.end(), 4, Policy::fascist);
        s.deck.discard_pile.clear();
        s.election_tracker = tracker;
        s.chancellor = (s.president + 1) % 5;
        s.last_government = std::make_pair(s.president, *s.chancellor);
        s.chancellor_hand = {Policy::fascist, Policy::fascist};
        s.phase = Phase::legislative_chancellor;
        return s;
    };

    SUBCASE("rejected veto keeps the chancellor on the hook") {
        auto s = make_veto_state(0);
        auto legal = legal_actions(s, *s.chancellor);
        CHECK(std::find(legal.begin(), legal.end(), Action::veto_request()) != legal.end());
        apply_in_place(s, *s.chancellor, Action::veto_request());
        REQUIRE(s.veto_requested);
        CHECK(legal_actions(s, *s.chancellor).empty());
        apply_in_place(s, s.president, Action::veto_consent(false));
        auto after = legal_actions(s, *s.chancellor);
        CHECK(std::find(after.begin(), after.end(), Action::veto_request()) == after.end());
        apply_in_place(s, *s.chancellor, Action::chancellor_enact(0));
        CHECK(s.fascist_policies == 6);
        CHECK(s.outcome->kind == OutcomeKind::six_fascist_policies);
    }

    SUBCASE("accepted veto discards the agenda and advances the tracker") {
        auto s = make_veto_state(0);
        int chancellor = *s.chancellor;
        apply_in_place(s, chancellor, Action::veto_request());
        apply_in_place(s, s.president, Action::veto_consent(true));
        CHECK(s.fascist_policies == 5);
        CHECK(s.election_tracker == 1);
        CHECK(s.phase == Phase::nomination); // next round
        CHECK(cards_conserved(s));
    }

    SUBCASE("accepted veto at tracker two triggers chaos") {
        auto s = make_veto_state(2);
        apply_in_place(s, *s.chancellor, Action::veto_request());
        apply_in_place(s, s.president, Action::veto_consent(true));
        CHECK(s.election_tracker == 0);
        CHECK(s.liberal_policies + s.fascist_policies == 6);
    }
}

TEST_CASE("investigation is limited to once per target and stays private") {
    auto s = new_game(cfg(7, 51));
    s.pending_power = Power::investigate;
    s.phase = Phase::executive;
    int target = (s.president + 1) % 7;
    apply_in_place(s, s.president, Action::investigate(target));
    REQUIRE(s.investigations.size() == 1);
    CHECK(s.investigations[0].party == party_of(s.seats[target].role));
    // Public log mentions the investigation but not the result.
    bool mentions_party = false;
    for (const auto& e : s.log)
        if (e.text.find("investigated") != std::string::npos &&
            (e.text.find("is liberal") != std::string::npos ||
             e.text.find("is fascist") != std::string::npos))
            mentions_party = true;
    CHECK(!mentions_party);

    s.pending_power = Power::investigate;
    s.phase = Phase::executive;
    s.president = (target + 1) % 7; // the presidency rotated; pin another seat
    auto legal = legal_actions(s, s.president);
    for (const auto& a : legal) CHECK(a.target != target);
    CHECK_THROWS_WITH_AS(apply(s, s.president, Action::investigate(target)),
                         doctest::Contains("once"), RuleViolation);
}

TEST_CASE("special election hands the presidency over and then resumes rotation") {
    auto s = new_game(cfg(7, 53));
    s.president = 2;
    s.phase = Phase::executive;
    s.pending_power = Power::special_election;
    apply_in_place(s, 2, Action::special_election(6));
    CHECK(s.president == 6);
    REQUIRE(s.phase == Phase::nomination);
    // Complete the special round with a failed election; rotation resumes
    // after seat 2, not after seat 6.
    apply_in_place(s, 6, Action::nominate(first_eligible(s)));
    cast_votes(s, false);
    CHECK(s.president == 3);
}

TEST_CASE("execution kills the seat and executing hitler ends the game") {
    auto s = new_game(cfg(5, 59));
    s.phase = Phase::executive;
    s.pending_power = Power::execution;
    int hitler = s.hitler_seat();
    if (s.president == hitler) {
        s.president = (hitler + 1) % 5;
    }
    apply_in_place(s, s.president, Action::execute(hitler));
    CHECK(!s.seats[hitler].alive);
    REQUIRE(s.outcome.has_value());
    CHECK(s.outcome->kind == OutcomeKind::hitler_killed);
    CHECK(s.outcome->winner == Party::liberal);
}

TEST_CASE("discussion collects one message per alive seat in randomized order") {
    auto s = new_game(cfg(5, 61, /*discussion_rounds=*/1));
    apply_in_place(s, s.president, Action::nominate(first_eligible(s)));
    REQUIRE(s.phase == Phase::discussion);
    std::set<int> speakers;
    for (int i = 0; i < 5; ++i) {
        int speaker = -1;
        for (const auto& seat : s.seats)
            if (!legal_actions(s, seat.seat).empty()) speaker = seat.seat;
        REQUIRE(speaker >= 0);
        speakers.insert(speaker);
        apply_in_place(s, speaker, Action::chat("message " + std::to_string(i)));
    }
    CHECK(speakers.size() == 5);
    CHECK(s.chat.size() == 5);
    CHECK(s.phase == Phase::vote);
}

TEST_CASE("round counter starts at zero and advances per presidency") {
    auto s = new_game(cfg(5, 67));
    CHECK(s.round == 0);
    apply_in_place(s, s.president, Action::nominate(first_eligible(s)));
    CHECK(s.round == 1);
    cast_votes(s, false);
    CHECK(s.round == 2);
    CHECK(s.phase == Phase::nomination);
}

TEST_CASE("random play: conservation, termination, outcome exclusivity, legality closure") {
    Rng test_rng(2024);
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto s = new_game(cfg(5 + static_cast<int>(seed % 6), seed, seed % 2 ? 1 : 0));
        int applied = 0;
        while (!s.outcome && applied < 5000) {
            std::vector<std::pair<int, Action>> options;
            for (const auto& seat : s.seats)
                for (auto& a : legal_actions(s, seat.seat)) {
                    if (a.kind == ActionKind::chat) a.text = "chatter";
                    options.emplace_back(seat.seat, a);
                }
            REQUIRE(!options.empty());
            const auto& [seat, action] = options[bounded(test_rng, options.size())];
            apply_in_place(s, seat, action);
            ++applied;
            REQUIRE(cards_conserved(s));
            REQUIRE(s.liberal_policies <= 5);
            REQUIRE(s.fascist_policies <= 6);
        }
        REQUIRE(s.outcome.has_value());
        CHECK(s.round <= 64);
        CHECK((s.outcome->winner == Party::liberal || s.outcome->winner == Party::fascist));
        // Exactly one terminal condition holds.
        int conditions = 0;
        if (s.liberal_policies >= 5) ++conditions;
        if (s.fascist_policies >= 6) ++conditions;
        if (!s.seats[s.hitler_seat()].alive) ++conditions;
        if (s.outcome->kind == OutcomeKind::hitler_elected_chancellor) ++conditions;
        CHECK(conditions == 1);
    }
}

TEST_CASE("identical seeds and scripts replay to identical states") {
    auto play = [](std::uint64_t seed) {
        auto s = new_game(cfg(5, seed, 1));
        Rng script(7);
        while (!s.outcome) {
            std::vector<std::pair<int, Action>> options;
            for (const auto& seat : s.seats)
                for (auto& a : legal_actions(s, seat.seat)) {
                    if (a.kind == ActionKind::chat) a.text = "scripted line";
                    options.emplace_back(seat.seat, a);
                }
            const auto& [seat, action] = options[bounded(script, options.size())];
            apply_in_place(s, seat, action);
        }
        return state_digest(s);
    };
    CHECK(play(404) == play(404));
}
