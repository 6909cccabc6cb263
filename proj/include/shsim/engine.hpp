#pragma once

#include <optional>
#include <vector>

#include "shsim/state.hpp"

namespace shsim {

// Builds the opening state: roles dealt, deck shuffled (6 liberal + 11
// fascist), opening president chosen, fascists informed of their teammates.
// All randomness derives from config.seed unless config.setup pins it.
GameState new_game(const GameConfig& config);

// Legal moves for `seat`. Empty for dead seats and seats that are not on turn;
// never empty for the seat(s) whose turn it is while the game is live.
std::vector<Action> legal_actions(const GameState& state, int seat);

// True if `action` by `seat` would be accepted by apply().
bool is_legal(const GameState& state, int seat, const Action& action);

// Applies one action and returns the successor state. Throws RuleViolation
// naming the violated rule for illegal actions. Handles every side effect:
// election resolution, the election tracker and chaos policies, deck
// reshuffles, power unlocks, veto handling, executions, and outcome checks.
GameState apply(const GameState& state, int seat, const Action& action);
void apply_in_place(GameState& state, int seat, const Action& action);

// Passive terminal check: five liberal policies, six fascist policies, Hitler
// dead, or Hitler holding the chancellorship after three fascist policies.
std::optional<Outcome> check_outcome(const GameState& state);

// Seats currently eligible for nomination as chancellor.
std::vector<int> eligible_chancellors(const GameState& state);

// Card conservation: liberal cards in pile+discard+enacted == 6 and fascist
// == 11. Exposed for tests and import validation.
bool cards_conserved(const GameState& state);

} // namespace shsim
