#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shsim/types.hpp"

namespace shsim::eval {

// Everything the game-state score needs, decoupled from the engine so
// positions can also be evaluated from serialized documents.
struct EvalInput {
    int liberal_policies = 0;            // l, 0..5
    int fascist_policies = 0;            // f, 0..6
    int deck_liberal = 0;                // remaining liberal cards (pile + discard)
    int deck_fascist = 0;                // remaining fascist cards
    std::optional<Party> president_party;
    std::vector<Power> unlocked_powers;  // P
    // Latest guesses by liberal observers about other seats: (observer, target) -> guess.
    std::map<std::pair<int, int>, Guess> beliefs;
    std::map<int, Role> truths;          // target seat -> true role
    int hitler_seat = -1;
    int round = 0;

    // Liberal observers currently guessing Hitler's seat liberal (L) vs
    // fascist-party (F); "unknown" counts toward neither.
    std::pair<int, int> hitler_belief_tally() const;
};

// One weight per component; weights of inactive components are redistributed
// proportionally across the active ones.
struct PhaseWeights {
    double policy = 0.35;
    double deck = 0.20;
    double president = 0.15;
    double role_acc = 0.15;
    double danger = 0.15;
};

struct ComponentScores {
    double policy = 0.0;
    std::optional<double> deck;     // inactive on an empty deck
    std::optional<double> president; // inactive without unlocked powers
    std::optional<double> role_acc;  // inactive without any guesses
    double danger = 0.0;
};

// Progress ratio of both tracks with an urgency multiplier near victory.
double policy_progress_score(int liberal_policies, int fascist_policies);

// Balance of the remaining deck, weighted up for larger (more predictive) decks.
// nullopt when the deck is empty (component inactive).
std::optional<double> deck_composition_score(int deck_liberal, int deck_fascist);

// Unlocked powers signed by the sitting president's party; inactive when no
// power is unlocked.
std::optional<double> president_score(const std::vector<Power>& unlocked, Party president_party);
double power_weight(Power p);

// Per-guess score of a liberal observer's belief against the truth.
double role_guess_score(Guess guess, Role truth);

// tanh of the mean guess score over all (liberal observer, target) pairs;
// inactive when no guesses exist.
std::optional<double> role_accuracy_score(const std::map<std::pair<int, int>, Guess>& beliefs,
                                          const std::map<int, Role>& truths);

// Imminent fascist-win risk: zero below three fascist policies, then driven by
// how liberal observers currently read Hitler.
double hitler_danger_score(int fascist_policies, int believers_liberal, int believers_fascist);

ComponentScores component_scores(const EvalInput& input);

// Weighted combination of the active components, scaled by the
// round-dependent confidence factor. Always in (-1, 1).
double gamestate(const EvalInput& input, const PhaseWeights& weights = {});
double gamestate_from_components(const ComponentScores& scores, const PhaseWeights& weights,
                                 int round);

// Interpretation bands: equal (<=0.25), slight (0.25..0.4], moderate
// (0.4..0.6], decisive (>0.6), on the absolute score.
std::string score_band(double score);

// Mean per-role change in the evaluation caused by a player's actions.
// Fascist-party deltas are sign-inverted so positive always means beneficial.
// Throws std::invalid_argument on empty input.
std::map<Role, double> gsir(const std::vector<std::pair<Role, double>>& deltas);

} // namespace shsim::eval
