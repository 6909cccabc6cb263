#include "shsim/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shsim::eval {

std::pair<int, int> EvalInput::hitler_belief_tally() const {
    int lib = 0, fas = 0;
    for (const auto& [pair, guess] : beliefs) {
        if (pair.second != hitler_seat) continue;
        if (guess == Guess::liberal)
            ++lib;
        else if (guess == Guess::fascist || guess == Guess::hitler)
            ++fas;
    }
    return {lib, fas};
}

double policy_progress_score(int l, int f) {
    double lp = l / 5.0;
    double fp = f / 6.0;
    return std::tanh(1.2 * (lp - fp) * (1.0 + 2.0 * std::max(lp, fp)));
}

std::optional<double> deck_composition_score(int deck_l, int deck_f) {
    int total = deck_l + deck_f;
    if (total <= 0) return std::nullopt;
    double bias = static_cast<double>(deck_l - deck_f) / total;
    double size_factor = 0.6 + 0.4 * std::min(1.0, total / 17.0);
    return std::tanh(1.2 * bias * size_factor);
}

double power_weight(Power p) {
    switch (p) {
    case Power::execution: return 0.85;
    case Power::investigate: return 0.60;
    case Power::policy_peek: return 0.35;
    default: return 0.0;
    }
}

std::optional<double> president_score(const std::vector<Power>& unlocked, Party president_party) {
    if (unlocked.empty()) return std::nullopt;
    double sum = 0.3;
    for (Power p : unlocked) sum += power_weight(p);
    double sign = president_party == Party::liberal ? 1.0 : -1.0;
    return std::tanh(sign * sum);
}

double role_guess_score(Guess guess, Role truth) {
    if (guess == Guess::hitler && truth == Role::hitler) return 1.5;
    if (guess == Guess::fascist && truth == Role::fascist) return 1.0;
    if (guess == Guess::liberal && truth == Role::liberal) return 0.5;
    if (guess == Guess::liberal && (truth == Role::hitler || truth == Role::fascist)) return -1.0;
    if (truth == Role::liberal && (guess == Guess::fascist || guess == Guess::hitler)) return -0.5;
    return -0.3;
}

std::optional<double> role_accuracy_score(const std::map<std::pair<int, int>, Guess>& beliefs,
                                          const std::map<int, Role>& truths) {
    double sum = 0.0;
    int n = 0;
    for (const auto& [pair, guess] : beliefs) {
        auto truth = truths.find(pair.second);
        if (truth == truths.end()) continue;
        sum += role_guess_score(guess, truth->second);
        ++n;
    }
    if (n == 0) return std::nullopt;
    return std::tanh(sum / n);
}

double hitler_danger_score(int f, int believers_liberal, int believers_fascist) {
    if (f < 3) return 0.0;
    double base;
    if (believers_liberal < believers_fascist)
        base = 0.5;
    else if (believers_liberal == believers_fascist)
        base = -0.3;
    else
        base = -1.0;
    return std::tanh(base * std::min(2.0, f / 3.0));
}

ComponentScores component_scores(const EvalInput& in) {
    ComponentScores out;
    out.policy = policy_progress_score(in.liberal_policies, in.fascist_policies);
    out.deck = deck_composition_score(in.deck_liberal, in.deck_fascist);
    if (in.president_party)
        out.president = president_score(in.unlocked_powers, *in.president_party);
    out.role_acc = role_accuracy_score(in.beliefs, in.truths);
    auto [lib, fas] = in.hitler_belief_tally();
    out.danger = hitler_danger_score(in.fascist_policies, lib, fas);
    return out;
}

double gamestate_from_components(const ComponentScores& c, const PhaseWeights& w, int round) {
    double active_weight = w.policy + w.danger;
    if (c.deck) active_weight += w.deck;
    if (c.president) active_weight += w.president;
    if (c.role_acc) active_weight += w.role_acc;

    double s = w.policy / active_weight * c.policy + w.danger / active_weight * c.danger;
    if (c.deck) s += w.deck / active_weight * *c.deck;
    if (c.president) s += w.president / active_weight * *c.president;
    if (c.role_acc) s += w.role_acc / active_weight * *c.role_acc;

    double confidence = (std::tanh(round / 5.0) + 1.2) / 2.0;
    return std::tanh(s * confidence);
}

double gamestate(const EvalInput& input, const PhaseWeights& weights) {
    return gamestate_from_components(component_scores(input), weights, input.round);
}

std::string score_band(double score) {
    double a = std::fabs(score);
    if (a <= 0.25) return "equal";
    if (a <= 0.4) return "slight";
    if (a <= 0.6) return "moderate";
    return "decisive";
}

std::map<Role, double> gsir(const std::vector<std::pair<Role, double>>& deltas) {
    if (deltas.empty()) throw std::invalid_argument("gsir needs at least one delta");
    std::map<Role, double> sums;
    std::map<Role, int> counts;
    for (const auto& [role, delta] : deltas) {
        double d = party_of(role) == Party::fascist ? -delta : delta;
        sums[role] += d;
        counts[role] += 1;
    }
    std::map<Role, double> out;
    for (const auto& [role, sum] : sums) out[role] = sum / counts[role];
    return out;
}

} // namespace shsim::eval
