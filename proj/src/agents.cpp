#include "shsim/agents.hpp"

#include <algorithm>
#include <cmath>

namespace shsim {

namespace {

bool fascist_party(Role r) { return party_of(r) == Party::fascist; }

// Uniform double in [0,1) with 53 bits, portable across standard libraries.
double unit_draw(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t weighted_pick(const std::vector<double>& weights, Rng& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    double x = unit_draw(rng) * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        x -= weights[i];
        if (x < 0) return i;
    }
    return weights.size() - 1;
}

// Fascist-party membership as far as the viewer can tell: itself plus the
// teammates the rules revealed to it.
bool known_fascist_to(const AgentView& view, int seat) {
    if (seat == view.own_seat) return fascist_party(view.own_role);
    return view.known_teammates.count(seat) > 0;
}

// Party knowledge from own investigations, if any.
std::optional<Party> investigated_party(const AgentView& view, int seat) {
    const std::string needle = "You investigated " + view.name_of(seat);
    for (const auto& line : view.private_intel) {
        if (line.rfind(needle, 0) != 0) continue;
        if (line.find("liberal party") != std::string::npos) return Party::liberal;
        if (line.find("fascist party") != std::string::npos) return Party::fascist;
    }
    return std::nullopt;
}

int lowest_target(const std::vector<Action>& options,
                  const std::function<bool(int)>& prefer) {
    int best = -1;
    for (const auto& a : options)
        if (prefer(a.target) && (best < 0 || a.target < best)) best = a.target;
    return best;
}

Action pick_target_or_first(const std::vector<Action>& options,
                            const std::vector<std::function<bool(int)>>& preferences) {
    for (const auto& prefer : preferences) {
        int t = lowest_target(options, prefer);
        if (t >= 0)
            for (const auto& a : options)
                if (a.target == t) return a;
    }
    return options.front();
}

} // namespace

Action random_decide(const AgentView& view, Rng& rng) {
    if (view.legal.empty()) throw std::invalid_argument("random_decide needs legal actions");
    return view.legal[bounded(rng, view.legal.size())];
}

Action rule_decide(const AgentView& view) {
    bool fallback = false;
    return rule_decide_ex(view, &fallback);
}

Action rule_decide_ex(const AgentView& view, bool* used_fallback) {
    *used_fallback = false;
    if (view.legal.empty()) throw std::invalid_argument("rule_decide needs legal actions");
    const auto& legal = view.legal;
    const bool is_fascist_party = fascist_party(view.own_role);

    switch (legal.front().kind) {
    case ActionKind::nominate: {
        if (view.own_role == Role::fascist && view.summary.fascist_policies >= 3 &&
            view.known_hitler) {
            for (const auto& a : legal)
                if (a.target == *view.known_hitler) return a; // hitler is eligible
        }
        if (view.own_role == Role::fascist) {
            // Otherwise prefer a teammate, then anyone.
            return pick_target_or_first(
                legal, {[&](int t) { return view.known_teammates.count(t) > 0; },
                        [](int) { return true; }});
        }
        // Liberals (and Hitler acting liberal) lean on their own investigations.
        return pick_target_or_first(
            legal, {[&](int t) { return investigated_party(view, t) == Party::liberal; },
                    [&](int t) { return investigated_party(view, t) != Party::fascist; },
                    [](int) { return true; }});
    }
    case ActionKind::vote: {
        bool ja;
        if (!is_fascist_party) {
            ja = true; // liberals consistently vote yes
        } else {
            int president = view.summary.president;
            int nominee = view.summary.nominee.value_or(-1);
            ja = known_fascist_to(view, president) ||
                 (nominee >= 0 && known_fascist_to(view, nominee));
        }
        for (const auto& a : legal)
            if (a.ja == ja) return a;
        break;
    }
    case ActionKind::president_discard: {
        // Liberals bury a fascist card; fascist-party presidents bury liberal.
        Policy unwanted = is_fascist_party ? Policy::liberal : Policy::fascist;
        for (int i = 0; i < static_cast<int>(view.hand.size()); ++i)
            if (view.hand[i] == unwanted)
                for (const auto& a : legal)
                    if (a.card_index == i) return a;
        return legal.front();
    }
    case ActionKind::chancellor_enact:
    case ActionKind::veto_request: {
        Policy wanted = is_fascist_party ? Policy::fascist : Policy::liberal;
        for (int i = 0; i < static_cast<int>(view.hand.size()); ++i)
            if (view.hand[i] == wanted)
                for (const auto& a : legal)
                    if (a.kind == ActionKind::chancellor_enact && a.card_index == i) return a;
        // Forced to enact off-party: request the veto when available.
        for (const auto& a : legal)
            if (a.kind == ActionKind::veto_request) return a;
        for (const auto& a : legal)
            if (a.kind == ActionKind::chancellor_enact) return a;
        break;
    }
    case ActionKind::veto_consent: {
        // A vetoing chancellor usually holds cards the enacting side hates.
        bool accept = !is_fascist_party;
        for (const auto& a : legal)
            if (a.accept == accept) return a;
        break;
    }
    case ActionKind::policy_peek_ack:
        return legal.front();
    case ActionKind::investigate:
        return pick_target_or_first(legal,
                                    {[&](int t) { return !known_fascist_to(view, t); },
                                     [](int) { return true; }});
    case ActionKind::execute: {
        if (is_fascist_party)
            return pick_target_or_first(legal,
                                        {[&](int t) { return !known_fascist_to(view, t); },
                                         [](int) { return true; }});
        return pick_target_or_first(
            legal, {[&](int t) { return investigated_party(view, t) == Party::fascist; },
                    [&](int t) { return investigated_party(view, t) != Party::liberal; },
                    [](int) { return true; }});
    }
    case ActionKind::special_election: {
        if (is_fascist_party)
            return pick_target_or_first(legal,
                                        {[&](int t) { return known_fascist_to(view, t); },
                                         [](int) { return true; }});
        return pick_target_or_first(
            legal, {[&](int t) { return investigated_party(view, t) == Party::liberal; },
                    [](int) { return true; }});
    }
    case ActionKind::chat:
        return legal.front();
    }
    *used_fallback = true;
    return legal.front();
}

double ReputationTable::get(int seat) const {
    auto it = scores.find(seat);
    return it == scores.end() ? 0.0 : it->second;
}

void ReputationTable::add(int seat, double delta) {
    double v = get(seat) + delta;
    scores[seat] = std::clamp(v, -5.0, 5.0);
}

ReputationTable reputation_update(ReputationTable table, const PublicEvent& event) {
    if (event.kind != PublicEvent::Kind::policy_enacted) return table;
    if (!event.policy || !event.president || !event.chancellor) return table; // chaos
    double direction = *event.policy == Policy::liberal ? 1.0 : -1.0;
    table.add(*event.chancellor, direction * 1.0);
    table.add(*event.president, direction * 0.5);
    return table;
}

namespace {

double cooperative_weight(double reputation) { return std::exp2(reputation / 2.5); }

} // namespace

Action reputation_decide(const AgentView& view, const ReputationTable& table, Rng& rng) {
    if (view.legal.empty())
        throw std::invalid_argument("reputation_decide needs legal actions");
    const auto& legal = view.legal;
    if (legal.size() == 1) return legal.front();
    const bool is_fascist_party = fascist_party(view.own_role);

    switch (legal.front().kind) {
    case ActionKind::nominate:
    case ActionKind::special_election: {
        std::vector<double> weights;
        for (const auto& a : legal) weights.push_back(cooperative_weight(table.get(a.target)));
        return legal[weighted_pick(weights, rng)];
    }
    case ActionKind::vote: {
        double rep = table.get(view.summary.president);
        int n = 1;
        if (view.summary.nominee) {
            rep += table.get(*view.summary.nominee);
            n = 2;
        }
        double mean = rep / n;
        std::vector<double> weights;
        for (const auto& a : legal)
            weights.push_back(a.ja ? cooperative_weight(mean) : cooperative_weight(-mean));
        return legal[weighted_pick(weights, rng)];
    }
    case ActionKind::investigate:
    case ActionKind::execute: {
        // Liberals go after low-reputation seats; fascist-party agents mirror.
        std::vector<double> weights;
        for (const auto& a : legal) {
            double rep = table.get(a.target);
            weights.push_back(cooperative_weight(is_fascist_party ? rep : -rep));
        }
        return legal[weighted_pick(weights, rng)];
    }
    default:
        // Legislative choices and the veto follow the deterministic party line.
        return rule_decide(view);
    }
}

Guess RuleAgent::believe(const AgentView& view, int target) {
    if (view.known_teammates.count(target))
        return view.known_hitler == target ? Guess::hitler : Guess::fascist;
    return Guess::unknown;
}

Guess ReputationAgent::believe(const AgentView& view, int target) {
    if (view.known_teammates.count(target))
        return view.known_hitler == target ? Guess::hitler : Guess::fascist;
    double rep = table_.get(target);
    if (rep >= 2.0) return Guess::liberal;
    if (rep <= -2.0) return Guess::fascist;
    return Guess::unknown;
}

Action ScriptedAgent::decide(const AgentView& view) {
    if (decide_fn_) return decide_fn_(view);
    while (!actions_.empty()) {
        Action a = actions_.front();
        actions_.pop_front();
        for (const auto& legal : view.legal)
            if (legal == a) return a;
        // Skip scripted actions that are not legal here.
    }
    return view.legal.front();
}

std::string ScriptedAgent::chat(const AgentView&) {
    if (chats_.empty()) return "";
    std::string text = chats_.front();
    chats_.pop_front();
    return text;
}

Guess ScriptedAgent::believe(const AgentView& view, int target) {
    if (believe_fn_) return believe_fn_(view, target);
    if (guesses_.empty()) return Guess::unknown;
    Guess g = guesses_.front();
    guesses_.pop_front();
    return g;
}

} // namespace shsim
