#include "shsim/metrics.hpp"

#include <algorithm>

#include "shsim/engine.hpp"
#include "shsim/view.hpp"

namespace shsim::metrics {

RoundBucket bucket_of(int round) {
    if (round <= 3) return RoundBucket::early;
    if (round <= 7) return RoundBucket::mid;
    return RoundBucket::late;
}

std::string to_string(RoundBucket bucket) {
    switch (bucket) {
    case RoundBucket::early: return "early";
    case RoundBucket::mid: return "mid";
    case RoundBucket::late: return "late";
    }
    return "?";
}

bool seat_matches(const GameRecord& record, int seat, const MetricFilter& filter) {
    if (seat < 0 || seat >= static_cast<int>(record.roles.size())) return false;
    if (filter.role && record.roles[seat] != *filter.role) return false;
    if (filter.affiliation && party_of(record.roles[seat]) != *filter.affiliation) return false;
    if (filter.agent_kind) {
        if (seat >= static_cast<int>(record.seats.size())) return false;
        if (record.seats[seat].agent_kind != *filter.agent_kind) return false;
    }
    if (filter.elo_min) {
        if (seat >= static_cast<int>(record.seats.size())) return false;
        if (!record.seats[seat].elo || *record.seats[seat].elo < *filter.elo_min) return false;
    }
    return true;
}

std::vector<const GameRecord*> filter_records(const RecordSet& set, const MetricFilter& filter) {
    std::vector<const GameRecord*> out;
    for (const auto& record : set.records) {
        for (int seat = 0; seat < static_cast<int>(record.roles.size()); ++seat)
            if (seat_matches(record, seat, filter)) {
                out.push_back(&record);
                break;
            }
    }
    return out;
}

double win_rate(const RecordSet& set, const MetricFilter& filter) {
    long long n = 0, wins = 0;
    for (const auto& record : set.records) {
        if (!record.outcome) continue;
        for (int seat = 0; seat < static_cast<int>(record.roles.size()); ++seat) {
            if (!seat_matches(record, seat, filter)) continue;
            ++n;
            if (record.outcome->winner == party_of(record.roles[seat])) ++wins;
        }
    }
    if (n == 0) throw MetricError("win_rate: no seats match the filter");
    return static_cast<double>(wins) / static_cast<double>(n);
}

double avg_game_length(const RecordSet& set) {
    if (set.records.empty()) throw MetricError("avg_game_length: empty record set");
    double sum = 0.0;
    for (const auto& record : set.records) sum += record.final_round();
    return sum / static_cast<double>(set.records.size());
}

std::vector<CurvePoint> policy_progression(const RecordSet& set, Policy policy,
                                           int support_threshold) {
    if (set.records.empty()) throw MetricError("policy_progression: empty record set");
    if (support_threshold < 1) support_threshold = 1;
    int max_round = 0;
    for (const auto& record : set.records) max_round = std::max(max_round, record.final_round());

    std::vector<CurvePoint> curve;
    for (int t = 1; t <= max_round; ++t) {
        int reached = 0;
        double sum = 0.0;
        for (const auto& record : set.records) {
            if (record.final_round() < t) continue;
            ++reached;
            int cumulative = 0;
            for (const auto& enactment : record.policy_timeline)
                if (enactment.policy == policy && enactment.round <= t) ++cumulative;
            sum += cumulative;
        }
        if (reached < support_threshold) break;
        curve.push_back({t, sum / reached, reached});
    }
    return curve;
}

namespace {

bool guess_correct(Guess guess, Role truth) {
    switch (guess) {
    case Guess::liberal: return truth == Role::liberal;
    case Guess::fascist: return truth == Role::fascist;
    case Guess::hitler: return truth == Role::hitler;
    case Guess::unknown: return false; // never correct
    }
    return false;
}

} // namespace

double ria(const std::vector<probes::BeliefRecord>& beliefs) {
    if (beliefs.empty()) throw MetricError("ria: no beliefs");
    long long correct = 0;
    for (const auto& b : beliefs)
        if (guess_correct(b.guess, b.truth)) ++correct;
    return static_cast<double>(correct) / static_cast<double>(beliefs.size());
}

RiaResult ria(const RecordSet& set, const MetricFilter& filter) {
    RiaResult out;
    std::map<Role, long long> correct_by_role;
    long long correct = 0;
    for (const auto& record : set.records) {
        for (const auto& b : record.beliefs) {
            if (!seat_matches(record, b.observer, filter)) continue;
            out.n += 1;
            out.n_by_target_role[b.truth] += 1;
            if (guess_correct(b.guess, b.truth)) {
                ++correct;
                ++correct_by_role[b.truth];
            }
        }
    }
    if (out.n == 0) throw MetricError("ria: no beliefs match the filter");
    out.overall = static_cast<double>(correct) / out.n;
    for (const auto& [role, n] : out.n_by_target_role)
        out.by_target_role[role] = static_cast<double>(correct_by_role[role]) / n;
    return out;
}

DrrResult drr(const RecordSet& set, const MetricFilter& filter, int support_threshold) {
    DrrResult out;
    if (support_threshold < 1) support_threshold = 1;
    double sum = 0.0;
    std::map<int, std::pair<double, int>> per_round;
    for (const auto& record : set.records) {
        for (const auto& d : record.deceptions) {
            if (!seat_matches(record, d.target, filter)) continue;
            out.n += 1;
            sum += d.score;
            auto& [round_sum, round_n] = per_round[d.round];
            round_sum += d.score;
            round_n += 1;
        }
    }
    if (out.n == 0) throw MetricError("drr: no assessments match the filter");
    out.overall = sum / out.n;
    for (const auto& [round, acc] : per_round) {
        if (acc.second < support_threshold) continue;
        out.curve.push_back({round, acc.first / acc.second, acc.second});
    }
    return out;
}

double yes_rate(const RecordSet& set, std::optional<RoundBucket> bucket,
                const MetricFilter& filter) {
    long long ja = 0, total = 0;
    for (const auto& record : set.records) {
        for (const auto& event : record.events) {
            if (event.action.kind != ActionKind::vote) continue;
            if (bucket && bucket_of(event.round) != *bucket) continue;
            if (!seat_matches(record, event.actor, filter)) continue;
            ++total;
            if (event.action.ja) ++ja;
        }
    }
    if (total == 0) throw MetricError("yes_rate: no votes match the filter");
    return static_cast<double>(ja) / static_cast<double>(total);
}

std::map<OutcomeKind, double> ending_distribution(const RecordSet& set) {
    std::map<OutcomeKind, long long> counts{{OutcomeKind::five_liberal_policies, 0},
                                            {OutcomeKind::hitler_killed, 0},
                                            {OutcomeKind::six_fascist_policies, 0},
                                            {OutcomeKind::hitler_elected_chancellor, 0}};
    long long n = 0;
    for (const auto& record : set.records) {
        if (!record.outcome) continue;
        ++n;
        counts[record.outcome->kind] += 1;
    }
    if (n == 0) throw MetricError("ending_distribution: no terminal records");
    std::map<OutcomeKind, double> out;
    for (const auto& [kind, count] : counts)
        out[kind] = static_cast<double>(count) / static_cast<double>(n);
    return out;
}

namespace {

bool is_single_actor_decision(ActionKind kind) {
    switch (kind) {
    case ActionKind::nominate:
    case ActionKind::president_discard:
    case ActionKind::chancellor_enact:
    case ActionKind::investigate:
    case ActionKind::execute:
    case ActionKind::special_election:
    case ActionKind::policy_peek_ack:
    case ActionKind::veto_request:
    case ActionKind::veto_consent:
        return true;
    case ActionKind::vote: // simultaneous, not attributable to one seat
    case ActionKind::chat:
        return false;
    }
    return false;
}

} // namespace

std::map<Role, double> gsir(const RecordSet& set, const MetricFilter& filter) {
    std::vector<std::pair<Role, double>> deltas;
    for (const auto& record : set.records) {
        const auto& samples = record.gamestate_scores;
        if (samples.size() < 2) continue;
        for (std::size_t i = 0; i < record.events.size(); ++i) {
            const auto& event = record.events[i];
            if (!is_single_actor_decision(event.action.kind)) continue;
            if (!seat_matches(record, event.actor, filter)) continue;
            // Bounding samples: last taken at or before this event, first
            // taken after it.
            const GamestateSample* before = nullptr;
            const GamestateSample* after = nullptr;
            for (const auto& sample : samples) {
                if (sample.event_index <= i) before = &sample;
                if (sample.event_index > i) {
                    after = &sample;
                    break;
                }
            }
            if (!before || !after) continue;
            deltas.emplace_back(record.roles[event.actor], after->score - before->score);
        }
    }
    if (deltas.empty()) throw MetricError("gsir: no scored decisions match the filter");
    return eval::gsir(deltas);
}

ScenarioAlignment scenario_alignment(const std::vector<storage::Scenario>& scenarios,
                                     Agent& agent) {
    ScenarioAlignment out;
    long long exact = 0, role_match = 0, affiliation_match = 0;
    long long role_vote_pairs = 0, role_vote_agree = 0;
    long long affiliation_vote_pairs = 0, affiliation_vote_agree = 0;

    for (const auto& scenario : scenarios) {
        GameState state;
        try {
            state = storage::scenario_state(scenario);
        } catch (const std::exception&) {
            out.n_skipped += 1;
            continue;
        }
        if (state.phase != Phase::nomination || state.president != scenario.president) {
            out.n_skipped += 1;
            continue;
        }

        AgentView view = make_view(state, state.president);
        if (view.legal.empty()) {
            out.n_skipped += 1;
            continue;
        }
        Action nomination = agent.decide(view);
        if (nomination.kind != ActionKind::nominate) {
            out.n_skipped += 1;
            continue;
        }
        out.n_scenarios += 1;

        int model_pick = nomination.target;
        Role model_role = scenario.roles[model_pick];
        Role expert_role = scenario.expert_nominee_role;
        bool same_exact = model_pick == scenario.expert_nominee;
        bool same_role = model_role == expert_role;
        bool same_affiliation = party_of(model_role) == party_of(expert_role);
        if (same_exact) ++exact;
        if (same_role) ++role_match;
        if (same_affiliation) ++affiliation_match;

        if (!same_role && !same_affiliation) continue;

        // Put the model's nomination on the table and let the agent vote from
        // every seat that has an expert ballot on record.
        GameState voting = apply(state, state.president, nomination);
        if (voting.phase == Phase::discussion) {
            // Skip discussion turns; the agent votes on the proposal itself.
            while (voting.phase == Phase::discussion) {
                int speaker = voting.discussion->order[voting.discussion->next];
                apply_in_place(voting, speaker, Action::chat(""));
            }
        }
        if (voting.phase != Phase::vote) continue;
        for (const auto& [seat, expert_vote] : scenario.expert_votes) {
            if (!voting.is_alive(seat)) continue;
            AgentView voter_view = make_view(voting, seat);
            if (voter_view.legal.empty()) continue;
            Action ballot = agent.decide(voter_view);
            if (ballot.kind != ActionKind::vote) continue;
            bool agrees = ballot.ja == expert_vote;
            if (same_role) {
                ++role_vote_pairs;
                if (agrees) ++role_vote_agree;
            }
            if (same_affiliation) {
                ++affiliation_vote_pairs;
                if (agrees) ++affiliation_vote_agree;
            }
        }
        if (same_role) out.n_role_matching += 1;
        if (same_affiliation) out.n_affiliation_matching += 1;
    }

    if (out.n_scenarios > 0) {
        out.same_exact = static_cast<double>(exact) / out.n_scenarios;
        out.same_role = static_cast<double>(role_match) / out.n_scenarios;
        out.same_affiliation = static_cast<double>(affiliation_match) / out.n_scenarios;
    }
    if (role_vote_pairs > 0)
        out.vote_agreement_same_role =
            static_cast<double>(role_vote_agree) / static_cast<double>(role_vote_pairs);
    if (affiliation_vote_pairs > 0)
        out.vote_agreement_same_affiliation = static_cast<double>(affiliation_vote_agree) /
                                              static_cast<double>(affiliation_vote_pairs);
    return out;
}

namespace {

std::string group_of(const GameRecord& record, int speaker, GroupBy group_by) {
    switch (group_by) {
    case GroupBy::role: return to_string(record.roles[speaker]);
    case GroupBy::affiliation: return to_string(party_of(record.roles[speaker]));
    case GroupBy::outcome:
        if (!record.outcome) return "unfinished";
        return record.outcome->winner == party_of(record.roles[speaker]) ? "won" : "lost";
    case GroupBy::agent:
        return speaker < static_cast<int>(record.seats.size())
                   ? record.seats[speaker].agent_kind
                   : "unknown";
    }
    return "?";
}

} // namespace

std::vector<std::vector<double>> PersuasionUsage::counts_matrix() const {
    std::vector<std::vector<double>> matrix;
    for (const auto& [group, by_category] : counts) {
        (void)by_category;
        std::vector<double> row;
        for (const auto& category : categories) {
            auto it = counts.at(group).find(category);
            row.push_back(it == counts.at(group).end() ? 0.0 : it->second);
        }
        matrix.push_back(std::move(row));
    }
    return matrix;
}

std::vector<std::string> PersuasionUsage::groups() const {
    std::vector<std::string> out;
    for (const auto& [group, by_category] : counts) {
        (void)by_category;
        out.push_back(group);
    }
    return out;
}

PersuasionUsage persuasion_usage(const std::vector<annotation::MessageAnnotation>& annotations,
                                 const RecordSet& set, GroupBy group_by, bool normalize,
                                 const std::vector<std::string>& categories) {
    PersuasionUsage out;
    out.categories = categories;

    std::map<std::string, const GameRecord*> by_id;
    for (const auto& record : set.records) by_id[record.game_id] = &record;

    for (const auto& a : annotations) {
        auto it = by_id.find(a.game_id);
        if (it == by_id.end() || a.speaker < 0 ||
            a.speaker >= static_cast<int>(it->second->roles.size())) {
            out.dropped_unjoinable += 1;
            continue;
        }
        std::string group = group_of(*it->second, a.speaker, group_by);
        out.counts.try_emplace(group); // empty-label messages still shape the group set
        for (const auto& label : a.labels) out.counts[group][label] += 1;
    }

    // Group occurrences: one per (record, seat) whose seat falls in the group.
    for (const auto& record : set.records)
        for (int seat = 0; seat < static_cast<int>(record.roles.size()); ++seat)
            out.group_occurrences[group_of(record, seat, group_by)] += 1;

    for (const auto& [group, by_category] : out.counts) {
        for (const auto& category : categories) {
            auto it = by_category.find(category);
            double count = it == by_category.end() ? 0.0 : it->second;
            double denom = 1.0;
            if (normalize) {
                auto occ = out.group_occurrences.find(group);
                denom = occ != out.group_occurrences.end() && occ->second > 0 ? occ->second : 1.0;
            }
            out.rate[group][category] = count / denom;
        }
    }
    return out;
}

} // namespace shsim::metrics
