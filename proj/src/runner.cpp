#include "shsim/runner.hpp"

#include <tuple>

#include "shsim/probes.hpp"
#include "shsim/view.hpp"

namespace shsim {

namespace {

struct Driver {
    const std::vector<Agent*>& agents;
    const ProbeHooks& hooks;
    GameState state;
    GameRecord record;
    Rng substitution_rng;
    std::vector<std::vector<std::string>> public_actions; // per seat, for annotators
    std::tuple<int, Phase, int> last_sample_key{-1, Phase::game_over, -1};

    Driver(const std::vector<Agent*>& agents_in, const GameConfig& config,
           const ProbeHooks& hooks_in)
        : agents(agents_in),
          hooks(hooks_in),
          state(new_game(config)),
          substitution_rng(config.seed ^ 0x9e3779b97f4a7c15ull) {
        public_actions.resize(state.seats.size());
    }

    int event_round() const { return state.round == 0 ? 1 : state.round; }

    void sample_phase_if_new() {
        int slot = -1;
        if (state.discussion)
            slot = state.discussion->slot == DiscussionState::Slot::pre_vote ? 0 : 1;
        std::tuple<int, Phase, int> key{state.round, state.phase, slot};
        if (key == last_sample_key) return;
        last_sample_key = key;
        if (hooks.gamestate) {
            GamestateSample sample;
            sample.round = event_round();
            sample.phase = state.phase;
            sample.event_index = record.events.size();
            sample.score = eval::gamestate(probes::eval_input_from_state(state, record.beliefs),
                                           hooks.weights);
            record.gamestate_scores.push_back(sample);
        }
        if (hooks.on_phase) hooks.on_phase(state);
    }

    void note_public_action(int seat, const Action& action) {
        std::string line;
        switch (action.kind) {
        case ActionKind::nominate:
            line = "nominated " + state.name_of(action.target) + " for chancellor";
            break;
        case ActionKind::vote:
            line = std::string("voted ") + (action.ja ? "ja" : "nein");
            break;
        case ActionKind::president_discard:
            line = "passed two policies to the chancellor";
            break;
        case ActionKind::chancellor_enact:
            line = "enacted a policy as chancellor";
            break;
        case ActionKind::investigate:
            line = "investigated " + state.name_of(action.target);
            break;
        case ActionKind::execute:
            line = "executed " + state.name_of(action.target);
            break;
        case ActionKind::special_election:
            line = "called a special election for " + state.name_of(action.target);
            break;
        case ActionKind::veto_request:
            line = "requested a veto";
            break;
        case ActionKind::veto_consent:
            line = action.accept ? "accepted the veto" : "rejected the veto";
            break;
        case ActionKind::policy_peek_ack:
        case ActionKind::chat:
            return; // peeks are private, chat is recorded separately
        }
        public_actions[seat].push_back("round " + std::to_string(event_round()) + ": " + line);
    }

    void broadcast(const PublicEvent& event) {
        for (Agent* agent : agents) agent->observe(event);
    }

    void run_round_probes(int completed_round) {
        if (hooks.beliefs) {
            auto batch = probes::elicit_beliefs(state, agents);
            // Label with the round that just completed, not the new one.
            for (auto& belief : batch) belief.round = completed_round;
            record.beliefs.insert(record.beliefs.end(), batch.begin(), batch.end());
        }
        if (hooks.deception && hooks.deception_annotator) {
            for (const auto& seat : state.seats) {
                if (!seat.alive || party_of(seat.role) != Party::fascist) continue;
                probes::TranscriptView transcript;
                transcript.round = completed_round;
                transcript.target = seat.seat;
                transcript.player_names = state.names();
                for (const auto& e : state.log)
                    transcript.public_log.push_back("[round " + std::to_string(e.round) + "] " +
                                                    e.text);
                transcript.chat = state.chat;
                transcript.target_actions = public_actions[seat.seat];
                auto assessment = probes::assess_deception(hooks.deception_annotator, transcript,
                                                           seat.role);
                if (assessment)
                    record.deceptions.push_back(*assessment);
                else
                    record.runner_notes.push_back(
                        {completed_round, "Deception assessment for " + seat.name +
                                              " was skipped (annotator failure)."});
            }
        }
    }

    void apply_and_record(int seat, const Action& action, bool substituted) {
        const int prev_round = event_round();
        const Phase prev_phase = state.phase;
        const int prev_lib = state.liberal_policies;
        const int prev_fas = state.fascist_policies;
        const int prev_tracker = state.election_tracker;
        const bool had_chancellor = state.chancellor.has_value();
        const int prev_alive = state.alive_count();
        const int prev_president = state.president;
        const int prev_nominee = state.nominee.value_or(-1);

        apply_in_place(state, seat, action);

        RecordedEvent event;
        event.round = prev_round;
        event.phase = prev_phase;
        event.actor = seat;
        event.action = action;
        event.substituted = substituted;
        record.events.push_back(event);
        note_public_action(seat, action);

        if (!had_chancellor && state.chancellor) {
            PublicEvent e;
            e.kind = PublicEvent::Kind::government_elected;
            e.round = prev_round;
            e.president = prev_president;
            e.chancellor = *state.chancellor;
            broadcast(e);
        }
        if (state.election_tracker > prev_tracker && action.kind == ActionKind::vote) {
            PublicEvent e;
            e.kind = PublicEvent::Kind::election_failed;
            e.round = prev_round;
            e.president = prev_president;
            broadcast(e);
        }
        if (state.liberal_policies != prev_lib || state.fascist_policies != prev_fas) {
            const bool by_government = action.kind == ActionKind::chancellor_enact;
            PolicyEnactment enactment;
            enactment.round = prev_round;
            enactment.policy =
                state.liberal_policies != prev_lib ? Policy::liberal : Policy::fascist;
            enactment.by_government = by_government;
            if (by_government) {
                enactment.president = prev_president;
                enactment.chancellor = seat;
            }
            record.policy_timeline.push_back(enactment);

            PublicEvent e;
            e.kind = by_government ? PublicEvent::Kind::policy_enacted
                                   : PublicEvent::Kind::chaos_policy;
            e.round = prev_round;
            e.policy = enactment.policy;
            e.president = enactment.president;
            e.chancellor = enactment.chancellor;
            if (!by_government) {
                broadcast(e);
                e.kind = PublicEvent::Kind::policy_enacted;
                e.president.reset();
                e.chancellor.reset();
            }
            broadcast(e);
        }
        if (state.alive_count() < prev_alive) {
            PublicEvent e;
            e.kind = PublicEvent::Kind::execution;
            e.round = prev_round;
            e.president = prev_president;
            e.target = action.target;
            broadcast(e);
        }
        (void)prev_nominee;

        // A round completed while the game stays live: run the side channels.
        if (state.round > prev_round && !state.outcome && prev_round >= 1)
            run_round_probes(prev_round);
    }

    // Decision with failure containment: anything going wrong (throwing agent,
    // illegal pick) turns into a logged uniform substitution.
    void act(int seat) {
        AgentView view = make_view(state, seat);
        Action action;
        bool substituted = false;
        std::string reason;
        try {
            action = agents[seat]->decide(view);
            if (!is_legal(state, seat, action)) {
                substituted = true;
                reason = "agent returned an illegal action";
            }
        } catch (const std::exception& e) {
            substituted = true;
            reason = std::string("agent failure: ") + e.what();
        }
        if (auto note = agents[seat]->take_substitution_note()) {
            substituted = true;
            reason = *note;
        }
        if (substituted) {
            action = view.legal[bounded(substitution_rng, view.legal.size())];
            record.runner_notes.push_back({event_round(),
                                           state.name_of(seat) + " could not act (" + reason +
                                               "); a random legal action was substituted."});
        }
        apply_and_record(seat, action, substituted);
    }

    void discussion_turn() {
        int speaker = state.discussion->order[state.discussion->next];
        AgentView view = make_view(state, speaker);
        std::string text;
        try {
            text = agents[speaker]->chat(view);
        } catch (const std::exception&) {
            text = "";
        }
        if (text.empty())
            record.runner_notes.push_back({event_round(),
                                           state.name_of(speaker) +
                                               " abstained from the discussion."});
        apply_and_record(speaker, Action::chat(text), false);
    }

    void vote_phase() {
        // All alive seats decide against the same snapshot, then ballots are
        // applied in seat order.
        std::vector<int> voters;
        for (const auto& seat : state.seats)
            if (seat.alive && !state.votes[seat.seat]) voters.push_back(seat.seat);
        std::vector<std::pair<int, Action>> ballots;
        std::vector<std::pair<int, std::string>> substitutions;
        for (int seat : voters) {
            AgentView view = make_view(state, seat);
            Action action;
            bool substituted = false;
            std::string reason;
            try {
                action = agents[seat]->decide(view);
                if (action.kind != ActionKind::vote) {
                    substituted = true;
                    reason = "agent returned a non-vote in the vote phase";
                }
            } catch (const std::exception& e) {
                substituted = true;
                reason = std::string("agent failure: ") + e.what();
            }
            if (auto note = agents[seat]->take_substitution_note()) {
                substituted = true;
                reason = *note;
            }
            if (substituted) {
                action = Action::vote(bounded(substitution_rng, 2) == 0);
                substitutions.emplace_back(seat, reason);
            }
            ballots.emplace_back(seat, action);
        }
        for (const auto& [seat, reason] : substitutions)
            record.runner_notes.push_back({event_round(),
                                           state.name_of(seat) + " could not act (" + reason +
                                               "); a random legal action was substituted."});
        for (const auto& [seat, action] : ballots) {
            bool was_substituted = false;
            for (const auto& [s, r] : substitutions)
                if (s == seat) was_substituted = true;
            apply_and_record(seat, action, was_substituted);
        }
    }

    GameRecord run(const GameConfig& config, const RunMeta& meta) {
        record.game_id = meta.game_id.empty() ? "game-" + std::to_string(config.seed)
                                              : meta.game_id;
        record.config = state.config; // defaults filled in by new_game
        record.probes_config.gamestate = hooks.gamestate;
        record.probes_config.beliefs = hooks.beliefs;
        record.probes_config.deception = hooks.deception;
        for (const auto& seat : state.seats) record.roles.push_back(seat.role);
        record.first_president = state.president;
        if (meta.seats.empty()) {
            for (const auto& seat : state.seats) {
                SeatDescriptor d;
                d.name = seat.name;
                d.agent_kind = agents[seat.seat]->kind();
                record.seats.push_back(d);
            }
        } else {
            record.seats = meta.seats;
        }

        while (!state.outcome) {
            if (hooks.should_abort && hooks.should_abort()) {
                record.truncation = "aborted";
                record.runner_notes.push_back(
                    {state.round, "Session aborted before the game finished."});
                break;
            }
            if (state.round > state.config.max_rounds) {
                record.truncation = "max_rounds_exceeded";
                record.runner_notes.push_back({state.round,
                                               "Engine error: the round limit was exceeded; "
                                               "the game was stopped."});
                break;
            }
            sample_phase_if_new();
            switch (state.phase) {
            case Phase::nomination:
                act(state.president);
                break;
            case Phase::discussion:
                discussion_turn();
                break;
            case Phase::vote:
                vote_phase();
                break;
            case Phase::legislative_president:
                act(state.president);
                break;
            case Phase::legislative_chancellor:
                act(state.veto_requested ? state.president : *state.chancellor);
                break;
            case Phase::executive:
                act(state.president);
                break;
            case Phase::game_over:
                break;
            }
        }

        record.chat = state.chat;
        record.outcome = state.outcome;
        record.final_state_digest = state_digest_hex(state);
        return record;
    }
};

} // namespace

GameRecord run_game(const std::vector<Agent*>& agents, const GameConfig& config,
                    const ProbeHooks& hooks, const RunMeta& meta) {
    if (static_cast<int>(agents.size()) != config.n_players)
        throw std::invalid_argument("agent count must match n_players");
    Driver driver(agents, config, hooks);
    return driver.run(config, meta);
}

} // namespace shsim
