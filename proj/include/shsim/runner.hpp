#pragma once

#include <functional>
#include <string>
#include <vector>

#include "shsim/agent.hpp"
#include "shsim/engine.hpp"
#include "shsim/record.hpp"

namespace shsim {

// Round-boundary side channels and scoring configuration for a run.
struct ProbeHooks {
    bool gamestate = true;
    bool beliefs = true;
    bool deception = false;
    eval::PhaseWeights weights;
    probes::DeceptionAnnotator deception_annotator; // required when deception is on
    // Observation point invoked before each phase (after the matching
    // gamestate sample); used by tests and progress displays.
    std::function<void(const GameState&)> on_phase;
    // Polled between actions; a true return stops the game with a truncation
    // marker (used by the interactive session on EOF).
    std::function<bool()> should_abort;
};

struct RunMeta {
    std::string game_id;                // default: "game-<seed>"
    std::vector<SeatDescriptor> seats;  // default: derived from the agents
};

// Drives a full game: discussions, nominations, votes, legislative sessions,
// executive powers, probes at round boundaries. Agent failures never abort a
// game; a uniformly random legal action is substituted and logged.
GameRecord run_game(const std::vector<Agent*>& agents, const GameConfig& config,
                    const ProbeHooks& hooks = {}, const RunMeta& meta = {});

} // namespace shsim
