#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "shsim/agent.hpp"
#include "shsim/config.hpp"
#include "shsim/probes.hpp"
#include "shsim/state.hpp"

namespace shsim {

// Per-seat composition metadata, carried for metric filters and reports.
struct SeatDescriptor {
    std::string name;
    std::string agent_kind;          // random / rule / reputation / llm / scripted / human
    std::string endpoint;            // endpoint handle for LLM seats, else empty
    TechniqueConfig technique;
    std::optional<double> elo;       // human corpora only

    bool operator==(const SeatDescriptor&) const = default;
};

struct ProbeConfig {
    bool gamestate = true;
    bool beliefs = true;
    bool deception = false;

    bool operator==(const ProbeConfig&) const = default;
};

struct RecordedEvent {
    int round = 0;
    Phase phase = Phase::nomination;
    int actor = 0;
    Action action;
    bool substituted = false;

    bool operator==(const RecordedEvent&) const = default;
};

// Game-state score snapshot taken before a phase; event_index is the number
// of events applied when the snapshot was taken.
struct GamestateSample {
    int round = 0;
    Phase phase = Phase::nomination;
    std::size_t event_index = 0;
    double score = 0.0;

    bool operator==(const GamestateSample&) const = default;
};

struct PolicyEnactment {
    int round = 0;
    Policy policy = Policy::liberal;
    bool by_government = false;
    std::optional<int> president;
    std::optional<int> chancellor;

    bool operator==(const PolicyEnactment&) const = default;
};

// A complete serialized game. Replaying `events` through the engine from
// `config` reproduces the final state exactly; `final_state_digest` pins it.
struct GameRecord {
    static constexpr int kSchemaVersion = 1;

    int schema_version = kSchemaVersion;
    std::string game_id;
    GameConfig config;
    std::vector<SeatDescriptor> seats;
    ProbeConfig probes_config;
    std::string provenance = "simulated"; // or "imported_human"
    bool metrics_only = false;            // imported without chat
    std::vector<Role> roles;
    int first_president = 0;
    std::vector<RecordedEvent> events;
    std::vector<ChatEntry> chat;
    std::vector<probes::BeliefRecord> beliefs;
    std::vector<probes::DeceptionAssessment> deceptions;
    std::vector<GamestateSample> gamestate_scores;
    std::vector<PolicyEnactment> policy_timeline;
    // Framework-side annotations (substitutions, abstentions, skipped
    // probes). Kept out of the engine log so replays stay exact.
    std::vector<LogEvent> runner_notes;
    std::optional<Outcome> outcome;
    std::optional<std::string> truncation;
    std::string final_state_digest;

    bool operator==(const GameRecord&) const = default;

    int final_round() const { return events.empty() ? 0 : events.back().round; }
};

// Schema violations raise this with a JSON-pointer-ish field path.
class SchemaError : public std::runtime_error {
  public:
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

nlohmann::json to_json(const GameRecord& record);
GameRecord record_from_json(const nlohmann::json& doc);

} // namespace shsim
