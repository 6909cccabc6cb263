#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shsim/record.hpp"

namespace shsim::storage {

// Writes pretty-printed JSON; newline-terminated.
void save(const GameRecord& record, const std::filesystem::path& path);

// Parses, schema-validates, and replay-validates: the recorded events are
// re-applied through the engine and must reproduce the recorded final digest
// and outcome. Corrupt events surface the violated game rule.
GameRecord load(const std::filesystem::path& path);

GameRecord record_from_json_validated(const nlohmann::json& doc);

// Replays all events with round <= round; round 0 gives the opening state.
GameState resume_from(const GameRecord& record, int round);

// Rebuilds the exact final state of a record.
GameState replay_all(const GameRecord& record);

// Run directories: records.jsonl (one record per line, append-only) plus
// manifest.json describing the run and its progress.
struct RunManifest {
    int schema_version = 1;
    std::string label;
    std::uint64_t base_seed = 0;
    int n_games = 0;
    int completed = 0;

    bool operator==(const RunManifest&) const = default;
};

class RunWriter {
  public:
    // Creates the directory (or resumes an existing one with a matching
    // manifest shape). completed() tells the caller where to pick up.
    RunWriter(std::filesystem::path dir, RunManifest manifest);

    void append(const GameRecord& record);
    int completed() const { return manifest_.completed; }
    const std::filesystem::path& dir() const { return dir_; }

  private:
    std::filesystem::path dir_;
    RunManifest manifest_;
};

RunManifest load_manifest(const std::filesystem::path& dir);
std::vector<GameRecord> load_run(const std::filesystem::path& dir);

struct RecordSet {
    std::vector<GameRecord> records;
    std::string provenance = "simulated";
};

struct CleaningReport {
    int games_in = 0;
    int games_kept = 0;
    int dropped_custom_settings = 0;
    int messages_dropped_spectator = 0;
    int messages_dropped_outside_game = 0;
    int games_unconvertible = 0;

    bool operator==(const CleaningReport&) const = default;
};

// Normalized external game, produced by a FormatAdapter. Chat entries carry
// the index of the action they precede so replays interleave them correctly.
struct ImportedChat {
    std::size_t before_action = 0;
    std::string sender;
    std::string text;
    bool spectator = false;
    bool in_game = true; // false for pregame/postgame messages
};

struct ImportedGame {
    std::string id;
    bool custom_settings = false;
    std::vector<std::string> player_names;
    std::vector<Role> roles;
    std::vector<std::optional<double>> elo;
    std::vector<Policy> deck; // top first
    int first_president = 0;
    std::vector<std::pair<int, Action>> actions; // (actor, action), chat excluded
    std::vector<ImportedChat> chat;
    bool has_chat = true; // false marks a chatless (metrics-only) dump
};

// Translates one external dump layout into normalized games.
class FormatAdapter {
  public:
    virtual ~FormatAdapter() = default;
    virtual std::string name() const = 0;
    virtual std::vector<ImportedGame> parse(const nlohmann::json& dump) const = 0;
};

// Adapter for the documented example dump layout (docs/formats.md).
std::unique_ptr<FormatAdapter> example_dump_adapter();

// Drops spectator and out-of-game messages and flags custom-settings games.
// Pure and idempotent over ImportedGame lists.
std::vector<ImportedGame> clean_imported(const std::vector<ImportedGame>& games,
                                         CleaningReport& report);

// Full import: parse, clean, replay each game through the engine. Games that
// will not replay legally are skipped and counted.
std::pair<RecordSet, CleaningReport> import_human_dump(const std::filesystem::path& path,
                                                       const FormatAdapter& adapter);

// A decisive final-round situation replayed from one round before the end.
struct Scenario {
    std::string game_id;
    GameConfig config;
    std::vector<RecordedEvent> prefix; // events with round < final round
    int anchor_round = 0;              // resume_from parameter (final round - 1)
    int president = 0;
    int expert_nominee = 0;
    Role expert_nominee_role = Role::liberal;
    std::map<int, bool> expert_votes;
    std::vector<Role> roles;
};

struct ScenarioExtraction {
    std::optional<Scenario> scenario;
    std::string skip_reason; // set when scenario is absent
};

ScenarioExtraction scenario_extract(const GameRecord& record);

// Rebuilds the live state at the scenario anchor (nomination phase of the
// final round).
GameState scenario_state(const Scenario& scenario);

} // namespace shsim::storage
