#include "shsim/storage.hpp"

#include <algorithm>
#include <fstream>

#include "shsim/engine.hpp"

namespace shsim::storage {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

// Replays the record's events through the engine, verifying legality and the
// recorded roles/first president; returns the final state.
GameState replay_and_check(const GameRecord& record) {
    GameState state = new_game(record.config);
    if (record.roles.size() != state.seats.size())
        throw SchemaError("roles count does not match n_players");
    for (std::size_t i = 0; i < record.roles.size(); ++i)
        if (state.seats[i].role != record.roles[i])
            throw SchemaError("recorded roles do not match the seeded deal (seat " +
                              std::to_string(i) + ")");
    if (state.president != record.first_president)
        throw SchemaError("recorded first_president does not match the seeded deal");
    for (std::size_t i = 0; i < record.events.size(); ++i) {
        const auto& event = record.events[i];
        try {
            apply_in_place(state, event.actor, event.action);
        } catch (const RuleViolation& violation) {
            throw SchemaError("event " + std::to_string(i) + " does not replay: " +
                              violation.what());
        }
    }
    return state;
}

} // namespace

GameRecord record_from_json_validated(const json& doc) {
    GameRecord record = record_from_json(doc);
    GameState final_state = replay_and_check(record);
    if (state_digest_hex(final_state) != record.final_state_digest)
        throw SchemaError("replayed final state does not match final_state_digest");
    if (final_state.outcome.has_value() != record.outcome.has_value() ||
        (final_state.outcome && !(*final_state.outcome == *record.outcome)))
        throw SchemaError("replayed outcome does not match the recorded outcome");
    if (!record.outcome && !record.truncation)
        throw SchemaError("record has neither an outcome nor a truncation marker");
    return record;
}

void save(const GameRecord& record, const std::filesystem::path& path) {
    write_file(path, to_json(record).dump(2) + "\n");
}

GameRecord load(const std::filesystem::path& path) {
    json doc = json::parse(read_file(path), nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) throw SchemaError("file is not valid JSON: " + path.string());
    return record_from_json_validated(doc);
}

GameState resume_from(const GameRecord& record, int round) {
    if (round < 0 || round > record.final_round())
        throw std::out_of_range("resume round " + std::to_string(round) +
                                " outside [0, " + std::to_string(record.final_round()) + "]");
    GameState state = new_game(record.config);
    for (const auto& event : record.events) {
        if (event.round > round) break;
        apply_in_place(state, event.actor, event.action);
    }
    return state;
}

GameState replay_all(const GameRecord& record) {
    GameState state = new_game(record.config);
    for (const auto& event : record.events)
        apply_in_place(state, event.actor, event.action);
    return state;
}

namespace {

json manifest_to_json(const RunManifest& m) {
    json j;
    j["schema_version"] = m.schema_version;
    j["label"] = m.label;
    j["base_seed"] = m.base_seed;
    j["n_games"] = m.n_games;
    j["completed"] = m.completed;
    return j;
}

RunManifest manifest_from_json(const json& j) {
    RunManifest m;
    m.schema_version = j.at("schema_version").get<int>();
    m.label = j.at("label").get<std::string>();
    m.base_seed = j.at("base_seed").get<std::uint64_t>();
    m.n_games = j.at("n_games").get<int>();
    m.completed = j.at("completed").get<int>();
    return m;
}

} // namespace

RunWriter::RunWriter(std::filesystem::path dir, RunManifest manifest)
    : dir_(std::move(dir)), manifest_(std::move(manifest)) {
    std::filesystem::create_directories(dir_);
    auto manifest_path = dir_ / "manifest.json";
    if (std::filesystem::exists(manifest_path)) {
        RunManifest existing = load_manifest(dir_);
        if (existing.base_seed != manifest_.base_seed || existing.n_games != manifest_.n_games)
            throw std::runtime_error("run directory " + dir_.string() +
                                     " belongs to a different run configuration");
        manifest_ = existing; // resume
    } else {
        manifest_.completed = 0;
        write_file(manifest_path, manifest_to_json(manifest_).dump(2) + "\n");
    }
}

void RunWriter::append(const GameRecord& record) {
    std::ofstream out(dir_ / "records.jsonl", std::ios::binary | std::ios::app);
    if (!out) throw std::runtime_error("cannot append to " + (dir_ / "records.jsonl").string());
    out << to_json(record).dump() << "\n";
    out.flush();
    manifest_.completed += 1;
    write_file(dir_ / "manifest.json", manifest_to_json(manifest_).dump(2) + "\n");
}

RunManifest load_manifest(const std::filesystem::path& dir) {
    json doc = json::parse(read_file(dir / "manifest.json"));
    return manifest_from_json(doc);
}

std::vector<GameRecord> load_run(const std::filesystem::path& dir) {
    std::ifstream in(dir / "records.jsonl", std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + (dir / "records.jsonl").string());
    std::vector<GameRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json doc = json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (doc.is_discarded())
            throw SchemaError("records.jsonl line " + std::to_string(line_no) +
                              " is not valid JSON");
        records.push_back(record_from_json_validated(doc));
    }
    return records;
}

namespace {

class ExampleDumpAdapter : public FormatAdapter {
  public:
    std::string name() const override { return "example-dump"; }

    std::vector<ImportedGame> parse(const json& dump) const override {
        if (!dump.is_object() || !dump.contains("games") || !dump["games"].is_array())
            throw SchemaError("dump has no games array");
        std::vector<ImportedGame> games;
        for (const auto& g : dump["games"]) {
            ImportedGame game;
            game.id = g.value("id", "imported-" + std::to_string(games.size()));
            if (g.contains("settings")) {
                const auto& s = g["settings"];
                game.custom_settings = s.value("custom", false) ||
                                       s.value("gamemode", std::string("standard")) != "standard";
            }
            for (const auto& p : g.at("players")) {
                game.player_names.push_back(p.at("name").get<std::string>());
                game.roles.push_back(role_from_string(p.at("role").get<std::string>()));
                if (p.contains("elo") && !p["elo"].is_null())
                    game.elo.push_back(p["elo"].get<double>());
                else
                    game.elo.push_back(std::nullopt);
            }
            for (const auto& c : g.at("deck"))
                game.deck.push_back(policy_from_string(c.get<std::string>()));
            game.first_president = g.at("first_president").get<int>();
            for (const auto& a : g.at("actions")) {
                Action action;
                action.kind = action_kind_from_string(a.at("type").get<std::string>());
                if (a.contains("target")) action.target = a["target"].get<int>();
                if (a.contains("ja")) action.ja = a["ja"].get<bool>();
                if (a.contains("accept")) action.accept = a["accept"].get<bool>();
                if (a.contains("card_index")) action.card_index = a["card_index"].get<int>();
                game.actions.emplace_back(a.at("actor").get<int>(), action);
            }
            game.has_chat = g.contains("chat");
            if (game.has_chat) {
                for (const auto& c : g["chat"]) {
                    ImportedChat chat;
                    chat.before_action = c.value("before_action", game.actions.size());
                    chat.sender = c.at("sender").get<std::string>();
                    chat.text = c.at("text").get<std::string>();
                    chat.spectator = c.value("spectator", false);
                    chat.in_game = c.value("phase", std::string("ingame")) == "ingame";
                    game.chat.push_back(chat);
                }
            }
            games.push_back(std::move(game));
        }
        return games;
    }
};

} // namespace

std::unique_ptr<FormatAdapter> example_dump_adapter() {
    return std::make_unique<ExampleDumpAdapter>();
}

std::vector<ImportedGame> clean_imported(const std::vector<ImportedGame>& games,
                                         CleaningReport& report) {
    std::vector<ImportedGame> kept;
    report.games_in += static_cast<int>(games.size());
    for (const auto& game : games) {
        if (game.custom_settings) {
            report.dropped_custom_settings += 1;
            continue;
        }
        ImportedGame cleaned = game;
        cleaned.chat.clear();
        for (const auto& chat : game.chat) {
            if (chat.spectator) {
                report.messages_dropped_spectator += 1;
                continue;
            }
            if (!chat.in_game) {
                report.messages_dropped_outside_game += 1;
                continue;
            }
            cleaned.chat.push_back(chat);
        }
        report.games_kept += 1;
        kept.push_back(std::move(cleaned));
    }
    return kept;
}

std::pair<RecordSet, CleaningReport> import_human_dump(const std::filesystem::path& path,
                                                       const FormatAdapter& adapter) {
    json dump = json::parse(read_file(path), nullptr, /*allow_exceptions=*/false);
    if (dump.is_discarded()) throw SchemaError("dump is not valid JSON: " + path.string());

    CleaningReport report;
    auto games = clean_imported(adapter.parse(dump), report);

    RecordSet set;
    set.provenance = "imported_human";
    for (const auto& game : games) {
        try {
            GameConfig config;
            config.n_players = static_cast<int>(game.player_names.size());
            config.discussion_rounds = 0; // imported chat is free-form
            config.player_names = game.player_names;
            SetupOverride setup;
            setup.roles = game.roles;
            setup.deck = game.deck;
            setup.first_president = game.first_president;
            config.setup = setup;

            GameState state = new_game(config);
            GameRecord record;
            record.game_id = game.id;
            record.config = state.config;
            record.provenance = "imported_human";
            record.metrics_only = !game.has_chat;
            record.probes_config = ProbeConfig{false, false, false};
            record.roles = game.roles;
            record.first_president = game.first_president;
            for (std::size_t i = 0; i < game.player_names.size(); ++i) {
                SeatDescriptor seat;
                seat.name = game.player_names[i];
                seat.agent_kind = "human";
                seat.elo = game.elo[i];
                record.seats.push_back(seat);
            }

            // Interleave chat before the action it preceded.
            std::size_t chat_cursor = 0;
            auto flush_chat_before = [&](std::size_t action_index) {
                while (chat_cursor < game.chat.size() &&
                       game.chat[chat_cursor].before_action <= action_index) {
                    const auto& chat = game.chat[chat_cursor];
                    auto who = std::find(game.player_names.begin(), game.player_names.end(),
                                         chat.sender);
                    if (who != game.player_names.end()) {
                        int seat = static_cast<int>(who - game.player_names.begin());
                        Action message = Action::chat(chat.text);
                        int round = state.round == 0 ? 1 : state.round;
                        Phase phase = state.phase;
                        apply_in_place(state, seat, message);
                        record.events.push_back(
                            RecordedEvent{round, phase, seat, message, false});
                    }
                    ++chat_cursor;
                }
            };

            for (std::size_t i = 0; i < game.actions.size(); ++i) {
                flush_chat_before(i);
                const auto& [actor, action] = game.actions[i];
                int round = state.round == 0 ? 1 : state.round;
                Phase phase = state.phase;
                apply_in_place(state, actor, action);
                record.events.push_back(RecordedEvent{round, phase, actor, action, false});
                int total_enacted = state.liberal_policies + state.fascist_policies;
                if (static_cast<int>(record.policy_timeline.size()) < total_enacted) {
                    int seen_lib = 0;
                    for (const auto& p : record.policy_timeline)
                        if (p.policy == Policy::liberal) ++seen_lib;
                    PolicyEnactment enactment;
                    enactment.round = round;
                    enactment.policy = state.liberal_policies > seen_lib ? Policy::liberal
                                                                         : Policy::fascist;
                    enactment.by_government = action.kind == ActionKind::chancellor_enact;
                    if (enactment.by_government) {
                        enactment.chancellor = actor;
                        enactment.president = state.last_government
                                                  ? state.last_government->first
                                                  : state.president;
                    }
                    record.policy_timeline.push_back(enactment);
                }
            }
            flush_chat_before(game.actions.size());

            if (!state.outcome) {
                report.games_unconvertible += 1;
                report.games_kept -= 1;
                continue;
            }
            record.chat = state.chat;
            record.outcome = state.outcome;
            record.final_state_digest = state_digest_hex(state);
            set.records.push_back(std::move(record));
        } catch (const std::exception&) {
            report.games_unconvertible += 1;
            report.games_kept -= 1;
        }
    }
    return {set, report};
}

ScenarioExtraction scenario_extract(const GameRecord& record) {
    ScenarioExtraction out;
    if (!record.outcome) {
        out.skip_reason = "game is not terminal";
        return out;
    }
    int final_round = record.final_round();
    if (final_round < 2) {
        out.skip_reason = "game too short (needs at least two rounds)";
        return out;
    }

    Scenario scenario;
    scenario.game_id = record.game_id;
    scenario.config = record.config;
    scenario.roles = record.roles;
    scenario.anchor_round = final_round - 1;
    for (const auto& event : record.events)
        if (event.round < final_round) scenario.prefix.push_back(event);

    std::optional<int> nominee;
    bool government_formed = false;
    for (const auto& event : record.events) {
        if (event.round != final_round) continue;
        if (event.action.kind == ActionKind::nominate) {
            scenario.president = event.actor;
            nominee = event.action.target;
        } else if (event.action.kind == ActionKind::vote) {
            scenario.expert_votes[event.actor] = event.action.ja;
        } else if (event.action.kind == ActionKind::president_discard) {
            government_formed = true;
        }
    }
    if (record.outcome->kind == OutcomeKind::hitler_elected_chancellor)
        government_formed = true;
    if (!nominee) {
        out.skip_reason = "final round contains no nomination";
        return out;
    }
    if (scenario.expert_votes.empty()) {
        out.skip_reason = "final round contains no votes";
        return out;
    }
    if (!government_formed) {
        out.skip_reason = "no government formed in the final round (chaos ending)";
        return out;
    }
    scenario.expert_nominee = *nominee;
    scenario.expert_nominee_role = record.roles[*nominee];
    out.scenario = scenario;
    return out;
}

GameState scenario_state(const Scenario& scenario) {
    GameState state = new_game(scenario.config);
    for (const auto& event : scenario.prefix)
        apply_in_place(state, event.actor, event.action);
    return state;
}

} // namespace shsim::storage
