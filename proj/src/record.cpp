#include "shsim/record.hpp"

namespace shsim {

using nlohmann::json;

namespace {

json action_to_json(const Action& a) {
    json j;
    j["type"] = to_string(a.kind);
    switch (a.kind) {
    case ActionKind::nominate:
    case ActionKind::investigate:
    case ActionKind::execute:
    case ActionKind::special_election:
        j["target"] = a.target;
        break;
    case ActionKind::vote:
        j["ja"] = a.ja;
        break;
    case ActionKind::president_discard:
    case ActionKind::chancellor_enact:
        j["card_index"] = a.card_index;
        break;
    case ActionKind::veto_consent:
        j["accept"] = a.accept;
        break;
    case ActionKind::chat:
        j["text"] = a.text;
        break;
    case ActionKind::policy_peek_ack:
    case ActionKind::veto_request:
        break;
    }
    return j;
}

// Pulls a required field, reporting its path on absence or wrong type.
template <typename T>
T field(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key))
        throw SchemaError("missing field " + path + "/" + key);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw SchemaError("wrong type at " + path + "/" + key);
    }
}

Action action_from_json(const json& j, const std::string& path) {
    Action a;
    a.kind = action_kind_from_string(field<std::string>(j, path, "type"));
    switch (a.kind) {
    case ActionKind::nominate:
    case ActionKind::investigate:
    case ActionKind::execute:
    case ActionKind::special_election:
        a.target = field<int>(j, path, "target");
        break;
    case ActionKind::vote:
        a.ja = field<bool>(j, path, "ja");
        break;
    case ActionKind::president_discard:
    case ActionKind::chancellor_enact:
        a.card_index = field<int>(j, path, "card_index");
        break;
    case ActionKind::veto_consent:
        a.accept = field<bool>(j, path, "accept");
        break;
    case ActionKind::chat:
        a.text = field<std::string>(j, path, "text");
        break;
    case ActionKind::policy_peek_ack:
    case ActionKind::veto_request:
        break;
    }
    return a;
}

json config_to_json(const GameConfig& c) {
    json j;
    j["n_players"] = c.n_players;
    j["seed"] = c.seed;
    j["discussion_rounds"] = c.discussion_rounds;
    j["chat_window"] = c.chat_window;
    j["max_rounds"] = c.max_rounds;
    j["chat_cap"] = c.chat_cap;
    j["player_names"] = c.player_names;
    json roadmap = json::object();
    for (const auto& [count, power] : c.power_roadmap)
        roadmap[std::to_string(count)] = to_string(power);
    j["power_roadmap"] = roadmap;
    if (c.setup) {
        json setup;
        setup["roles"] = json::array();
        for (Role r : c.setup->roles) setup["roles"].push_back(to_string(r));
        setup["deck"] = json::array();
        for (Policy p : c.setup->deck) setup["deck"].push_back(to_string(p));
        setup["first_president"] = c.setup->first_president;
        j["setup"] = setup;
    } else {
        j["setup"] = nullptr;
    }
    return j;
}

GameConfig config_from_json(const json& j, const std::string& path) {
    GameConfig c;
    c.n_players = field<int>(j, path, "n_players");
    c.seed = field<std::uint64_t>(j, path, "seed");
    c.discussion_rounds = field<int>(j, path, "discussion_rounds");
    c.chat_window = field<int>(j, path, "chat_window");
    c.max_rounds = field<int>(j, path, "max_rounds");
    c.chat_cap = field<int>(j, path, "chat_cap");
    c.player_names = field<std::vector<std::string>>(j, path, "player_names");
    json roadmap = field<json>(j, path, "power_roadmap");
    for (const auto& [key, value] : roadmap.items())
        c.power_roadmap[std::stoi(key)] = power_from_string(value.get<std::string>());
    if (j.contains("setup") && !j["setup"].is_null()) {
        const json& s = j["setup"];
        SetupOverride setup;
        for (const auto& r : field<std::vector<std::string>>(s, path + "/setup", "roles"))
            setup.roles.push_back(role_from_string(r));
        for (const auto& p : field<std::vector<std::string>>(s, path + "/setup", "deck"))
            setup.deck.push_back(policy_from_string(p));
        setup.first_president = field<int>(s, path + "/setup", "first_president");
        c.setup = setup;
    }
    return c;
}

} // namespace

json to_json(const GameRecord& r) {
    json j;
    j["schema_version"] = r.schema_version;
    j["game_id"] = r.game_id;
    j["config"] = config_to_json(r.config);

    j["seats"] = json::array();
    for (const auto& s : r.seats) {
        json seat;
        seat["name"] = s.name;
        seat["agent_kind"] = s.agent_kind;
        seat["endpoint"] = s.endpoint;
        seat["technique"] = {{"cot", s.technique.cot},
                             {"memory", s.technique.memory},
                             {"role_prompt", s.technique.role_prompt},
                             {"strategy_guide", s.technique.strategy_guide}};
        if (s.elo)
            seat["elo"] = *s.elo;
        else
            seat["elo"] = nullptr;
        j["seats"].push_back(seat);
    }

    j["probes"] = {{"gamestate", r.probes_config.gamestate},
                   {"beliefs", r.probes_config.beliefs},
                   {"deception", r.probes_config.deception}};
    j["provenance"] = r.provenance;
    j["metrics_only"] = r.metrics_only;

    j["roles"] = json::array();
    for (Role role : r.roles) j["roles"].push_back(to_string(role));
    j["first_president"] = r.first_president;

    j["events"] = json::array();
    for (const auto& e : r.events) {
        json ev;
        ev["round"] = e.round;
        ev["phase"] = to_string(e.phase);
        ev["actor"] = e.actor;
        ev["action"] = action_to_json(e.action);
        ev["substituted"] = e.substituted;
        j["events"].push_back(ev);
    }

    j["chat"] = json::array();
    for (const auto& c : r.chat)
        j["chat"].push_back({{"round", c.round}, {"speaker", c.speaker}, {"text", c.text}});

    j["beliefs"] = json::array();
    for (const auto& b : r.beliefs)
        j["beliefs"].push_back({{"round", b.round},
                                {"observer", b.observer},
                                {"target", b.target},
                                {"guess", to_string(b.guess)},
                                {"truth", to_string(b.truth)}});

    j["deceptions"] = json::array();
    for (const auto& d : r.deceptions)
        j["deceptions"].push_back({{"round", d.round},
                                   {"target", d.target},
                                   {"guess", to_string(d.annotator_guess)},
                                   {"truth", to_string(d.truth)},
                                   {"score", d.score}});

    j["gamestate_scores"] = json::array();
    for (const auto& g : r.gamestate_scores)
        j["gamestate_scores"].push_back({{"round", g.round},
                                         {"phase", to_string(g.phase)},
                                         {"event_index", g.event_index},
                                         {"score", g.score}});

    j["policy_timeline"] = json::array();
    for (const auto& p : r.policy_timeline) {
        json e;
        e["round"] = p.round;
        e["policy"] = to_string(p.policy);
        e["by_government"] = p.by_government;
        e["president"] = p.president ? json(*p.president) : json(nullptr);
        e["chancellor"] = p.chancellor ? json(*p.chancellor) : json(nullptr);
        j["policy_timeline"].push_back(e);
    }

    j["runner_notes"] = json::array();
    for (const auto& n : r.runner_notes)
        j["runner_notes"].push_back({{"round", n.round}, {"text", n.text}});

    if (r.outcome)
        j["outcome"] = {{"kind", to_string(r.outcome->kind)},
                        {"winner", to_string(r.outcome->winner)}};
    else
        j["outcome"] = nullptr;
    j["truncation"] = r.truncation ? json(*r.truncation) : json(nullptr);
    j["final_state_digest"] = r.final_state_digest;
    return j;
}

GameRecord record_from_json(const json& doc) {
    if (!doc.is_object()) throw SchemaError("record is not an object");
    GameRecord r;
    r.schema_version = field<int>(doc, "", "schema_version");
    if (r.schema_version != GameRecord::kSchemaVersion)
        throw SchemaError("unsupported schema_version " + std::to_string(r.schema_version) +
                          " (supported: " + std::to_string(GameRecord::kSchemaVersion) + ")");
    r.game_id = field<std::string>(doc, "", "game_id");
    r.config = config_from_json(field<json>(doc, "", "config"), "/config");

    json seats_json = field<json>(doc, "", "seats");
    for (const auto& [i, seat] : seats_json.items()) {
        std::string path = "/seats/" + i;
        SeatDescriptor s;
        s.name = field<std::string>(seat, path, "name");
        s.agent_kind = field<std::string>(seat, path, "agent_kind");
        s.endpoint = field<std::string>(seat, path, "endpoint");
        auto technique = field<json>(seat, path, "technique");
        s.technique.cot = field<bool>(technique, path + "/technique", "cot");
        s.technique.memory = field<bool>(technique, path + "/technique", "memory");
        s.technique.role_prompt = field<bool>(technique, path + "/technique", "role_prompt");
        s.technique.strategy_guide =
            field<bool>(technique, path + "/technique", "strategy_guide");
        if (seat.contains("elo") && !seat["elo"].is_null())
            s.elo = seat["elo"].get<double>();
        r.seats.push_back(s);
    }

    auto probes = field<json>(doc, "", "probes");
    r.probes_config.gamestate = field<bool>(probes, "/probes", "gamestate");
    r.probes_config.beliefs = field<bool>(probes, "/probes", "beliefs");
    r.probes_config.deception = field<bool>(probes, "/probes", "deception");
    r.provenance = field<std::string>(doc, "", "provenance");
    r.metrics_only = field<bool>(doc, "", "metrics_only");

    for (const auto& role : field<std::vector<std::string>>(doc, "", "roles"))
        r.roles.push_back(role_from_string(role));
    r.first_president = field<int>(doc, "", "first_president");

    json events_json = field<json>(doc, "", "events");
    for (const auto& [i, ev] : events_json.items()) {
        std::string path = "/events/" + i;
        RecordedEvent e;
        e.round = field<int>(ev, path, "round");
        e.phase = phase_from_string(field<std::string>(ev, path, "phase"));
        e.actor = field<int>(ev, path, "actor");
        e.action = action_from_json(field<json>(ev, path, "action"), path + "/action");
        e.substituted = field<bool>(ev, path, "substituted");
        r.events.push_back(e);
    }

    json chat_json = field<json>(doc, "", "chat");
    for (const auto& [i, c] : chat_json.items()) {
        std::string path = "/chat/" + i;
        r.chat.push_back(ChatEntry{field<int>(c, path, "round"), field<int>(c, path, "speaker"),
                                   field<std::string>(c, path, "text")});
    }

    json beliefs_json = field<json>(doc, "", "beliefs");
    for (const auto& [i, b] : beliefs_json.items()) {
        std::string path = "/beliefs/" + i;
        probes::BeliefRecord rec;
        rec.round = field<int>(b, path, "round");
        rec.observer = field<int>(b, path, "observer");
        rec.target = field<int>(b, path, "target");
        rec.guess = guess_from_string(field<std::string>(b, path, "guess"));
        rec.truth = role_from_string(field<std::string>(b, path, "truth"));
        r.beliefs.push_back(rec);
    }

    json deceptions_json = field<json>(doc, "", "deceptions");
    for (const auto& [i, d] : deceptions_json.items()) {
        std::string path = "/deceptions/" + i;
        probes::DeceptionAssessment a;
        a.round = field<int>(d, path, "round");
        a.target = field<int>(d, path, "target");
        a.annotator_guess = guess_from_string(field<std::string>(d, path, "guess"));
        a.truth = role_from_string(field<std::string>(d, path, "truth"));
        a.score = field<double>(d, path, "score");
        r.deceptions.push_back(a);
    }

    json scores_json = field<json>(doc, "", "gamestate_scores");
    for (const auto& [i, g] : scores_json.items()) {
        std::string path = "/gamestate_scores/" + i;
        GamestateSample s;
        s.round = field<int>(g, path, "round");
        s.phase = phase_from_string(field<std::string>(g, path, "phase"));
        s.event_index = field<std::size_t>(g, path, "event_index");
        s.score = field<double>(g, path, "score");
        r.gamestate_scores.push_back(s);
    }

    json timeline_json = field<json>(doc, "", "policy_timeline");
    for (const auto& [i, p] : timeline_json.items()) {
        std::string path = "/policy_timeline/" + i;
        PolicyEnactment e;
        e.round = field<int>(p, path, "round");
        e.policy = policy_from_string(field<std::string>(p, path, "policy"));
        e.by_government = field<bool>(p, path, "by_government");
        if (p.contains("president") && !p["president"].is_null())
            e.president = p["president"].get<int>();
        if (p.contains("chancellor") && !p["chancellor"].is_null())
            e.chancellor = p["chancellor"].get<int>();
        r.policy_timeline.push_back(e);
    }

    {
        json notes = field<json>(doc, "", "runner_notes");
        for (const auto& [i, n] : notes.items()) {
            std::string path = "/runner_notes/" + i;
            r.runner_notes.push_back(
                LogEvent{field<int>(n, path, "round"), field<std::string>(n, path, "text")});
        }
    }

    if (doc.contains("outcome") && !doc["outcome"].is_null()) {
        const json& o = doc["outcome"];
        OutcomeKind kind = outcome_kind_from_string(field<std::string>(o, "/outcome", "kind"));
        Outcome outcome = make_outcome(kind);
        if (to_string(outcome.winner) != field<std::string>(o, "/outcome", "winner"))
            throw SchemaError("outcome winner does not match the outcome kind");
        r.outcome = outcome;
    }
    if (doc.contains("truncation") && !doc["truncation"].is_null())
        r.truncation = doc["truncation"].get<std::string>();
    r.final_state_digest = field<std::string>(doc, "", "final_state_digest");
    return r;
}

} // namespace shsim
