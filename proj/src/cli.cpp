#include "shsim/cli.hpp"

#include <condition_variable>
#include <fstream>
#include <mutex>
#include <thread>

#include "json.hpp"

#include "shsim/agents.hpp"
#include "shsim/llm_agent.hpp"
#include "shsim/runner.hpp"
#include "shsim/stats.hpp"
#include "shsim/storage.hpp"

namespace shsim::cli {

using nlohmann::json;

namespace {

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string text(std::istreambuf_iterator<char>(in), {});
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded())
        throw std::invalid_argument("not valid JSON: " + path.string());
    return doc;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

TechniqueConfig technique_from_json(const json& j) {
    TechniqueConfig t;
    t.cot = j.value("cot", false);
    t.memory = j.value("memory", false);
    t.role_prompt = j.value("role_prompt", false);
    t.strategy_guide = j.value("strategy_guide", false);
    return t;
}

// LLM-backed discussion for baseline agents (their decisions stay
// algorithmic, chat goes through the model).
ChatProvider llm_chat_provider(std::shared_ptr<gw::Gateway> gateway, gw::ModelEndpoint endpoint,
                               std::size_t chat_cap) {
    return [gateway, endpoint, chat_cap](const AgentView& view) -> std::string {
        prompts::PromptRequest request;
        request.kind = prompts::RequestKind::chat;
        auto messages = prompts::build_prompt(view, {}, request);
        auto result = gateway->complete(endpoint, messages, {0.6, 1000});
        if (!result.ok()) return "";
        return prompts::truncate_with_marker(result.value(), chat_cap);
    };
}

void write_usage_log(const std::filesystem::path& path, const gw::Gateway& gateway) {
    auto entries = gateway.usage();
    if (entries.empty()) return;
    std::string lines;
    for (const auto& e : entries) {
        json j;
        j["endpoint"] = e.endpoint_name;
        j["model"] = e.model_id;
        j["attempts"] = e.attempts;
        j["latency_ms"] = e.latency_ms;
        j["prompt_tokens"] = e.prompt_tokens ? json(*e.prompt_tokens) : json(nullptr);
        j["completion_tokens"] = e.completion_tokens ? json(*e.completion_tokens) : json(nullptr);
        j["outcome"] = e.outcome;
        lines += j.dump() + "\n";
    }
    write_text(path, lines);
}

std::uint64_t seat_seed(std::uint64_t game_seed, int seat) {
    return game_seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(seat + 1));
}

struct Lineup {
    std::vector<std::unique_ptr<Agent>> owners;
    std::vector<Agent*> agents;
    std::vector<SeatDescriptor> descriptors;
};

Lineup build_lineup(const RunConfig& config, std::uint64_t game_seed,
                    const std::shared_ptr<gw::Gateway>& gateway) {
    Lineup lineup;
    auto names = config.game.player_names.empty() ? default_player_names(config.game.n_players)
                                                  : config.game.player_names;
    for (int seat = 0; seat < config.game.n_players; ++seat) {
        const SeatSpec& spec = config.seats[seat];
        ChatProvider chat;
        if (!config.baseline_chat_endpoint.empty())
            chat = llm_chat_provider(gateway, config.endpoints.at(config.baseline_chat_endpoint),
                                     static_cast<std::size_t>(config.game.chat_cap));

        if (spec.agent == "random") {
            lineup.owners.push_back(std::make_unique<RandomAgent>(seat_seed(game_seed, seat), chat));
        } else if (spec.agent == "rule") {
            lineup.owners.push_back(std::make_unique<RuleAgent>(chat));
        } else if (spec.agent == "reputation") {
            lineup.owners.push_back(
                std::make_unique<ReputationAgent>(seat_seed(game_seed, seat), chat));
        } else if (spec.agent == "llm") {
            LlmAgentOptions options;
            options.technique = spec.technique;
            options.chat_cap = static_cast<std::size_t>(config.game.chat_cap);
            lineup.owners.push_back(std::make_unique<LlmAgent>(
                gateway, config.endpoints.at(spec.endpoint), options, seat_seed(game_seed, seat)));
        } else {
            throw std::invalid_argument("unknown agent kind '" + spec.agent + "'");
        }

        SeatDescriptor d;
        d.name = names[seat];
        d.agent_kind = spec.agent;
        d.endpoint = spec.endpoint;
        d.technique = spec.technique;
        lineup.descriptors.push_back(d);
    }
    for (auto& owner : lineup.owners) lineup.agents.push_back(owner.get());
    return lineup;
}

ProbeHooks hooks_from(const RunConfig& config, const std::shared_ptr<gw::Gateway>& gateway) {
    ProbeHooks hooks;
    hooks.gamestate = config.probes.gamestate;
    hooks.beliefs = config.probes.beliefs;
    hooks.deception = config.probes.deception;
    hooks.weights = config.weights;
    if (config.probes.deception) {
        if (config.deception_endpoint.empty())
            throw std::invalid_argument("deception probe requires a deception_endpoint");
        hooks.deception_annotator = probes::llm_deception_annotator(
            gateway, config.endpoints.at(config.deception_endpoint));
    }
    return hooks;
}

} // namespace

RunConfig parse_run_config(const std::filesystem::path& path) {
    json doc = read_json_file(path);
    RunConfig config;

    if (doc.contains("game")) {
        const json& g = doc["game"];
        config.game.n_players = g.value("n_players", 5);
        config.game.discussion_rounds = g.value("discussion_rounds", 1);
        config.game.chat_window = g.value("chat_window", 30);
        config.game.max_rounds = g.value("max_rounds", 64);
        config.game.chat_cap = g.value("chat_cap", 500);
        if (g.contains("player_names"))
            config.game.player_names = g["player_names"].get<std::vector<std::string>>();
        if (g.contains("power_roadmap"))
            for (const auto& [key, value] : g["power_roadmap"].items())
                config.game.power_roadmap[std::stoi(key)] =
                    power_from_string(value.get<std::string>());
    }

    if (doc.contains("endpoints")) {
        for (const auto& [name, e] : doc["endpoints"].items()) {
            gw::ModelEndpoint endpoint;
            endpoint.name = name;
            endpoint.base_url = e.value("base_url", "");
            endpoint.model_id = e.value("model_id", "");
            endpoint.credential_env = e.value("credential_env", "");
            endpoint.timeout_ms = e.value("timeout_ms", 120000);
            config.endpoints[name] = endpoint;
        }
    }

    if (doc.contains("seats")) {
        for (const auto& s : doc["seats"]) {
            SeatSpec spec;
            spec.agent = s.value("agent", "reputation");
            spec.endpoint = s.value("endpoint", "");
            if (s.contains("technique")) spec.technique = technique_from_json(s["technique"]);
            config.seats.push_back(spec);
        }
    } else {
        // Standard matchup: one evaluated seat against four reputation agents.
        config.seats.push_back(SeatSpec{"rule", "", {}});
        for (int i = 1; i < config.game.n_players; ++i)
            config.seats.push_back(SeatSpec{"reputation", "", {}});
    }

    if (doc.contains("probes")) {
        const json& p = doc["probes"];
        config.probes.gamestate = p.value("gamestate", true);
        config.probes.beliefs = p.value("beliefs", true);
        config.probes.deception = p.value("deception", false);
        config.deception_endpoint = p.value("deception_endpoint", "");
    }
    config.baseline_chat_endpoint = doc.value("baseline_chat_endpoint", "");
    config.n_games = doc.value("n_games", 1);
    config.base_seed = doc.value("base_seed", std::uint64_t{1});
    config.parallel_workers = doc.value("parallel_workers", 1);
    config.rate_limit_rps = doc.value("rate_limit_rps", 0.0);
    if (doc.contains("weights")) {
        const json& w = doc["weights"];
        config.weights.policy = w.value("policy", config.weights.policy);
        config.weights.deck = w.value("deck", config.weights.deck);
        config.weights.president = w.value("president", config.weights.president);
        config.weights.role_acc = w.value("role_acc", config.weights.role_acc);
        config.weights.danger = w.value("danger", config.weights.danger);
    }

    if (static_cast<int>(config.seats.size()) != config.game.n_players)
        throw std::invalid_argument("seats must match game.n_players");
    if (config.n_games < 1) throw std::invalid_argument("n_games must be >= 1");
    if (config.parallel_workers < 1)
        throw std::invalid_argument("parallel_workers must be >= 1");
    for (const auto& seat : config.seats) {
        if (seat.agent == "llm" && !config.endpoints.count(seat.endpoint))
            throw std::invalid_argument("llm seat references undefined endpoint '" +
                                        seat.endpoint + "'");
    }
    if (!config.baseline_chat_endpoint.empty() &&
        !config.endpoints.count(config.baseline_chat_endpoint))
        throw std::invalid_argument("baseline_chat_endpoint is not a defined endpoint");
    if (config.probes.deception && !config.deception_endpoint.empty() &&
        !config.endpoints.count(config.deception_endpoint))
        throw std::invalid_argument("deception_endpoint is not a defined endpoint");
    validate(config.game);
    return config;
}

metrics::MetricFilter parse_filter_flags(const std::vector<std::string>& flags) {
    metrics::MetricFilter filter;
    for (const auto& flag : flags) {
        auto eq = flag.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("filter must look like key=value: " + flag);
        std::string key = flag.substr(0, eq);
        std::string value = flag.substr(eq + 1);
        if (key == "role")
            filter.role = role_from_string(value);
        else if (key == "affiliation")
            filter.affiliation = party_from_string(value);
        else if (key == "agent")
            filter.agent_kind = value;
        else if (key == "elo-min")
            filter.elo_min = std::stod(value);
        else
            throw std::invalid_argument("unknown filter key: " + key);
    }
    return filter;
}

int cmd_simulate(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
                 std::optional<int> n_games, std::optional<std::uint64_t> seed,
                 std::optional<int> workers, std::atomic<bool>* cancel, std::ostream& log) {
    RunConfig config;
    try {
        config = parse_run_config(config_path);
        if (n_games) config.n_games = *n_games;
        if (seed) config.base_seed = *seed;
        if (workers) config.parallel_workers = *workers;
        if (config.n_games < 1 || config.parallel_workers < 1)
            throw std::invalid_argument("n_games and workers must be >= 1");
    } catch (const std::invalid_argument& e) {
        log << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        log << "i/o error: " << e.what() << "\n";
        return kIoError;
    }

    auto gateway = std::make_shared<gw::Gateway>(std::make_shared<gw::HttpTransport>(),
                                                 gw::RetryPolicy{}, config.base_seed);
    gateway->set_rate_limit(config.rate_limit_rps);

    try {
        storage::RunManifest manifest;
        manifest.label = config_path.filename().string();
        manifest.base_seed = config.base_seed;
        manifest.n_games = config.n_games;
        storage::RunWriter writer(out_dir, manifest);

        const int first = writer.completed();
        const int total = config.n_games;
        if (first >= total) {
            log << "run already complete (" << total << " games)\n";
            return kOk;
        }

        std::mutex mutex;
        std::condition_variable cv;
        std::map<int, GameRecord> finished;
        std::atomic<int> next{first};
        std::atomic<bool> failed{false};
        std::string failure;

        auto play_one = [&](int index) {
            RunConfig game_config = config;
            game_config.game.seed = config.base_seed + static_cast<std::uint64_t>(index);
            auto lineup = build_lineup(game_config, game_config.game.seed, gateway);
            RunMeta meta;
            meta.game_id = "game-" + std::to_string(game_config.game.seed);
            meta.seats = lineup.descriptors;
            return run_game(lineup.agents, game_config.game, hooks_from(game_config, gateway),
                            meta);
        };

        auto worker = [&] {
            while (!failed) {
                if (cancel && cancel->load()) return;
                int index = next.fetch_add(1);
                if (index >= total) return;
                try {
                    GameRecord record = play_one(index);
                    std::lock_guard lock(mutex);
                    finished.emplace(index, std::move(record));
                    cv.notify_all();
                } catch (const std::exception& e) {
                    std::lock_guard lock(mutex);
                    failed = true;
                    failure = e.what();
                    cv.notify_all();
                    return;
                }
            }
        };

        std::vector<std::thread> pool;
        int n_workers = std::min(config.parallel_workers, total - first);
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);

        // Commit in seed order so interrupted runs resume cleanly.
        int committed = first;
        {
            std::unique_lock lock(mutex);
            while (committed < total) {
                cv.wait(lock, [&] {
                    return finished.count(committed) > 0 || failed ||
                           (cancel && cancel->load());
                });
                while (finished.count(committed)) {
                    writer.append(finished.at(committed));
                    finished.erase(committed);
                    ++committed;
                }
                if (failed) break;
                if (cancel && cancel->load() && !finished.count(committed)) break;
            }
        }
        for (auto& t : pool) t.join();
        // Flush any contiguous results workers finished while we stopped.
        {
            std::lock_guard lock(mutex);
            while (finished.count(committed)) {
                writer.append(finished.at(committed));
                finished.erase(committed);
                ++committed;
            }
        }

        write_usage_log(out_dir / "usage.jsonl", *gateway);
        if (failed) {
            log << "simulation failed: " << failure << "\n";
            return kEndpointError;
        }
        log << "wrote " << (committed - first) << " records to " << out_dir.string() << " ("
            << committed << "/" << total << " complete)\n";
        return kOk;
    } catch (const std::exception& e) {
        log << "i/o error: " << e.what() << "\n";
        return kIoError;
    }
}

namespace {

json metric_or_null(const std::function<json()>& compute) {
    try {
        return compute();
    } catch (const metrics::MetricError&) {
        return nullptr;
    }
}

json curve_to_json(const std::vector<metrics::CurvePoint>& curve) {
    json out = json::array();
    for (const auto& p : curve) out.push_back({{"round", p.round}, {"value", p.value},
                                               {"support", p.support}});
    return out;
}

} // namespace

int cmd_metrics(const std::vector<std::filesystem::path>& run_dirs,
                const std::vector<std::string>& filter_flags,
                const std::filesystem::path& out_dir, std::ostream& log) {
    metrics::MetricFilter filter;
    try {
        filter = parse_filter_flags(filter_flags);
    } catch (const std::invalid_argument& e) {
        log << "config error: " << e.what() << "\n";
        return kConfigError;
    }

    metrics::RecordSet set;
    json excluded = json::array();
    for (const auto& dir : run_dirs) {
        try {
            auto records = storage::load_run(dir);
            for (auto& r : records) set.records.push_back(std::move(r));
        } catch (const std::exception& e) {
            excluded.push_back({{"run", dir.string()}, {"error", e.what()}});
        }
    }
    if (set.records.empty()) {
        log << "no readable records in the given runs\n";
        return kIoError;
    }
    bool imported = false, has_elo = false;
    for (const auto& r : set.records) {
        if (r.provenance == "imported_human") imported = true;
        for (const auto& s : r.seats)
            if (s.elo) has_elo = true;
    }
    set.provenance = imported ? "imported_human" : "simulated";

    json report;
    report["n_records"] = set.records.size();
    report["provenance"] = set.provenance;
    report["excluded_runs"] = excluded;
    report["filters"] = filter_flags;

    report["win_rate"] = json::object();
    report["win_rate"]["filtered"] =
        metric_or_null([&] { return json(metrics::win_rate(set, filter)); });
    for (Role role : {Role::liberal, Role::fascist, Role::hitler}) {
        metrics::MetricFilter f = filter;
        f.role = role;
        report["win_rate"][to_string(role)] =
            metric_or_null([&] { return json(metrics::win_rate(set, f)); });
    }
    report["avg_game_length"] =
        metric_or_null([&] { return json(metrics::avg_game_length(set)); });

    report["ending_distribution"] = metric_or_null([&] {
        json out = json::object();
        for (const auto& [kind, fraction] : metrics::ending_distribution(set))
            out[to_string(kind)] = fraction;
        return out;
    });

    auto yes_rates_for = [&](const metrics::MetricFilter& f) {
        json out = json::object();
        out["overall"] = metric_or_null([&] { return json(metrics::yes_rate(set, {}, f)); });
        for (auto bucket : {metrics::RoundBucket::early, metrics::RoundBucket::mid,
                            metrics::RoundBucket::late})
            out[metrics::to_string(bucket)] =
                metric_or_null([&] { return json(metrics::yes_rate(set, bucket, f)); });
        return out;
    };
    report["yes_rate"] = yes_rates_for(filter);
    if (has_elo) {
        // Elo split columns for human corpora.
        metrics::MetricFilter high = filter;
        high.elo_min = metrics::kHighEloThreshold;
        report["yes_rate_high_elo"] = yes_rates_for(high);
        report["high_elo_threshold"] = metrics::kHighEloThreshold;
    }

    report["ria"] = metric_or_null([&] {
        auto r = metrics::ria(set, filter);
        json out;
        out["overall"] = r.overall;
        out["n"] = r.n;
        for (const auto& [role, value] : r.by_target_role)
            out["by_target_role"][to_string(role)] = value;
        return out;
    });

    report["drr"] = metric_or_null([&] {
        auto r = metrics::drr(set, filter);
        json out;
        out["overall"] = r.overall;
        out["n"] = r.n;
        out["curve"] = curve_to_json(r.curve);
        return out;
    });

    report["gsir"] = metric_or_null([&] {
        json out = json::object();
        for (const auto& [role, value] : metrics::gsir(set, filter))
            out[to_string(role)] = value;
        return out;
    });

    report["policy_progression"] = json::object();
    for (Policy policy : {Policy::liberal, Policy::fascist})
        report["policy_progression"][to_string(policy)] = metric_or_null(
            [&] { return curve_to_json(metrics::policy_progression(set, policy)); });

    // Game-length comparison against an imported reference is meaningful only
    // when both kinds are present; report the per-provenance split instead.
    try {
        std::filesystem::create_directories(out_dir);
        write_text(out_dir / "report.json", report.dump(2) + "\n");

        std::string csv = "metric,key,value\n";
        std::function<void(const std::string&, const json&)> flatten =
            [&](const std::string& prefix, const json& node) {
                if (node.is_object()) {
                    for (const auto& [key, value] : node.items())
                        flatten(prefix.empty() ? key : prefix + "." + key, value);
                } else if (node.is_array()) {
                    int i = 0;
                    for (const auto& value : node)
                        flatten(prefix + "[" + std::to_string(i++) + "]", value);
                } else {
                    std::string head = prefix;
                    std::string key;
                    if (auto dot = prefix.find('.'); dot != std::string::npos) {
                        head = prefix.substr(0, dot);
                        key = prefix.substr(dot + 1);
                    }
                    csv += head + "," + key + "," + node.dump() + "\n";
                }
            };
        flatten("", report);
        write_text(out_dir / "report.csv", csv);
    } catch (const std::exception& e) {
        log << "i/o error: " << e.what() << "\n";
        return kIoError;
    }
    log << "metrics written to " << out_dir.string() << "\n";
    return kOk;
}

int cmd_replay_scenarios(const std::vector<std::filesystem::path>& run_dirs,
                         const std::string& agent_kind, const std::filesystem::path& config_path,
                         const std::filesystem::path& out_path, std::uint64_t seed,
                         std::ostream& log) {
    std::unique_ptr<Agent> agent;
    std::shared_ptr<gw::Gateway> gateway;
    try {
        if (agent_kind == "rule") {
            agent = std::make_unique<RuleAgent>();
        } else if (agent_kind == "random") {
            agent = std::make_unique<RandomAgent>(seed);
        } else if (agent_kind == "llm") {
            RunConfig config = parse_run_config(config_path);
            bool found = false;
            for (const auto& spec : config.seats) {
                if (spec.agent != "llm") continue;
                gateway = std::make_shared<gw::Gateway>(std::make_shared<gw::HttpTransport>(),
                                                        gw::RetryPolicy{}, seed);
                gateway->set_rate_limit(config.rate_limit_rps);
                LlmAgentOptions options;
                options.technique = spec.technique;
                agent = std::make_unique<LlmAgent>(gateway,
                                                   config.endpoints.at(spec.endpoint), options,
                                                   seed);
                found = true;
                break;
            }
            if (!found) throw std::invalid_argument("config defines no llm seat to evaluate");
        } else {
            throw std::invalid_argument("unknown replay agent kind '" + agent_kind + "'");
        }
    } catch (const std::invalid_argument& e) {
        log << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        log << "i/o error: " << e.what() << "\n";
        return kIoError;
    }

    std::vector<storage::Scenario> scenarios;
    json skipped = json::array();
    try {
        for (const auto& dir : run_dirs) {
            for (const auto& record : storage::load_run(dir)) {
                auto extraction = storage::scenario_extract(record);
                if (extraction.scenario)
                    scenarios.push_back(*extraction.scenario);
                else
                    skipped.push_back(
                        {{"game", record.game_id}, {"reason", extraction.skip_reason}});
            }
        }
    } catch (const std::exception& e) {
        log << "i/o error: " << e.what() << "\n";
        return kIoError;
    }
    if (scenarios.empty()) {
        log << "no replayable scenarios found\n";
        return kIoError;
    }

    auto alignment = metrics::scenario_alignment(scenarios, *agent);
    json report;
    report["agent"] = agent_kind;
    report["n_scenarios"] = alignment.n_scenarios;
    report["n_role_matching"] = alignment.n_role_matching;
    report["n_affiliation_matching"] = alignment.n_affiliation_matching;
    report["n_skipped_in_alignment"] = alignment.n_skipped;
    report["same_exact"] = alignment.same_exact;
    report["same_role"] = alignment.same_role;
    report["same_affiliation"] = alignment.same_affiliation;
    report["vote_agreement_same_role"] = alignment.vote_agreement_same_role;
    report["vote_agreement_same_affiliation"] = alignment.vote_agreement_same_affiliation;
    report["skipped_extractions"] = skipped;
    try {
        write_text(out_path, report.dump(2) + "\n");
    } catch (const std::exception& e) {
        log << "i/o error: " << e.what() << "\n";
        return kIoError;
    }
    log << "alignment report written to " << out_path.string() << "\n";
    return kOk;
}

namespace {

// Interactive seat reading menu choices and chat lines from a stream.
class HumanAgent : public Agent {
  public:
    HumanAgent(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

    std::string kind() const override { return "human"; }
    bool eof() const { return eof_; }

    Action decide(const AgentView& view) override {
        out_ << "\n-- " << view.name_of(view.own_seat) << ", it is your turn (round "
             << view.summary.round << ", " << to_string(view.summary.phase) << ") --\n";
        out_ << "You are: " << to_string(view.own_role) << "\n";
        if (!view.hand.empty()) {
            out_ << "Your cards:";
            for (std::size_t i = 0; i < view.hand.size(); ++i)
                out_ << " [" << i + 1 << "] " << to_string(view.hand[i]);
            out_ << "\n";
        }
        for (const auto& line : view.private_intel) out_ << line << "\n";
        auto labels = prompts::option_labels(view.legal, view.player_names);
        for (std::size_t i = 0; i < labels.size(); ++i)
            out_ << "  " << i + 1 << ". " << labels[i] << "\n";
        while (true) {
            out_ << "choice> " << std::flush;
            std::string line;
            if (!std::getline(in_, line)) {
                eof_ = true;
                return view.legal.front();
            }
            try {
                std::size_t index = std::stoul(line);
                if (index >= 1 && index <= view.legal.size()) return view.legal[index - 1];
            } catch (const std::exception&) {
            }
            out_ << "enter a number between 1 and " << view.legal.size() << "\n";
        }
    }

    std::string chat(const AgentView& view) override {
        out_ << "\n-- discussion, say something as " << view.name_of(view.own_seat)
             << " (empty to abstain) --\nchat> " << std::flush;
        std::string line;
        if (!std::getline(in_, line)) {
            eof_ = true;
            return "";
        }
        return line;
    }

  private:
    std::istream& in_;
    std::ostream& out_;
    bool eof_ = false;
};

} // namespace

int cmd_play(const std::filesystem::path& config_path, const std::filesystem::path& out_path,
             std::istream& in, std::ostream& out) {
    RunConfig config;
    try {
        config = parse_run_config(config_path);
    } catch (const std::invalid_argument& e) {
        out << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        out << "i/o error: " << e.what() << "\n";
        return kIoError;
    }

    auto gateway = std::make_shared<gw::Gateway>(std::make_shared<gw::HttpTransport>(),
                                                 gw::RetryPolicy{}, config.base_seed);
    gateway->set_rate_limit(config.rate_limit_rps);

    try {
        int human_seat = -1;
        for (std::size_t i = 0; i < config.seats.size(); ++i)
            if (config.seats[i].agent == "human") human_seat = static_cast<int>(i);
        if (human_seat < 0) {
            out << "config error: play needs one seat with agent \"human\"\n";
            return kConfigError;
        }

        RunConfig game_config = config;
        game_config.game.seed = config.base_seed;
        game_config.seats[human_seat].agent = "rule"; // placeholder, replaced below
        auto lineup = build_lineup(game_config, game_config.game.seed, gateway);
        auto human = std::make_unique<HumanAgent>(in, out);
        HumanAgent* human_ptr = human.get();
        lineup.owners[human_seat] = std::move(human);
        lineup.agents[human_seat] = lineup.owners[human_seat].get();
        lineup.descriptors[human_seat].agent_kind = "human";
        lineup.descriptors[human_seat].endpoint.clear();

        ProbeHooks hooks = hooks_from(game_config, gateway);
        hooks.should_abort = [human_ptr] { return human_ptr->eof(); };
        RunMeta meta;
        meta.game_id = "play-" + std::to_string(game_config.game.seed);
        meta.seats = lineup.descriptors;
        GameRecord record = run_game(lineup.agents, game_config.game, hooks, meta);

        if (record.outcome)
            out << "\nGame over: " << to_string(record.outcome->kind) << " ("
                << to_string(record.outcome->winner) << " win)\n";
        else
            out << "\nSession ended early (" << record.truncation.value_or("aborted") << ")\n";
        storage::save(record, out_path);
        out << "session saved to " << out_path.string() << "\n";
        return kOk;
    } catch (const std::exception& e) {
        out << "error: " << e.what() << "\n";
        return kIoError;
    }
}

int cmd_eval_state(const std::filesystem::path& state_path, std::ostream& out) {
    json doc;
    try {
        doc = read_json_file(state_path);
    } catch (const std::invalid_argument& e) {
        out << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        out << "i/o error: " << e.what() << "\n";
        return kIoError;
    }

    eval::EvalInput input;
    eval::PhaseWeights weights;
    try {
        input.liberal_policies = doc.at("liberal_policies").get<int>();
        input.fascist_policies = doc.at("fascist_policies").get<int>();
        input.deck_liberal = doc.at("deck_liberal").get<int>();
        input.deck_fascist = doc.at("deck_fascist").get<int>();
        input.round = doc.at("round").get<int>();
        if (doc.contains("president_party") && !doc["president_party"].is_null())
            input.president_party = party_from_string(doc["president_party"].get<std::string>());
        if (doc.contains("unlocked_powers"))
            for (const auto& p : doc["unlocked_powers"])
                input.unlocked_powers.push_back(power_from_string(p.get<std::string>()));
        input.hitler_seat = doc.value("hitler_seat", -1);
        if (doc.contains("truths"))
            for (const auto& [seat, role] : doc["truths"].items())
                input.truths[std::stoi(seat)] = role_from_string(role.get<std::string>());
        if (doc.contains("beliefs"))
            for (const auto& b : doc["beliefs"])
                input.beliefs[{b.at("observer").get<int>(), b.at("target").get<int>()}] =
                    guess_from_string(b.at("guess").get<std::string>());
        if (doc.contains("weights")) {
            const json& w = doc["weights"];
            weights.policy = w.value("policy", weights.policy);
            weights.deck = w.value("deck", weights.deck);
            weights.president = w.value("president", weights.president);
            weights.role_acc = w.value("role_acc", weights.role_acc);
            weights.danger = w.value("danger", weights.danger);
        }
        if (input.liberal_policies < 0 || input.liberal_policies > 5 ||
            input.fascist_policies < 0 || input.fascist_policies > 6 ||
            input.deck_liberal < 0 || input.deck_fascist < 0 ||
            input.deck_liberal + input.deck_fascist > 17 || input.round < 0)
            throw std::invalid_argument("state values out of range");
    } catch (const std::exception& e) {
        out << "config error: invalid state document: " << e.what() << "\n";
        return kConfigError;
    }

    auto components = eval::component_scores(input);
    double active_weight = weights.policy + weights.danger;
    if (components.deck) active_weight += weights.deck;
    if (components.president) active_weight += weights.president;
    if (components.role_acc) active_weight += weights.role_acc;
    double score = eval::gamestate_from_components(components, weights, input.round);

    auto line = [&](const char* name, std::optional<double> value, double weight) {
        out << "  " << name << ": ";
        if (value)
            out << *value << " (weight " << weight / active_weight << ")";
        else
            out << "inactive";
        out << "\n";
    };
    out << "components:\n";
    line("policy_progress", components.policy, weights.policy);
    line("deck_composition", components.deck, weights.deck);
    line("president", components.president, weights.president);
    line("role_accuracy", components.role_acc, weights.role_acc);
    line("hitler_danger", components.danger, weights.danger);
    out << "round: " << input.round << "\n";
    out << "score: " << score << "\n";
    out << "band: " << eval::score_band(score)
        << (score > 0 ? " liberal advantage" : (score < 0 ? " fascist advantage" : ""))
        << "\n";
    return kOk;
}

int cmd_annotate(const std::vector<std::filesystem::path>& run_dirs,
                 const std::string& taxonomy_name, const std::string& endpoint_name,
                 const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
                 int max_in_flight, std::ostream& log) {
    const annotation::Taxonomy* taxonomy = annotation::find_builtin(taxonomy_name);
    if (!taxonomy) {
        log << "config error: unknown taxonomy '" << taxonomy_name << "'\n";
        return kConfigError;
    }
    RunConfig config;
    try {
        config = parse_run_config(config_path);
        if (!config.endpoints.count(endpoint_name))
            throw std::invalid_argument("endpoint '" + endpoint_name + "' is not defined");
    } catch (const std::invalid_argument& e) {
        log << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        log << "i/o error: " << e.what() << "\n";
        return kIoError;
    }

    std::vector<GameRecord> records;
    try {
        for (const auto& dir : run_dirs)
            for (auto& record : storage::load_run(dir))
                if (!record.chat.empty()) records.push_back(std::move(record));
    } catch (const std::exception& e) {
        log << "i/o error: " << e.what() << "\n";
        return kIoError;
    }
    if (records.empty()) {
        log << "no records with chat to annotate\n";
        return kIoError;
    }

    auto gateway = std::make_shared<gw::Gateway>(std::make_shared<gw::HttpTransport>(),
                                                 gw::RetryPolicy{}, config.base_seed);
    gateway->set_rate_limit(config.rate_limit_rps);
    auto corpus = annotation::annotate_corpus(*gateway, config.endpoints.at(endpoint_name),
                                              *taxonomy, records, 5, max_in_flight);

    if (corpus.annotations.empty() && !corpus.failures.empty()) {
        log << "endpoint failure: every annotation request failed\n";
        return kEndpointError;
    }

    try {
        std::filesystem::create_directories(out_dir);
        std::string lines;
        for (const auto& a : corpus.annotations) {
            json j;
            j["game"] = a.game_id;
            j["message_index"] = a.message_index;
            j["speaker"] = a.speaker;
            j["labels"] = a.labels;
            lines += j.dump() + "\n";
        }
        write_text(out_dir / "annotations.jsonl", lines);

        json failure_report = json::array();
        for (const auto& f : corpus.failures)
            failure_report.push_back({{"game", f.game_id},
                                      {"message_index", f.message_index},
                                      {"reason", f.reason}});
        write_text(out_dir / "failures.json", failure_report.dump(2) + "\n");
        write_usage_log(out_dir / "usage.jsonl", *gateway);
    } catch (const std::exception& e) {
        log << "i/o error: " << e.what() << "\n";
        return kIoError;
    }
    log << "wrote " << corpus.annotations.size() << " annotations ("
        << corpus.failures.size() << " failures) to " << out_dir.string() << "\n";
    return kOk;
}

int cmd_eval_annotator(const std::filesystem::path& predicted_path,
                       const std::filesystem::path& gold_path, const std::string& taxonomy_name,
                       const std::filesystem::path& out_path, std::ostream& log) {
    const annotation::Taxonomy* taxonomy = annotation::find_builtin(taxonomy_name);
    if (!taxonomy) {
        log << "config error: unknown taxonomy '" << taxonomy_name << "'\n";
        return kConfigError;
    }

    auto read_labels = [](const std::filesystem::path& path) {
        std::map<std::pair<std::string, int>, std::set<std::string>> out;
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open " + path.string());
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json j = json::parse(line);
            std::set<std::string> labels;
            for (const auto& l : j.at("labels")) labels.insert(l.get<std::string>());
            out[{j.at("game").get<std::string>(), j.at("message_index").get<int>()}] = labels;
        }
        return out;
    };

    try {
        auto predicted = read_labels(predicted_path);
        auto gold = read_labels(gold_path);
        if (predicted.size() != gold.size())
            throw std::invalid_argument("predicted and gold files differ in message count");
        std::vector<std::set<std::string>> p, g;
        for (const auto& [key, labels] : gold) {
            auto it = predicted.find(key);
            if (it == predicted.end())
                throw std::invalid_argument("missing prediction for " + key.first +
                                            " message " + std::to_string(key.second));
            p.push_back(it->second);
            g.push_back(labels);
        }
        auto quality = annotation::eval_annotator(p, g, *taxonomy);
        json report;
        report["taxonomy"] = taxonomy->name;
        report["n_messages"] = g.size();
        report["macro_f1"] = quality.macro_f1;
        report["hamming_loss"] = quality.hamming_loss;
        report["macro_precision"] = quality.macro_precision;
        report["macro_recall"] = quality.macro_recall;
        write_text(out_path, report.dump(2) + "\n");
        log << "annotator evaluation written to " << out_path.string() << "\n";
        return kOk;
    } catch (const std::invalid_argument& e) {
        log << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        log << "i/o error: " << e.what() << "\n";
        return kIoError;
    }
}

int cmd_ingest(const std::filesystem::path& dump_path, const std::string& format,
               const std::filesystem::path& out_dir, std::ostream& log) {
    std::unique_ptr<storage::FormatAdapter> adapter;
    if (format == "example-dump") {
        adapter = storage::example_dump_adapter();
    } else {
        log << "config error: unknown dump format '" << format << "'\n";
        return kConfigError;
    }

    try {
        auto [set, report] = storage::import_human_dump(dump_path, *adapter);
        storage::RunManifest manifest;
        manifest.label = "ingest:" + dump_path.filename().string();
        manifest.n_games = static_cast<int>(set.records.size());
        storage::RunWriter writer(out_dir, manifest);
        for (const auto& record : set.records) writer.append(record);

        json j;
        j["games_in"] = report.games_in;
        j["games_kept"] = report.games_kept;
        j["dropped_custom_settings"] = report.dropped_custom_settings;
        j["messages_dropped_spectator"] = report.messages_dropped_spectator;
        j["messages_dropped_outside_game"] = report.messages_dropped_outside_game;
        j["games_unconvertible"] = report.games_unconvertible;
        write_text(out_dir / "cleaning_report.json", j.dump(2) + "\n");
        log << "imported " << set.records.size() << " games to " << out_dir.string() << "\n";
        return kOk;
    } catch (const SchemaError& e) {
        log << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        log << "i/o error: " << e.what() << "\n";
        return kIoError;
    }
}

} // namespace shsim::cli
