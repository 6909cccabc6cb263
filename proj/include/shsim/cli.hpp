#pragma once

#include <atomic>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "shsim/metrics.hpp"

namespace shsim::cli {

// Process exit codes, one class per failure family.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 2;
inline constexpr int kIoError = 3;
inline constexpr int kEndpointError = 4;

// Declarative run setup parsed from the --config document; flags override
// file values.
struct SeatSpec {
    std::string agent = "reputation"; // random | rule | reputation | llm | human
    std::string endpoint;             // endpoint name for llm seats
    TechniqueConfig technique;
};

struct RunConfig {
    GameConfig game;
    std::vector<SeatSpec> seats;
    std::map<std::string, gw::ModelEndpoint> endpoints;
    ProbeConfig probes;
    std::string deception_endpoint; // annotator endpoint when deception is on
    std::string baseline_chat_endpoint; // LLM chat for baseline agents, optional
    int n_games = 1;
    std::uint64_t base_seed = 1;
    int parallel_workers = 1;
    double rate_limit_rps = 0.0;
    eval::PhaseWeights weights;
};

RunConfig parse_run_config(const std::filesystem::path& path);

// Filter flags of the form role=..., agent=..., affiliation=..., elo-min=...
metrics::MetricFilter parse_filter_flags(const std::vector<std::string>& flags);

int cmd_simulate(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
                 std::optional<int> n_games, std::optional<std::uint64_t> seed,
                 std::optional<int> workers, std::atomic<bool>* cancel, std::ostream& log);

int cmd_metrics(const std::vector<std::filesystem::path>& run_dirs,
                const std::vector<std::string>& filter_flags,
                const std::filesystem::path& out_dir, std::ostream& log);

int cmd_replay_scenarios(const std::vector<std::filesystem::path>& run_dirs,
                         const std::string& agent_kind, const std::filesystem::path& config_path,
                         const std::filesystem::path& out_path, std::uint64_t seed,
                         std::ostream& log);

int cmd_play(const std::filesystem::path& config_path, const std::filesystem::path& out_path,
             std::istream& in, std::ostream& out);

int cmd_eval_state(const std::filesystem::path& state_path, std::ostream& out);

int cmd_annotate(const std::vector<std::filesystem::path>& run_dirs,
                 const std::string& taxonomy_name, const std::string& endpoint_name,
                 const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
                 int max_in_flight, std::ostream& log);

int cmd_eval_annotator(const std::filesystem::path& predicted_path,
                       const std::filesystem::path& gold_path, const std::string& taxonomy_name,
                       const std::filesystem::path& out_path, std::ostream& log);

int cmd_ingest(const std::filesystem::path& dump_path, const std::string& format,
               const std::filesystem::path& out_dir, std::ostream& log);

} // namespace shsim::cli
