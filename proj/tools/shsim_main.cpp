#include <atomic>
#include <csignal>
#include <iostream>

#include "CLI11.hpp"

#include "shsim/cli.hpp"

namespace {

std::atomic<bool> g_cancel{false};

void handle_sigint(int) { g_cancel = true; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"shsim - Secret Hitler simulation and evaluation toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path = "out";
    std::vector<std::string> run_dirs;
    std::vector<std::string> filters;
    std::optional<int> n_games;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;

    auto* simulate = app.add_subcommand("simulate", "run a batch of games");
    simulate->add_option("--config", config_path, "run configuration file")->required();
    simulate->add_option("--out", out_path, "run directory");
    simulate->add_option("--games", n_games, "number of games (overrides config)");
    simulate->add_option("--seed", seed, "base seed (overrides config)");
    simulate->add_option("--workers", workers, "parallel games (overrides config)");

    auto* metrics_cmd = app.add_subcommand("metrics", "compute the metric report for runs");
    metrics_cmd->add_option("runs", run_dirs, "run directories")->required();
    metrics_cmd->add_option("--filter", filters,
                            "seat filters: role=, agent=, affiliation=, elo-min=");
    metrics_cmd->add_option("--out", out_path, "report directory");

    std::string agent_kind = "rule";
    auto* replay = app.add_subcommand("replay-scenarios",
                                      "replay decisive rounds against expert choices");
    replay->add_option("runs", run_dirs, "corpus run directories")->required();
    replay->add_option("--agent", agent_kind, "rule | random | llm");
    replay->add_option("--config", config_path, "run config (for llm agents)");
    replay->add_option("--out", out_path, "report file");
    std::uint64_t replay_seed = 1;
    replay->add_option("--seed", replay_seed, "agent seed");

    auto* play = app.add_subcommand("play", "play one interactive game");
    play->add_option("--config", config_path, "run configuration file")->required();
    play->add_option("--out", out_path, "record output file");

    std::string state_path;
    auto* eval_state = app.add_subcommand("eval-state", "score a serialized game state");
    eval_state->add_option("state", state_path, "EvalInput document")->required();

    std::string taxonomy = "cialdini";
    std::string endpoint;
    int in_flight = 4;
    auto* annotate = app.add_subcommand("annotate", "annotate run chat with an LLM annotator");
    annotate->add_option("runs", run_dirs, "run directories")->required();
    annotate->add_option("--taxonomy", taxonomy, "cialdini | jailbreak | among_us");
    annotate->add_option("--endpoint", endpoint, "annotator endpoint name")->required();
    annotate->add_option("--config", config_path, "config defining endpoints")->required();
    annotate->add_option("--out", out_path, "output directory");
    annotate->add_option("--max-in-flight", in_flight, "parallel annotation requests");

    std::string gold_path, predicted_path;
    auto* eval_annotator = app.add_subcommand("eval-annotator",
                                              "score predicted annotations against gold labels");
    eval_annotator->add_option("--predicted", predicted_path, "predicted annotations jsonl")
        ->required();
    eval_annotator->add_option("--gold", gold_path, "gold annotations jsonl")->required();
    eval_annotator->add_option("--taxonomy", taxonomy, "taxonomy name");
    eval_annotator->add_option("--out", out_path, "report file");

    std::string dump_path, format = "example-dump";
    auto* ingest = app.add_subcommand("ingest", "import an external game dump");
    ingest->add_option("dump", dump_path, "dump file")->required();
    ingest->add_option("--format", format, "dump format adapter");
    ingest->add_option("--out", out_path, "run directory for imported records");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : shsim::cli::kConfigError;
    }

    std::vector<std::filesystem::path> runs(run_dirs.begin(), run_dirs.end());

    if (simulate->parsed()) {
        std::signal(SIGINT, handle_sigint);
        return shsim::cli::cmd_simulate(config_path, out_path, n_games, seed, workers,
                                        &g_cancel, std::cout);
    }
    if (metrics_cmd->parsed())
        return shsim::cli::cmd_metrics(runs, filters, out_path, std::cout);
    if (replay->parsed())
        return shsim::cli::cmd_replay_scenarios(runs, agent_kind, config_path, out_path,
                                                replay_seed, std::cout);
    if (play->parsed()) return shsim::cli::cmd_play(config_path, out_path, std::cin, std::cout);
    if (eval_state->parsed()) return shsim::cli::cmd_eval_state(state_path, std::cout);
    if (annotate->parsed())
        return shsim::cli::cmd_annotate(runs, taxonomy, endpoint, config_path, out_path,
                                        in_flight, std::cout);
    if (eval_annotator->parsed())
        return shsim::cli::cmd_eval_annotator(predicted_path, gold_path, taxonomy, out_path,
                                              std::cout);
    if (ingest->parsed()) return shsim::cli::cmd_ingest(dump_path, format, out_path, std::cout);
    return shsim::cli::kConfigError;
}
