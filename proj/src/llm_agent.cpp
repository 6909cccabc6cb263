#include "shsim/llm_agent.hpp"

namespace shsim {

LlmAgent::LlmAgent(std::shared_ptr<gw::Gateway> gateway, gw::ModelEndpoint endpoint,
                   LlmAgentOptions options, std::uint64_t fallback_seed)
    : gateway_(std::move(gateway)),
      endpoint_(std::move(endpoint)),
      options_(std::move(options)),
      fallback_rng_(fallback_seed) {}

AgentView LlmAgent::with_memory(const AgentView& view) const {
    AgentView v = view;
    v.private_memory = memory_;
    return v;
}

void LlmAgent::remember(const std::string& entry) {
    if (!memory_.empty()) memory_ += "\n";
    memory_ += entry;
    if (memory_.size() > options_.memory_cap)
        memory_ = memory_.substr(memory_.size() - options_.memory_cap);
}

Action LlmAgent::decide(const AgentView& raw_view) {
    AgentView view = with_memory(raw_view);
    const auto labels = prompts::option_labels(view.legal, view.player_names);

    prompts::PromptRequest request;
    request.kind = prompts::RequestKind::action;

    std::string reasoning;
    if (options_.technique.cot) {
        auto messages = prompts::build_cot_prompt(view, options_.technique);
        auto result = gateway_->complete(endpoint_, messages, options_.params);
        if (result.ok()) {
            reasoning = result.value();
            request.reasoning = reasoning;
        }
    }

    std::string failure = "no attempt";
    for (int attempt = 0; attempt <= options_.parse_retries; ++attempt) {
        auto messages = prompts::build_prompt(view, options_.technique, request);
        auto result = gateway_->complete(endpoint_, messages, options_.params);
        if (!result.ok()) {
            failure = "gateway error: " + gw::to_string(result.error().kind);
            break; // the gateway already retried transport-level problems
        }
        auto choice = prompts::parse_option_choice(result.value(), labels);
        if (choice) {
            Action action = view.legal[*choice];
            if (options_.technique.memory) {
                std::string entry = "[round " + std::to_string(view.summary.round) + "] chose: " +
                                    labels[*choice];
                if (options_.technique.cot && !reasoning.empty())
                    entry += "\n[round " + std::to_string(view.summary.round) +
                             " thoughts] " + reasoning;
                remember(entry);
            }
            return action;
        }
        failure = "unparseable choice after " + std::to_string(attempt + 1) + " attempts";
    }

    Action fallback = view.legal[bounded(fallback_rng_, view.legal.size())];
    substitution_note_ = failure + "; substituted a random legal action";
    if (options_.technique.memory)
        remember("[round " + std::to_string(view.summary.round) + "] fallback: " +
                 prompts::option_labels({fallback}, view.player_names).front());
    return fallback;
}

std::string LlmAgent::chat(const AgentView& raw_view) {
    AgentView view = with_memory(raw_view);
    prompts::PromptRequest request;
    request.kind = prompts::RequestKind::chat;
    auto messages = prompts::build_prompt(view, options_.technique, request);
    auto result = gateway_->complete(endpoint_, messages, options_.params);
    if (!result.ok()) return ""; // abstention; the runner records it
    return prompts::truncate_with_marker(result.value(), options_.chat_cap);
}

Guess LlmAgent::believe(const AgentView& raw_view, int target) {
    AgentView view = with_memory(raw_view);
    prompts::PromptRequest request;
    request.kind = prompts::RequestKind::belief;
    request.belief_target = target;
    auto messages = prompts::build_prompt(view, options_.technique, request);

    for (int attempt = 0; attempt <= options_.parse_retries; ++attempt) {
        auto result = gateway_->complete(endpoint_, messages, options_.params);
        if (!result.ok()) break;
        auto choice = prompts::parse_option_choice(result.value(), prompts::guess_labels());
        if (choice) {
            switch (*choice) {
            case 0: return Guess::liberal;
            case 1: return Guess::fascist;
            case 2: return Guess::hitler;
            default: return Guess::unknown;
            }
        }
    }
    return Guess::unknown; // unparseable answers score as unknown
}

std::optional<std::string> LlmAgent::take_substitution_note() {
    auto note = substitution_note_;
    substitution_note_.reset();
    return note;
}

} // namespace shsim
