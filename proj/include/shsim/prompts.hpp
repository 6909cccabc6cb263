#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shsim/agent.hpp"
#include "shsim/gateway.hpp"
#include "shsim/view.hpp"

namespace shsim::prompts {

enum class RequestKind { action, chat, belief };

struct PromptRequest {
    RequestKind kind = RequestKind::action;
    int belief_target = -1; // for RequestKind::belief
    // Optional reasoning produced by a prior CoT completion; included as an
    // assistant turn before the final instruction.
    std::optional<std::string> reasoning;
};

// Renders the full message list for one agent request: the system prompt
// (role-conditioned variant when the technique asks for it, memory section
// when enabled, strategy-guide excerpt when enabled) plus the request turn.
std::vector<gw::Message> build_prompt(const AgentView& view, const TechniqueConfig& technique,
                                      const PromptRequest& request);

// The "think first" instruction used for the extra CoT completion.
std::vector<gw::Message> build_cot_prompt(const AgentView& view,
                                          const TechniqueConfig& technique);

// Option labels as shown to the model, in legal-action order.
std::vector<std::string> option_labels(const std::vector<Action>& legal,
                                       const std::vector<std::string>& names);
std::string render_option_menu(const std::vector<std::string>& labels);

// Constrained-choice parsing: the reply must single out exactly one option,
// either by its number or by its label (word-bounded, case-insensitive).
// Anything else is a parse failure.
std::optional<std::size_t> parse_option_choice(const std::string& reply,
                                               const std::vector<std::string>& labels);

// Standard menu for belief probes, aligned with the Guess enum.
const std::vector<std::string>& guess_labels();

std::string strategy_guide_excerpt(Phase phase);

// Truncates to `cap` characters, appending a marker when anything was cut.
std::string truncate_with_marker(const std::string& text, std::size_t cap);

} // namespace shsim::prompts
