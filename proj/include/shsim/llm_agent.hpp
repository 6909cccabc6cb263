#pragma once

#include <memory>

#include "shsim/agent.hpp"
#include "shsim/gateway.hpp"
#include "shsim/prompts.hpp"
#include "shsim/rng.hpp"

namespace shsim {

struct LlmAgentOptions {
    TechniqueConfig technique;
    gw::GenerationParams params{0.6, 1000};
    int parse_retries = 3;       // extra attempts after the first bad reply
    std::size_t chat_cap = 500;  // characters per discussion message
    std::size_t memory_cap = 8000;
};

// A seat driven by an OpenAI-compatible model. Decisions go through the
// constrained-choice protocol; reasoning (CoT) runs as a separate private
// completion and never enters public chat by itself.
class LlmAgent : public Agent {
  public:
    LlmAgent(std::shared_ptr<gw::Gateway> gateway, gw::ModelEndpoint endpoint,
             LlmAgentOptions options, std::uint64_t fallback_seed);

    std::string kind() const override { return "llm"; }
    Action decide(const AgentView& view) override;
    std::string chat(const AgentView& view) override;
    Guess believe(const AgentView& view, int target) override;
    std::optional<std::string> take_substitution_note() override;

    const std::string& memory() const { return memory_; }
    const TechniqueConfig& technique() const { return options_.technique; }

  private:
    AgentView with_memory(const AgentView& view) const;
    void remember(const std::string& entry);

    std::shared_ptr<gw::Gateway> gateway_;
    gw::ModelEndpoint endpoint_;
    LlmAgentOptions options_;
    Rng fallback_rng_;
    std::string memory_;
    std::optional<std::string> substitution_note_;
};

} // namespace shsim
