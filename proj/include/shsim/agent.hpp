#pragma once

#include <optional>
#include <string>

#include "shsim/view.hpp"

namespace shsim {

// Reasoning-technique toggles for LLM seats; all-false is the base setup.
struct TechniqueConfig {
    bool cot = false;
    bool memory = false;
    bool role_prompt = false;
    bool strategy_guide = false;

    bool operator==(const TechniqueConfig&) const = default;
};

// Public, structured happenings fed to observing agents (reputation updates
// work purely from these).
struct PublicEvent {
    enum class Kind {
        government_elected,
        election_failed,
        policy_enacted,
        chaos_policy,
        execution,
    };
    Kind kind = Kind::policy_enacted;
    int round = 0;
    std::optional<Policy> policy;
    std::optional<int> president;
    std::optional<int> chancellor;
    std::optional<int> target;
};

class Agent {
  public:
    virtual ~Agent() = default;

    virtual std::string kind() const = 0;

    // Non-chat decision among view.legal (never empty when called).
    virtual Action decide(const AgentView& view) = 0;

    // One discussion message; empty string = abstention.
    virtual std::string chat(const AgentView& view) { (void)view; return ""; }

    // Private belief probe about another seat.
    virtual Guess believe(const AgentView& view, int target) {
        (void)view;
        (void)target;
        return Guess::unknown;
    }

    // Public event feed, called by the runner after it applies actions.
    virtual void observe(const PublicEvent& event) { (void)event; }

    // Reports and clears a pending substitution note (set when the agent fell
    // back to a random legal action); the runner logs it.
    virtual std::optional<std::string> take_substitution_note() { return std::nullopt; }
};

} // namespace shsim
