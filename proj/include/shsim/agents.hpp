#pragma once

#include <deque>
#include <functional>
#include <map>

#include "shsim/agent.hpp"
#include "shsim/rng.hpp"

namespace shsim {

// Chat hook for baseline agents: their in-game decisions are algorithmic, but
// discussion messages can still be delegated to a language model.
using ChatProvider = std::function<std::string(const AgentView&)>;

Action random_decide(const AgentView& view, Rng& rng);

// Deterministic strategy-guide player. Pure function of the view; when no
// rule fires, used_fallback is set and the first legal action is returned.
Action rule_decide(const AgentView& view);
Action rule_decide_ex(const AgentView& view, bool* used_fallback);

struct ReputationTable {
    std::map<int, double> scores; // seat -> [-5, 5]

    double get(int seat) const;
    void add(int seat, double delta); // clamps into [-5, 5]
};

// Enacted policies move the acting chancellor by +-1.0 and the president by
// +-0.5 (liberal up, fascist down). Non-government events leave the table
// untouched.
ReputationTable reputation_update(ReputationTable table, const PublicEvent& event);

// Weighted random choice: options targeting a seat are weighted by
// 2^(reputation/2.5) for cooperative picks, mirrored for hostile ones.
Action reputation_decide(const AgentView& view, const ReputationTable& table, Rng& rng);

class RandomAgent : public Agent {
  public:
    explicit RandomAgent(std::uint64_t seed, ChatProvider chat = nullptr)
        : rng_(seed), chat_(std::move(chat)) {}

    std::string kind() const override { return "random"; }
    Action decide(const AgentView& view) override { return random_decide(view, rng_); }
    std::string chat(const AgentView& view) override { return chat_ ? chat_(view) : ""; }

  private:
    Rng rng_;
    ChatProvider chat_;
};

class RuleAgent : public Agent {
  public:
    explicit RuleAgent(ChatProvider chat = nullptr) : chat_(std::move(chat)) {}

    std::string kind() const override { return "rule"; }
    Action decide(const AgentView& view) override { return rule_decide(view); }
    std::string chat(const AgentView& view) override { return chat_ ? chat_(view) : ""; }
    Guess believe(const AgentView& view, int target) override;

  private:
    ChatProvider chat_;
};

class ReputationAgent : public Agent {
  public:
    explicit ReputationAgent(std::uint64_t seed, ChatProvider chat = nullptr)
        : rng_(seed), chat_(std::move(chat)) {}

    std::string kind() const override { return "reputation"; }
    Action decide(const AgentView& view) override {
        return reputation_decide(view, table_, rng_);
    }
    std::string chat(const AgentView& view) override { return chat_ ? chat_(view) : ""; }
    Guess believe(const AgentView& view, int target) override;
    void observe(const PublicEvent& event) override {
        table_ = reputation_update(std::move(table_), event);
    }

    const ReputationTable& table() const { return table_; }

  private:
    ReputationTable table_;
    Rng rng_;
    ChatProvider chat_;
};

// Test and fixture agent: plays queued actions/messages/guesses and falls
// back to the first legal action when its script runs dry.
class ScriptedAgent : public Agent {
  public:
    ScriptedAgent() = default;

    std::string kind() const override { return "scripted"; }

    ScriptedAgent& queue_action(Action a) {
        actions_.push_back(std::move(a));
        return *this;
    }
    ScriptedAgent& queue_chat(std::string text) {
        chats_.push_back(std::move(text));
        return *this;
    }
    ScriptedAgent& queue_guess(Guess g) {
        guesses_.push_back(g);
        return *this;
    }
    void set_decide_fn(std::function<Action(const AgentView&)> fn) { decide_fn_ = std::move(fn); }
    void set_believe_fn(std::function<Guess(const AgentView&, int)> fn) {
        believe_fn_ = std::move(fn);
    }

    Action decide(const AgentView& view) override;
    std::string chat(const AgentView& view) override;
    Guess believe(const AgentView& view, int target) override;

  private:
    std::deque<Action> actions_;
    std::deque<std::string> chats_;
    std::deque<Guess> guesses_;
    std::function<Action(const AgentView&)> decide_fn_;
    std::function<Guess(const AgentView&, int)> believe_fn_;
};

} // namespace shsim
