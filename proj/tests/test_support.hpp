#pragma once

#include <functional>
#include <mutex>
#include <vector>

#include "shsim/gateway.hpp"
#include "shsim/view.hpp"

namespace shsim::test {

// Transport that answers from a handler function; falls back to echoing the
// last message. Thread-safe call counting.
class FnTransport : public gw::Transport {
  public:
    using Handler =
        std::function<gw::Result<gw::Completion>(const std::vector<gw::Message>&, int call_index)>;

    explicit FnTransport(Handler handler = nullptr) : handler_(std::move(handler)) {}

    gw::Result<gw::Completion> send(const gw::ModelEndpoint&,
                                    const std::vector<gw::Message>& messages,
                                    const gw::GenerationParams&) override {
        int index;
        {
            std::lock_guard lock(mutex_);
            index = calls_++;
            if (record_) transcript_.push_back(messages);
        }
        if (handler_) return handler_(messages, index);
        return gw::Completion{messages.back().content, std::nullopt, std::nullopt};
    }

    int calls() const {
        std::lock_guard lock(mutex_);
        return calls_;
    }

    void record_transcript(bool on) { record_ = on; }
    std::vector<std::vector<gw::Message>> transcript() const {
        std::lock_guard lock(mutex_);
        return transcript_;
    }

  private:
    mutable std::mutex mutex_;
    Handler handler_;
    int calls_ = 0;
    bool record_ = false;
    std::vector<std::vector<gw::Message>> transcript_;
};

inline gw::ModelEndpoint test_endpoint() {
    return {"mock", "http://localhost:1", "mock-model", "", 1000};
}

// Minimal hand-built view for policy-function tests.
inline AgentView make_test_view(Role role, std::vector<Action> legal, int n_players = 5) {
    AgentView v;
    v.own_seat = 0;
    v.own_role = role;
    v.player_names = {"Alice", "Bob", "Charlie", "Dana", "Eve",
                      "Frank", "Grace", "Henry",  "Iris", "Jack"};
    v.player_names.resize(n_players);
    v.legal = std::move(legal);
    v.summary.n_players = n_players;
    v.summary.round = 1;
    for (int i = 0; i < n_players; ++i) v.summary.alive_seats.push_back(i);
    return v;
}

} // namespace shsim::test
