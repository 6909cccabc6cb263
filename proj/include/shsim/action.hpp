#pragma once

#include <string>
#include <vector>

#include "shsim/types.hpp"

namespace shsim {

enum class ActionKind {
    nominate,
    vote,
    president_discard,
    chancellor_enact,
    investigate,
    execute,
    special_election,
    policy_peek_ack,
    veto_request,
    veto_consent,
    chat,
};

// The closed set of legal moves. Field usage depends on kind:
//   target      - nominate / investigate / execute / special_election
//   ja          - vote; accept - veto_consent
//   card_index  - president_discard (0..2) / chancellor_enact (0..1)
//   text        - chat
struct Action {
    ActionKind kind = ActionKind::chat;
    int target = -1;
    bool ja = false;
    bool accept = false;
    int card_index = -1;
    std::string text;

    bool operator==(const Action&) const = default;

    static Action make(ActionKind kind) {
        Action a;
        a.kind = kind;
        return a;
    }
    static Action nominate(int seat) {
        Action a = make(ActionKind::nominate);
        a.target = seat;
        return a;
    }
    static Action vote(bool ja) {
        Action a = make(ActionKind::vote);
        a.ja = ja;
        return a;
    }
    static Action president_discard(int idx) {
        Action a = make(ActionKind::president_discard);
        a.card_index = idx;
        return a;
    }
    static Action chancellor_enact(int idx) {
        Action a = make(ActionKind::chancellor_enact);
        a.card_index = idx;
        return a;
    }
    static Action investigate(int seat) {
        Action a = make(ActionKind::investigate);
        a.target = seat;
        return a;
    }
    static Action execute(int seat) {
        Action a = make(ActionKind::execute);
        a.target = seat;
        return a;
    }
    static Action special_election(int seat) {
        Action a = make(ActionKind::special_election);
        a.target = seat;
        return a;
    }
    static Action policy_peek_ack() { return make(ActionKind::policy_peek_ack); }
    static Action veto_request() { return make(ActionKind::veto_request); }
    static Action veto_consent(bool accept) {
        Action a = make(ActionKind::veto_consent);
        a.accept = accept;
        return a;
    }
    static Action chat(std::string text) {
        Action a = make(ActionKind::chat);
        a.text = std::move(text);
        return a;
    }
};

std::string to_string(ActionKind k);
ActionKind action_kind_from_string(const std::string& s);

// Short human-readable label, used for option menus and logs.
// `names` maps seat index to player name.
std::string describe(const Action& a, const std::vector<std::string>& names);

} // namespace shsim
