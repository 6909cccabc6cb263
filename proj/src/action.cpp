#include "shsim/action.hpp"

namespace shsim {

std::string to_string(ActionKind k) {
    switch (k) {
    case ActionKind::nominate: return "nominate";
    case ActionKind::vote: return "vote";
    case ActionKind::president_discard: return "president_discard";
    case ActionKind::chancellor_enact: return "chancellor_enact";
    case ActionKind::investigate: return "investigate";
    case ActionKind::execute: return "execute";
    case ActionKind::special_election: return "special_election";
    case ActionKind::policy_peek_ack: return "policy_peek_ack";
    case ActionKind::veto_request: return "veto_request";
    case ActionKind::veto_consent: return "veto_consent";
    case ActionKind::chat: return "chat";
    }
    return "?";
}

ActionKind action_kind_from_string(const std::string& s) {
    if (s == "nominate") return ActionKind::nominate;
    if (s == "vote") return ActionKind::vote;
    if (s == "president_discard") return ActionKind::president_discard;
    if (s == "chancellor_enact") return ActionKind::chancellor_enact;
    if (s == "investigate") return ActionKind::investigate;
    if (s == "execute") return ActionKind::execute;
    if (s == "special_election") return ActionKind::special_election;
    if (s == "policy_peek_ack") return ActionKind::policy_peek_ack;
    if (s == "veto_request") return ActionKind::veto_request;
    if (s == "veto_consent") return ActionKind::veto_consent;
    if (s == "chat") return ActionKind::chat;
    throw std::invalid_argument("not a valid action kind: '" + s + "'");
}

namespace {
std::string name_of(int seat, const std::vector<std::string>& names) {
    if (seat >= 0 && seat < static_cast<int>(names.size())) return names[seat];
    return "seat " + std::to_string(seat);
}
} // namespace

std::string describe(const Action& a, const std::vector<std::string>& names) {
    switch (a.kind) {
    case ActionKind::nominate: return "Nominate " + name_of(a.target, names);
    case ActionKind::vote: return a.ja ? "Ja" : "Nein";
    case ActionKind::president_discard:
        return "Discard card " + std::to_string(a.card_index + 1);
    case ActionKind::chancellor_enact:
        return "Enact card " + std::to_string(a.card_index + 1);
    case ActionKind::investigate: return "Investigate " + name_of(a.target, names);
    case ActionKind::execute: return "Execute " + name_of(a.target, names);
    case ActionKind::special_election:
        return "Call special election for " + name_of(a.target, names);
    case ActionKind::policy_peek_ack: return "Acknowledge policy peek";
    case ActionKind::veto_request: return "Request veto";
    case ActionKind::veto_consent: return a.accept ? "Accept veto" : "Reject veto";
    case ActionKind::chat: return "Say something";
    }
    return "?";
}

} // namespace shsim
