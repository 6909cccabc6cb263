#include "shsim/prompts.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "shsim_assets.hpp"

namespace shsim::prompts {

namespace {

void replace_all(std::string& text, const std::string& token, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = text.find(token, pos)) != std::string::npos) {
        text.replace(pos, token.size(), value);
        pos += value.size();
    }
}

std::string role_line(const AgentView& view) {
    std::string line = to_string(view.own_role);
    if (view.own_role == Role::hitler) line += " (Fascist)";
    return line;
}

std::string joined_log(const AgentView& view) {
    std::string out;
    for (const auto& line : view.public_log) {
        if (!out.empty()) out += "\n";
        out += line;
    }
    return out.empty() ? "(nothing yet)" : out;
}

std::string joined_chat(const AgentView& view) {
    std::string out;
    for (const auto& entry : view.chat_window) {
        if (!out.empty()) out += "\n";
        out += view.name_of(entry.speaker) + ": " + entry.text;
    }
    return out.empty() ? "(nothing yet)" : out;
}

std::string role_guidance(Role role) {
    switch (role) {
    case Role::liberal: return assets::prompts_role_guidance_liberal_txt;
    case Role::fascist: return assets::prompts_role_guidance_fascist_txt;
    case Role::hitler: return assets::prompts_role_guidance_hitler_txt;
    }
    return "";
}

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
    return s;
}

std::string system_prompt(const AgentView& view, const TechniqueConfig& technique) {
    std::string text = technique.role_prompt ? assets::prompts_role_system_prompt_txt
                                             : assets::prompts_system_prompt_txt;
    replace_all(text, "{n_players}", std::to_string(view.summary.n_players));
    replace_all(text, "{name}", view.name_of(view.own_seat));
    replace_all(text, "{role_line}", role_line(view));
    replace_all(text, "{role_guidance}", trim(role_guidance(view.own_role)));
    replace_all(text, "{public_log}", joined_log(view));
    replace_all(text, "{recent_chat}", joined_chat(view));

    if (technique.memory) {
        std::string memory = view.private_memory;
        if (memory.size() > 1000) memory = memory.substr(memory.size() - 1000);
        if (memory.empty()) memory = "(no thoughts recorded yet)";
        std::string section = assets::prompts_memory_section_txt;
        replace_all(section, "{private_memory}", memory);
        text += section;
    }
    if (technique.strategy_guide) {
        std::string excerpt = strategy_guide_excerpt(view.summary.phase);
        if (!excerpt.empty())
            text += "\nStrategy guide excerpt for this situation:\n" + excerpt;
    }
    return text;
}

std::string state_brief(const AgentView& view) {
    const auto& s = view.summary;
    // One fact per line; seat names never share a line with role words.
    std::string brief = "Current state: round " + std::to_string(s.round) +
                        ". Policies enacted: " + std::to_string(s.liberal_policies) +
                        " liberal, " + std::to_string(s.fascist_policies) +
                        " fascist. Election tracker: " + std::to_string(s.election_tracker) +
                        ".";
    brief += "\nPresident: " + view.name_of(s.president) + ".";
    if (s.nominee) brief += "\nNominated chancellor: " + view.name_of(*s.nominee) + ".";
    if (!view.hand.empty()) {
        brief += "\nYou are holding:";
        for (std::size_t i = 0; i < view.hand.size(); ++i)
            brief += " card " + std::to_string(i + 1) + " = " + to_string(view.hand[i]) +
                     (i + 1 < view.hand.size() ? "," : ".");
    }
    for (const auto& line : view.private_intel) brief += "\n" + line;
    return brief;
}

} // namespace

std::vector<std::string> option_labels(const std::vector<Action>& legal,
                                       const std::vector<std::string>& names) {
    std::vector<std::string> labels;
    labels.reserve(legal.size());
    for (const auto& a : legal) labels.push_back(describe(a, names));
    return labels;
}

std::string render_option_menu(const std::vector<std::string>& labels) {
    std::string menu;
    for (std::size_t i = 0; i < labels.size(); ++i)
        menu += std::to_string(i + 1) + ". " + labels[i] + "\n";
    return menu;
}

std::vector<gw::Message> build_prompt(const AgentView& view, const TechniqueConfig& technique,
                                      const PromptRequest& request) {
    std::vector<gw::Message> messages;
    messages.push_back({"system", system_prompt(view, technique)});

    if (request.reasoning)
        messages.push_back({"assistant", *request.reasoning});

    std::string user = state_brief(view) + "\n";
    switch (request.kind) {
    case RequestKind::action: {
        auto labels = option_labels(view.legal, view.player_names);
        user += "It is your turn to act. Choose exactly one of these options:\n" +
                render_option_menu(labels) +
                "Reply with the number of your choice and nothing else.";
        break;
    }
    case RequestKind::chat:
        user += "It is the discussion phase. Write one short message to the table, in "
                "character, as " +
                view.name_of(view.own_seat) + ". Reply with the message text only.";
        break;
    case RequestKind::belief: {
        user += "Privately: which role do you believe " + view.name_of(request.belief_target) +
                " holds? Choose exactly one of these options:\n" +
                render_option_menu(guess_labels()) +
                "Reply with the number of your choice and nothing else.";
        break;
    }
    }
    messages.push_back({"user", user});
    return messages;
}

std::vector<gw::Message> build_cot_prompt(const AgentView& view,
                                          const TechniqueConfig& technique) {
    std::vector<gw::Message> messages;
    messages.push_back({"system", system_prompt(view, technique)});
    std::string user =
        state_brief(view) +
        "\nBefore acting, think step by step about your situation, the other players' likely "
        "roles, and what your options would achieve. These thoughts stay PRIVATE.";
    messages.push_back({"user", user});
    return messages;
}

namespace {

bool boundary(const std::string& text, std::size_t begin, std::size_t end) {
    auto alnum = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; };
    if (begin > 0 && alnum(text[begin - 1])) return false;
    if (end < text.size() && alnum(text[end])) return false;
    return true;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

} // namespace

std::optional<std::size_t> parse_option_choice(const std::string& reply,
                                               const std::vector<std::string>& labels) {
    std::set<std::size_t> matched;
    const std::string hay = lower(reply);

    // Label mentions, word-bounded.
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const std::string needle = lower(labels[i]);
        if (needle.empty()) continue;
        std::size_t pos = 0;
        while ((pos = hay.find(needle, pos)) != std::string::npos) {
            if (boundary(hay, pos, pos + needle.size())) {
                matched.insert(i);
                break;
            }
            pos += 1;
        }
    }

    // Bare option numbers.
    for (std::size_t pos = 0; pos < hay.size();) {
        if (!std::isdigit(static_cast<unsigned char>(hay[pos]))) {
            ++pos;
            continue;
        }
        std::size_t end = pos;
        while (end < hay.size() && std::isdigit(static_cast<unsigned char>(hay[end]))) ++end;
        if (boundary(hay, pos, end)) {
            unsigned long value = std::stoul(hay.substr(pos, end - pos));
            if (value >= 1 && value <= labels.size()) matched.insert(value - 1);
        }
        pos = end;
    }

    if (matched.size() == 1) return *matched.begin();
    return std::nullopt;
}

const std::vector<std::string>& guess_labels() {
    static const std::vector<std::string> labels = {"Liberal", "Fascist", "Hitler", "Unknown"};
    return labels;
}

std::string strategy_guide_excerpt(Phase phase) {
    switch (phase) {
    case Phase::nomination:
        return trim(assets::strategy_guide_nomination_txt);
    case Phase::vote:
    case Phase::discussion:
        return trim(assets::strategy_guide_vote_txt);
    case Phase::legislative_president:
    case Phase::legislative_chancellor:
    case Phase::executive:
        return trim(assets::strategy_guide_legislative_txt);
    default:
        return "";
    }
}

std::string truncate_with_marker(const std::string& text, std::size_t cap) {
    static const std::string marker = " [truncated]";
    if (text.size() <= cap) return text;
    if (cap <= marker.size()) return text.substr(0, cap);
    return text.substr(0, cap - marker.size()) + marker;
}

} // namespace shsim::prompts
