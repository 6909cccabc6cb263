#include "shsim/annotation.hpp"

#include <algorithm>

#include "json.hpp"

#include "shsim_assets.hpp"

namespace shsim::annotation {

using nlohmann::json;

bool Taxonomy::contains(const std::string& label) const {
    for (const auto& [name, description] : categories) {
        (void)description;
        if (name == label) return true;
    }
    return false;
}

std::vector<std::string> Taxonomy::labels() const {
    std::vector<std::string> out;
    out.reserve(categories.size());
    for (const auto& [name, description] : categories) {
        (void)description;
        out.push_back(name);
    }
    return out;
}

std::vector<gw::Message> annotation_prompt(const Taxonomy& taxonomy,
                                           const MessageWindow& window) {
    std::string techniques;
    for (const auto& [label, description] : taxonomy.categories)
        techniques += "- " + label + ": " + description + "\n";
    while (!techniques.empty() && techniques.back() == '\n') techniques.pop_back();

    std::string system = assets::prompts_annotation_prompt_txt;
    const std::string token = "{techniques}";
    if (auto pos = system.find(token); pos != std::string::npos)
        system.replace(pos, token.size(), techniques);

    std::string user = "Message window (annotate ONLY the last message):\n";
    for (const auto& entry : window.context)
        user += "[" + window.player_names[entry.speaker] + "]: " + entry.text + "\n";
    user += "[" + window.player_names[window.target.speaker] + "]: " + window.target.text + "\n";

    return {{"system", system}, {"user", user}};
}

gw::Result<std::set<std::string>> parse_annotation(const std::string& reply,
                                                   const Taxonomy& taxonomy) {
    auto malformed = [](const std::string& why) {
        return gw::Error{gw::ErrorKind::malformed_response, why};
    };

    json doc = json::parse(reply, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
        // Models often wrap the object in prose; try the outermost braces.
        auto begin = reply.find('{');
        auto end = reply.rfind('}');
        if (begin == std::string::npos || end == std::string::npos || end <= begin)
            return malformed("no JSON object in reply");
        doc = json::parse(reply.substr(begin, end - begin + 1), nullptr, false);
        if (doc.is_discarded()) return malformed("reply is not valid JSON");
    }
    if (!doc.is_object() || !doc.contains("annotation") || !doc["annotation"].is_array())
        return malformed("reply lacks an annotation array");

    std::set<std::string> labels;
    for (const auto& item : doc["annotation"]) {
        if (!item.is_string()) return malformed("annotation entries must be strings");
        std::string label = item.get<std::string>();
        if (!taxonomy.contains(label))
            return malformed("label '" + label + "' is not in taxonomy " + taxonomy.name);
        labels.insert(label);
    }
    return labels;
}

gw::Result<std::set<std::string>> annotate(gw::Gateway& gateway,
                                           const gw::ModelEndpoint& endpoint,
                                           const Taxonomy& taxonomy,
                                           const MessageWindow& window) {
    auto messages = annotation_prompt(taxonomy, window);
    gw::Result<std::set<std::string>> last =
        gw::Error{gw::ErrorKind::malformed_response, "not attempted"};
    for (int attempt = 0; attempt < 2; ++attempt) { // one retry on malformed output
        auto completion = gateway.complete(endpoint, messages, annotation_params());
        if (!completion.ok()) return completion.error();
        last = parse_annotation(completion.value(), taxonomy);
        if (last.ok()) return last;
    }
    return last;
}

CorpusAnnotation annotate_corpus(gw::Gateway& gateway, const gw::ModelEndpoint& endpoint,
                                 const Taxonomy& taxonomy,
                                 const std::vector<GameRecord>& records, int window_size,
                                 int max_in_flight) {
    const int context_size = std::max(0, window_size - 1);

    struct Slot {
        const GameRecord* record;
        int message_index;
    };
    std::vector<Slot> slots;
    std::vector<gw::CompletionRequest> requests;
    for (const auto& record : records) {
        for (int i = 0; i < static_cast<int>(record.chat.size()); ++i) {
            MessageWindow window;
            window.player_names = record.config.player_names;
            int begin = std::max(0, i - context_size);
            window.context.assign(record.chat.begin() + begin, record.chat.begin() + i);
            window.target = record.chat[i];
            slots.push_back({&record, i});
            requests.push_back({endpoint, annotation_prompt(taxonomy, window),
                                annotation_params()});
        }
    }

    CorpusAnnotation out;
    auto results = gateway.complete_parallel(requests, max_in_flight);
    std::vector<std::size_t> retry_slots;
    std::vector<gw::CompletionRequest> retry_requests;

    auto settle = [&](std::size_t slot_index, const gw::Result<std::string>& completion,
                      bool allow_retry) {
        const Slot& slot = slots[slot_index];
        if (!completion.ok()) {
            out.failures.push_back({slot.record->game_id, slot.message_index,
                                    "gateway: " + gw::to_string(completion.error().kind)});
            return;
        }
        auto parsed = parse_annotation(completion.value(), taxonomy);
        if (parsed.ok()) {
            out.annotations.push_back({slot.record->game_id, slot.message_index,
                                       slot.record->chat[slot.message_index].speaker,
                                       parsed.value()});
            return;
        }
        if (allow_retry) {
            retry_slots.push_back(slot_index);
            retry_requests.push_back(requests[slot_index]);
        } else {
            out.failures.push_back(
                {slot.record->game_id, slot.message_index, parsed.error().message});
        }
    };

    for (std::size_t i = 0; i < results.size(); ++i) settle(i, results[i], true);
    if (!retry_requests.empty()) {
        auto retried = gateway.complete_parallel(retry_requests, max_in_flight);
        for (std::size_t i = 0; i < retried.size(); ++i)
            settle(retry_slots[i], retried[i], false);
    }

    // complete_parallel preserves request order; retries may append out of
    // order, so restore (game, message) ordering.
    std::sort(out.annotations.begin(), out.annotations.end(),
              [](const MessageAnnotation& a, const MessageAnnotation& b) {
                  if (a.game_id != b.game_id) return a.game_id < b.game_id;
                  return a.message_index < b.message_index;
              });
    return out;
}

AnnotatorQuality eval_annotator(const std::vector<std::set<std::string>>& predicted,
                                const std::vector<std::set<std::string>>& gold,
                                const Taxonomy& taxonomy) {
    if (predicted.size() != gold.size())
        throw std::invalid_argument("predicted and gold label lists differ in length");
    for (const auto& labels : predicted)
        for (const auto& label : labels)
            if (!taxonomy.contains(label))
                throw std::invalid_argument("predicted label outside taxonomy: " + label);
    for (const auto& labels : gold)
        for (const auto& label : labels)
            if (!taxonomy.contains(label))
                throw std::invalid_argument("gold label outside taxonomy: " + label);

    const auto categories = taxonomy.labels();
    double f1_sum = 0.0, precision_sum = 0.0, recall_sum = 0.0;
    long long wrong_assignments = 0;

    for (const auto& category : categories) {
        long long tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < predicted.size(); ++i) {
            bool in_pred = predicted[i].count(category) > 0;
            bool in_gold = gold[i].count(category) > 0;
            if (in_pred && in_gold) ++tp;
            if (in_pred && !in_gold) ++fp;
            if (!in_pred && in_gold) ++fn;
        }
        wrong_assignments += fp + fn;
        double precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
        double recall = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
        double f1 = precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
        precision_sum += precision;
        recall_sum += recall;
        f1_sum += f1;
    }

    AnnotatorQuality out;
    const double n_categories = static_cast<double>(categories.size());
    out.macro_f1 = f1_sum / n_categories;
    out.macro_precision = precision_sum / n_categories;
    out.macro_recall = recall_sum / n_categories;
    out.hamming_loss = predicted.empty()
                           ? 0.0
                           : static_cast<double>(wrong_assignments) /
                                 (static_cast<double>(predicted.size()) * n_categories);
    return out;
}

} // namespace shsim::annotation
