#pragma once

#include <set>
#include <string>
#include <vector>

#include "shsim/gateway.hpp"
#include "shsim/record.hpp"

namespace shsim::annotation {

struct Taxonomy {
    std::string name;
    std::vector<std::pair<std::string, std::string>> categories; // label, description

    bool contains(const std::string& label) const;
    std::vector<std::string> labels() const;
};

// Built-in taxonomies, embedded verbatim. The six-principle set is the
// primary one; the other two ship for completeness.
const Taxonomy& cialdini();
const Taxonomy& jailbreak();
const Taxonomy& among_us();
const Taxonomy* find_builtin(const std::string& name);

// Up to four context messages plus the target message; only the target is
// annotated.
struct MessageWindow {
    std::vector<ChatEntry> context;
    ChatEntry target;
    std::vector<std::string> player_names;
};

struct MessageAnnotation {
    std::string game_id;
    int message_index = 0;
    int speaker = 0;
    std::set<std::string> labels; // possibly empty

    bool operator==(const MessageAnnotation&) const = default;
};

struct AnnotationFailure {
    std::string game_id;
    int message_index = 0;
    std::string reason;
};

std::vector<gw::Message> annotation_prompt(const Taxonomy& taxonomy,
                                           const MessageWindow& window);

// Strict parse of the {"text": ..., "annotation": [...]} object; labels must
// match the taxonomy exactly, an empty array is accepted.
gw::Result<std::set<std::string>> parse_annotation(const std::string& reply,
                                                   const Taxonomy& taxonomy);

// Annotation generation runs at temperature 0.
inline gw::GenerationParams annotation_params() { return {0.0, 1000}; }

// One message: prompt, completion, parse; malformed output earns one retry
// before surfacing as an error.
gw::Result<std::set<std::string>> annotate(gw::Gateway& gateway,
                                           const gw::ModelEndpoint& endpoint,
                                           const Taxonomy& taxonomy,
                                           const MessageWindow& window);

struct CorpusAnnotation {
    std::vector<MessageAnnotation> annotations;
    std::vector<AnnotationFailure> failures;
};

// Slides a window (4 context + target) over every game's chat in order;
// batches through the gateway with bounded concurrency. Per-message failures
// are collected and the run continues.
CorpusAnnotation annotate_corpus(gw::Gateway& gateway, const gw::ModelEndpoint& endpoint,
                                 const Taxonomy& taxonomy,
                                 const std::vector<GameRecord>& records, int window_size = 5,
                                 int max_in_flight = 4);

struct AnnotatorQuality {
    double macro_f1 = 0.0;
    double hamming_loss = 0.0;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
};

// Multi-label quality against gold labels: per-category precision/recall/F1
// macro-averaged over every taxonomy category (absent categories score 0),
// plus Hamming loss over (message, label) assignments.
AnnotatorQuality eval_annotator(const std::vector<std::set<std::string>>& predicted,
                                const std::vector<std::set<std::string>>& gold,
                                const Taxonomy& taxonomy);

} // namespace shsim::annotation
