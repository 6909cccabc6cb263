#include "doctest.h"

#include <set>

#include "shsim/annotation.hpp"
#include "test_support.hpp"

using namespace shsim;
using namespace shsim::annotation;
using shsim::test::FnTransport;

namespace {

MessageWindow sample_window() {
    MessageWindow w;
    w.player_names = {"Alice", "Bob", "Charlie", "Dana", "Eve"};
    w.context = {{1, 0, "I drew two fascist cards"}, {1, 1, "sure you did"}};
    w.target = {1, 2, "Everyone trusts Alice, follow the majority and vote ja"};
    return w;
}

GameRecord chat_record(const std::string& id, int n_messages) {
    GameRecord r;
    r.game_id = id;
    r.config.n_players = 5;
    r.config.player_names = {"Alice", "Bob", "Charlie", "Dana", "Eve"};
    r.roles = {Role::liberal, Role::liberal, Role::liberal, Role::fascist, Role::hitler};
    for (int i = 0; i < n_messages; ++i)
        r.chat.push_back({1 + i / 5, i % 5, id + " message " + std::to_string(i)});
    return r;
}

} // namespace

TEST_CASE("built-in taxonomies carry the expected categories") {
    CHECK(cialdini().categories.size() == 6);
    CHECK(cialdini().contains("Reciprocation"));
    CHECK(cialdini().contains("Social Validation"));
    CHECK(cialdini().contains("Consistency"));
    CHECK(cialdini().contains("Friendship/Liking"));
    CHECK(cialdini().contains("Scarcity"));
    CHECK(cialdini().contains("Authority"));

    CHECK(jailbreak().categories.size() == 40);
    CHECK(jailbreak().contains("Alliance Building"));
    CHECK(jailbreak().contains("Social Proof"));
    CHECK(among_us().categories.size() == 25);
    CHECK(among_us().contains("Gaslighting"));

    for (const Taxonomy* t : {&cialdini(), &jailbreak(), &among_us()}) {
        auto labels = t->labels();
        std::set<std::string> unique(labels.begin(), labels.end());
        CHECK(unique.size() == t->categories.size()); // labels unique
    }

    CHECK(find_builtin("cialdini") == &cialdini());
    CHECK(find_builtin("nonsense") == nullptr);
}

TEST_CASE("annotation prompt embeds the taxonomy and window, target last") {
    auto messages = annotation_prompt(cialdini(), sample_window());
    REQUIRE(messages.size() == 2);
    CHECK(messages[0].content.find("ONLY ANNOTATE THE LAST MESSAGE") != std::string::npos);
    CHECK(messages[0].content.find("- Authority:") != std::string::npos);
    CHECK(messages[1].content.find("[Charlie]: Everyone trusts Alice") != std::string::npos);
    // Context precedes the target.
    CHECK(messages[1].content.find("[Alice]:") < messages[1].content.find("[Charlie]:"));
}

TEST_CASE("annotation parsing accepts exact labels and rejects everything else") {
    auto one = parse_annotation(R"({"text": "x", "annotation": ["Authority"]})", cialdini());
    REQUIRE(one.ok());
    CHECK(one.value() == std::set<std::string>{"Authority"});

    auto two = parse_annotation(
        R"({"text": "x", "annotation": ["Social Validation", "Consistency"]})", cialdini());
    REQUIRE(two.ok());
    CHECK(two.value().size() == 2);

    auto empty = parse_annotation(R"({"text": "x", "annotation": []})", cialdini());
    REQUIRE(empty.ok());
    CHECK(empty.value().empty());

    auto wrapped = parse_annotation(
        "Here is my annotation: {\"text\": \"x\", \"annotation\": [\"Scarcity\"]} done",
        cialdini());
    REQUIRE(wrapped.ok());
    CHECK(wrapped.value() == std::set<std::string>{"Scarcity"});

    CHECK(!parse_annotation(R"({"text": "x", "annotation": ["Bandwagon"]})", cialdini()).ok());
    CHECK(!parse_annotation(R"({"text": "x"})", cialdini()).ok());
    CHECK(!parse_annotation("no json at all", cialdini()).ok());
    CHECK(!parse_annotation(R"({"text": "x", "annotation": "Authority"})", cialdini()).ok());
}

TEST_CASE("annotate retries malformed output once, then fails") {
    int calls = 0;
    auto transport = std::make_shared<FnTransport>(
        [&](const std::vector<gw::Message>&, int) -> gw::Result<gw::Completion> {
            ++calls;
            if (calls == 1) return gw::Completion{"garbage", std::nullopt, std::nullopt};
            return gw::Completion{R"({"text": "m", "annotation": ["Authority"]})", std::nullopt,
                                  std::nullopt};
        });
    gw::Gateway gateway(transport);
    auto result = annotate(gateway, test::test_endpoint(), cialdini(), sample_window());
    REQUIRE(result.ok());
    CHECK(result.value() == std::set<std::string>{"Authority"});
    CHECK(calls == 2);

    calls = 0;
    auto bad_transport = std::make_shared<FnTransport>(
        [&](const std::vector<gw::Message>&, int) -> gw::Result<gw::Completion> {
            ++calls;
            return gw::Completion{"still garbage", std::nullopt, std::nullopt};
        });
    gw::Gateway bad_gateway(bad_transport);
    auto failure = annotate(bad_gateway, test::test_endpoint(), cialdini(), sample_window());
    CHECK(!failure.ok());
    CHECK(calls == 2); // one retry, no loop
}

TEST_CASE("eval_annotator: perfect prediction, the hand swap case, symmetry") {
    // Gold covering all six categories; perfect predictions.
    std::vector<std::set<std::string>> gold;
    for (const auto& label : cialdini().labels()) gold.push_back({label});
    auto perfect = eval_annotator(gold, gold, cialdini());
    CHECK(perfect.macro_f1 == doctest::Approx(1.0));
    CHECK(perfect.macro_precision == doctest::Approx(1.0));
    CHECK(perfect.macro_recall == doctest::Approx(1.0));
    CHECK(perfect.hamming_loss == doctest::Approx(0.0));

    // One message, six categories, gold {A}, predicted {B}: one false
    // negative plus one false positive = 2/6.
    std::vector<std::set<std::string>> g{{"Authority"}};
    std::vector<std::set<std::string>> p{{"Scarcity"}};
    auto swap = eval_annotator(p, g, cialdini());
    CHECK(swap.hamming_loss == doctest::Approx(2.0 / 6));
    CHECK(swap.macro_f1 == doctest::Approx(0.0));

    // Swapping predicted and gold swaps precision and recall.
    std::vector<std::set<std::string>> a{{"Authority", "Scarcity"}, {}};
    std::vector<std::set<std::string>> b{{"Authority"}, {"Consistency"}};
    auto forward = eval_annotator(a, b, cialdini());
    auto backward = eval_annotator(b, a, cialdini());
    CHECK(forward.macro_precision == doctest::Approx(backward.macro_recall));
    CHECK(forward.macro_recall == doctest::Approx(backward.macro_precision));
    CHECK(forward.macro_f1 == doctest::Approx(backward.macro_f1));
    CHECK(forward.hamming_loss == doctest::Approx(backward.hamming_loss));

    CHECK(forward.hamming_loss >= 0.0);
    CHECK(forward.hamming_loss <= 1.0);
    CHECK(forward.macro_f1 >= 0.0);
    CHECK(forward.macro_f1 <= 1.0);

    CHECK_THROWS_AS(eval_annotator({{"Authority"}}, {}, cialdini()), std::invalid_argument);
    CHECK_THROWS_AS(eval_annotator({{"NotALabel"}}, {{}}, cialdini()), std::invalid_argument);
}

TEST_CASE("annotate_corpus slides windows per game and keeps order") {
    std::vector<GameRecord> records = {chat_record("game-a", 3), chat_record("game-b", 7)};

    // Scripted annotator: label by membership, verify windows never mix games
    // and context depth is capped at four.
    auto transport = std::make_shared<FnTransport>(
        [&](const std::vector<gw::Message>& messages, int) -> gw::Result<gw::Completion> {
            const std::string& window = messages.back().content;
            bool has_a = window.find("game-a message") != std::string::npos;
            bool has_b = window.find("game-b message") != std::string::npos;
            CHECK(!(has_a && has_b));
            int lines = 0;
            for (char c : window)
                if (c == '\n') ++lines;
            CHECK(lines <= 6); // header + at most 5 window lines
            return gw::Completion{R"({"text": "m", "annotation": ["Authority"]})", std::nullopt,
                                  std::nullopt};
        });
    gw::Gateway gateway(transport);
    auto corpus = annotate_corpus(gateway, test::test_endpoint(), cialdini(), records, 5, 3);
    CHECK(corpus.failures.empty());
    REQUIRE(corpus.annotations.size() == 10);
    CHECK(corpus.annotations[0].game_id == "game-a");
    CHECK(corpus.annotations[0].message_index == 0);
    CHECK(corpus.annotations[3].game_id == "game-b");
    for (const auto& a : corpus.annotations)
        CHECK(a.labels == std::set<std::string>{"Authority"});

    SUBCASE("scripted annotation is deterministic across runs") {
        auto transport2 = std::make_shared<FnTransport>(
            [&](const std::vector<gw::Message>&, int) -> gw::Result<gw::Completion> {
                return gw::Completion{R"({"text": "m", "annotation": ["Authority"]})",
                                      std::nullopt, std::nullopt};
            });
        gw::Gateway gateway2(transport2);
        auto again =
            annotate_corpus(gateway2, test::test_endpoint(), cialdini(), records, 5, 3);
        CHECK(again.annotations == corpus.annotations);
    }
}

TEST_CASE("annotate_corpus collects per-message failures and continues") {
    std::vector<GameRecord> records = {chat_record("game-c", 4)};
    // The request whose TARGET (last window line) is message 1 always yields
    // garbage, across both the first pass and the retry pass.
    auto transport = std::make_shared<FnTransport>(
        [&](const std::vector<gw::Message>& messages, int) -> gw::Result<gw::Completion> {
            const std::string& window = messages.back().content;
            const std::string tail = "message 1\n";
            bool targets_message_1 = window.size() >= tail.size() &&
                                     window.compare(window.size() - tail.size(), tail.size(),
                                                    tail) == 0;
            if (targets_message_1)
                return gw::Completion{"garbage", std::nullopt, std::nullopt};
            return gw::Completion{R"({"text": "m", "annotation": []})", std::nullopt,
                                  std::nullopt};
        });
    gw::Gateway gateway(transport);
    auto corpus = annotate_corpus(gateway, test::test_endpoint(), cialdini(), records, 5, 2);
    CHECK(corpus.annotations.size() == 3);
    REQUIRE(corpus.failures.size() == 1);
    CHECK(corpus.failures[0].message_index == 1);
}
