#include "doctest.h"

#include <cmath>

#include "shsim/evaluation.hpp"

using namespace shsim;
using namespace shsim::eval;

namespace {

// Frozen from an independent scalar evaluation of the component formulas.
constexpr double kPolicy42 = 0.8968729235643251;
constexpr double kPolicy13 = -0.616909302877065;
constexpr double kDeck611 = -0.3389813455441767;
constexpr double kDeck10 = 0.6340949736429534;
constexpr double kPresLibInv = 0.7162978701990245;
constexpr double kPresFasExe = -0.8177540779702877;
constexpr double kDanger3LgtF = -0.7615941559557649;
constexpr double kDanger5LltF = 0.6822617902381698;
constexpr double kGamestateS1R1 = 0.603534122312019;

std::map<int, Role> five_player_truths() {
    return {{0, Role::liberal},
            {1, Role::liberal},
            {2, Role::liberal},
            {3, Role::fascist},
            {4, Role::hitler}};
}

// Belief helper: each liberal observer (0,1,2) guesses `guess` about `target`.
void liberals_guess(EvalInput& in, int target, Guess guess) {
    for (int o : {0, 1, 2})
        if (o != target) in.beliefs[{o, target}] = guess;
}

EvalInput scenario_base(int round, int l, int f, Party president, std::vector<Power> powers) {
    EvalInput in;
    in.round = round;
    in.liberal_policies = l;
    in.fascist_policies = f;
    in.deck_liberal = 6 - l;
    in.deck_fascist = 11 - f;
    in.president_party = president;
    in.unlocked_powers = std::move(powers);
    in.truths = five_player_truths();
    in.hitler_seat = 4;
    return in;
}

} // namespace

TEST_CASE("policy progress matches the frozen oracle values") {
    CHECK(policy_progress_score(0, 0) == doctest::Approx(0.0));
    CHECK(policy_progress_score(4, 2) == doctest::Approx(kPolicy42).epsilon(1e-9));
    CHECK(policy_progress_score(1, 3) == doctest::Approx(kPolicy13).epsilon(1e-9));
}

TEST_CASE("deck composition: antisymmetry, size factor, empty deck inactive") {
    CHECK(*deck_composition_score(5, 5) == doctest::Approx(0.0));
    CHECK(*deck_composition_score(6, 11) == doctest::Approx(kDeck611).epsilon(1e-9));
    CHECK(*deck_composition_score(1, 0) == doctest::Approx(kDeck10).epsilon(1e-9));
    CHECK(!deck_composition_score(0, 0).has_value());
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; b <= 11; ++b) {
            if (a + b == 0) continue;
            CHECK(*deck_composition_score(a, b) ==
                  doctest::Approx(-*deck_composition_score(b, a)).epsilon(1e-12));
        }
}

TEST_CASE("president score is inactive without powers and signed by party") {
    CHECK(!president_score({}, Party::liberal).has_value());
    CHECK(*president_score({Power::investigate}, Party::liberal) ==
          doctest::Approx(kPresLibInv).epsilon(1e-9));
    CHECK(*president_score({Power::execution}, Party::fascist) ==
          doctest::Approx(kPresFasExe).epsilon(1e-9));
    // special_election carries no weight of its own.
    CHECK(*president_score({Power::special_election}, Party::liberal) ==
          doctest::Approx(std::tanh(0.3)).epsilon(1e-12));
}

TEST_CASE("role accuracy scoring per guess") {
    CHECK(role_guess_score(Guess::hitler, Role::hitler) == 1.5);
    CHECK(role_guess_score(Guess::fascist, Role::fascist) == 1.0);
    CHECK(role_guess_score(Guess::liberal, Role::liberal) == 0.5);
    CHECK(role_guess_score(Guess::liberal, Role::hitler) == -1.0);
    CHECK(role_guess_score(Guess::liberal, Role::fascist) == -1.0);
    CHECK(role_guess_score(Guess::fascist, Role::liberal) == -0.5);
    CHECK(role_guess_score(Guess::hitler, Role::liberal) == -0.5);
    // "otherwise": unknowns and fascist/hitler confusion.
    CHECK(role_guess_score(Guess::unknown, Role::hitler) == -0.3);
    CHECK(role_guess_score(Guess::unknown, Role::liberal) == -0.3);
    CHECK(role_guess_score(Guess::fascist, Role::hitler) == -0.3);
    CHECK(role_guess_score(Guess::hitler, Role::fascist) == -0.3);
}

TEST_CASE("role accuracy component") {
    std::map<int, Role> truths = five_player_truths();
    std::map<std::pair<int, int>, Guess> none;
    CHECK(!role_accuracy_score(none, truths).has_value());

    std::map<std::pair<int, int>, Guess> one_correct{{{0, 4}, Guess::hitler}};
    CHECK(*role_accuracy_score(one_correct, truths) ==
          doctest::Approx(std::tanh(1.5)).epsilon(1e-12));

    std::map<std::pair<int, int>, Guess> fooled{{{0, 4}, Guess::liberal}};
    CHECK(*role_accuracy_score(fooled, truths) ==
          doctest::Approx(std::tanh(-1.0)).epsilon(1e-12));
}

TEST_CASE("hitler danger: zero below three fascist policies, belief-driven after") {
    for (int f = 0; f < 3; ++f)
        for (int L = 0; L <= 3; ++L)
            for (int F = 0; F <= 3; ++F) CHECK(hitler_danger_score(f, L, F) == 0.0);
    CHECK(hitler_danger_score(2, 3, 0) == 0.0);
    CHECK(hitler_danger_score(3, 1, 0) == doctest::Approx(kDanger3LgtF).epsilon(1e-9));
    CHECK(hitler_danger_score(5, 0, 1) == doctest::Approx(kDanger5LltF).epsilon(1e-9));
    CHECK(hitler_danger_score(3, 1, 1) == doctest::Approx(std::tanh(-0.3)).epsilon(1e-12));
    // The f/3 multiplier caps at 2.
    CHECK(hitler_danger_score(6, 0, 1) == doctest::Approx(std::tanh(1.0)).epsilon(1e-12));
}

TEST_CASE("gamestate combination and confidence scaling") {
    PhaseWeights w;
    ComponentScores zero;
    zero.deck = 0.0;
    zero.president = 0.0;
    zero.role_acc = 0.0;
    for (int r = 0; r <= 20; ++r)
        CHECK(gamestate_from_components(zero, w, r) == doctest::Approx(0.0));

    ComponentScores ones;
    ones.policy = 1.0;
    ones.deck = 1.0;
    ones.president = 1.0;
    ones.role_acc = 1.0;
    ones.danger = 1.0;
    CHECK(gamestate_from_components(ones, w, 1) == doctest::Approx(kGamestateS1R1).epsilon(1e-9));

    // Strictly increasing in s for fixed r.
    double prev = -1.0;
    for (double v = -0.9; v <= 0.9; v += 0.1) {
        ComponentScores c;
        c.policy = v;
        c.deck = v;
        c.president = v;
        c.role_acc = v;
        c.danger = v;
        double g = gamestate_from_components(c, w, 4);
        CHECK(g > prev);
        prev = g;
    }

    // Confidence factor strictly increasing in r.
    prev = 0.0;
    for (int r = 1; r <= 30; ++r) {
        double g = gamestate_from_components(ones, w, r);
        CHECK(g > prev);
        prev = g;
        CHECK(g < 1.0);
        CHECK(g > -1.0);
    }
}

TEST_CASE("inactive component weight is redistributed proportionally") {
    PhaseWeights w;
    ComponentScores c;
    c.policy = 0.5;
    c.danger = 0.0;
    // deck, president, role_acc inactive: active weight = 0.35 + 0.15.
    double expected_s = 0.35 / 0.50 * 0.5;
    double expected = std::tanh(expected_s * (std::tanh(2 / 5.0) + 1.2) / 2.0);
    CHECK(gamestate_from_components(c, w, 2) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("six reference scenarios reproduce the reported sign and band shape") {
    struct Expected {
        double frozen;  // value under default weights, frozen from the oracle
        int sign;
        const char* band;
    };

    // 1: opening position, fascist-heavy deck.
    auto s1 = scenario_base(1, 0, 0, Party::liberal, {});
    // 2: crisis - fascist president with execution, liberals spotted the fascist,
    //    everyone else unresolved.
    auto s2 = scenario_base(7, 1, 3, Party::fascist, {Power::execution});
    liberals_guess(s2, 3, Guess::fascist);
    liberals_guess(s2, 0, Guess::unknown);
    liberals_guess(s2, 1, Guess::unknown);
    liberals_guess(s2, 2, Guess::unknown);
    liberals_guess(s2, 4, Guess::unknown);
    // 3: balanced board, liberals identified the fascist.
    auto s3 = scenario_base(6, 2, 2, Party::liberal, {});
    liberals_guess(s3, 3, Guess::fascist);
    // 4: liberals misread Hitler as liberal after three fascist policies.
    auto s4 = scenario_base(8, 1, 3, Party::liberal, {Power::investigate});
    liberals_guess(s4, 4, Guess::liberal);
    // 5: late liberal lead with full role information.
    auto s5 = scenario_base(10, 4, 2, Party::liberal, {});
    liberals_guess(s5, 4, Guess::hitler);
    liberals_guess(s5, 3, Guess::fascist);
    // 6: fascists one policy from victory, execution in fascist hands.
    auto s6 = scenario_base(12, 1, 5, Party::fascist, {Power::execution});
    liberals_guess(s6, 3, Guess::fascist);

    const std::vector<std::pair<EvalInput, Expected>> cases = {
        {s1, {-0.0676, -1, "equal"}},   {s2, {-0.4185, -1, "moderate"}},
        {s3, {+0.1016, +1, "equal"}},   {s4, {-0.3881, -1, "slight"}},
        {s5, {+0.3927, +1, "slight"}},  {s6, {-0.4417, -1, "moderate"}},
    };

    for (const auto& [input, expected] : cases) {
        double g = gamestate(input);
        CHECK(g == doctest::Approx(expected.frozen).epsilon(5e-3));
        CHECK((g > 0 ? 1 : -1) == expected.sign);
        CHECK(score_band(g) == expected.band);
    }
}

TEST_CASE("score bands") {
    CHECK(score_band(0.0) == "equal");
    CHECK(score_band(-0.25) == "equal");
    CHECK(score_band(0.3) == "slight");
    CHECK(score_band(-0.45) == "moderate");
    CHECK(score_band(0.61) == "decisive");
}

TEST_CASE("gsir averages per role and inverts fascist-party deltas") {
    auto single = gsir({{Role::liberal, 0.2}});
    CHECK(single[Role::liberal] == doctest::Approx(0.2));

    auto inverted = gsir({{Role::fascist, -0.3}});
    CHECK(inverted[Role::fascist] == doctest::Approx(0.3));

    auto hitler = gsir({{Role::hitler, -0.1}});
    CHECK(hitler[Role::hitler] == doctest::Approx(0.1));

    auto mean = gsir({{Role::liberal, 0.2}, {Role::liberal, -0.1}});
    CHECK(mean[Role::liberal] == doctest::Approx(0.05));

    CHECK_THROWS_AS(gsir({}), std::invalid_argument);
}

TEST_CASE("all component outputs stay strictly inside (-1, 1)") {
    for (int l = 0; l <= 5; ++l)
        for (int f = 0; f <= 6; ++f) {
            double p = policy_progress_score(l, f);
            CHECK(p > -1.0);
            CHECK(p < 1.0);
            double d = hitler_danger_score(f, l, f);
            CHECK(d > -1.0);
            CHECK(d < 1.0);
        }
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; b <= 11; ++b)
            if (a + b > 0) {
                CHECK(*deck_composition_score(a, b) > -1.0);
                CHECK(*deck_composition_score(a, b) < 1.0);
            }
}
