#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shsim/agent.hpp"
#include "shsim/annotation.hpp"
#include "shsim/record.hpp"
#include "shsim/storage.hpp"

namespace shsim::metrics {

using storage::RecordSet;

class MetricError : public std::runtime_error {
  public:
    explicit MetricError(const std::string& what) : std::runtime_error(what) {}
};

// Yes-rate phase buckets over round numbers.
enum class RoundBucket { early, mid, late }; // 1-3, 4-7, 8+
RoundBucket bucket_of(int round);
std::string to_string(RoundBucket bucket);

// High-Elo split threshold used for human corpora.
inline constexpr double kHighEloThreshold = 1650.0;

// Conjunctive seat selector.
struct MetricFilter {
    std::optional<std::string> agent_kind;
    std::optional<Role> role;
    std::optional<Party> affiliation;
    std::optional<double> elo_min;
};

bool seat_matches(const GameRecord& record, int seat, const MetricFilter& filter);

// Records with at least one matching seat (for game-level metrics).
std::vector<const GameRecord*> filter_records(const RecordSet& set, const MetricFilter& filter);

// Fraction of matching (record, seat) pairs on the winning side.
double win_rate(const RecordSet& set, const MetricFilter& filter = {});

// Mean number of rounds per game.
double avg_game_length(const RecordSet& set);

struct CurvePoint {
    int round = 0;
    double value = 0.0;
    int support = 0; // games (or assessments) backing this point
};

// Cumulative average enacted policies of one type per round; the curve stops
// once fewer than support_threshold games reach a round.
std::vector<CurvePoint> policy_progression(const RecordSet& set, Policy policy,
                                           int support_threshold = 10);

struct RiaResult {
    double overall = 0.0;
    int n = 0;
    std::map<Role, double> by_target_role;
    std::map<Role, int> n_by_target_role;
};

// Role Identification Accuracy over belief records; "unknown" never counts.
// The filter selects observers.
RiaResult ria(const RecordSet& set, const MetricFilter& filter = {});
double ria(const std::vector<probes::BeliefRecord>& beliefs);

struct DrrResult {
    double overall = 0.0;
    int n = 0;
    std::vector<CurvePoint> curve; // per-round retention
};

// Deception Retention Rate over assessments; the filter selects targets.
DrrResult drr(const RecordSet& set, const MetricFilter& filter = {},
              int support_threshold = 10);

// Ja fraction of votes, optionally restricted to a phase bucket; the filter
// selects voters.
double yes_rate(const RecordSet& set, std::optional<RoundBucket> bucket = std::nullopt,
                const MetricFilter& filter = {});

// Fractions over the four outcome kinds; sums to 1.
std::map<OutcomeKind, double> ending_distribution(const RecordSet& set);

// Game State Impact Rate per role from recorded per-phase scores: for every
// single-actor decision, the surrounding score delta is attributed to the
// actor; fascist-party deltas are sign-inverted. The filter selects actors.
std::map<Role, double> gsir(const RecordSet& set, const MetricFilter& filter = {});

struct ScenarioAlignment {
    double same_exact = 0.0;
    double same_role = 0.0;
    double same_affiliation = 0.0;
    double vote_agreement_same_role = 0.0;
    double vote_agreement_same_affiliation = 0.0;
    int n_scenarios = 0;
    int n_role_matching = 0;
    int n_affiliation_matching = 0;
    int n_skipped = 0;
};

// Replays each decisive scenario with `agent` in the president's seat for the
// nomination and in every voter's seat for the election, comparing against
// the recorded expert choices. Vote agreement is evaluated only over
// scenarios whose chancellor role (resp. affiliation) matches.
ScenarioAlignment scenario_alignment(const std::vector<storage::Scenario>& scenarios,
                                     Agent& agent);

enum class GroupBy { role, affiliation, outcome, agent };

struct PersuasionUsage {
    std::vector<std::string> categories;                       // column order
    std::map<std::string, std::map<std::string, double>> rate; // group -> category -> value
    std::map<std::string, std::map<std::string, int>> counts;  // raw counts
    std::map<std::string, int> group_occurrences;              // player-role denominators
    int dropped_unjoinable = 0;

    // Rows in map order of `rate` keys, columns in `categories` order.
    std::vector<std::vector<double>> counts_matrix() const;
    std::vector<std::string> groups() const;
};

// Per-group usage counts of persuasion categories; when normalized, counts
// are divided by the number of (record, seat) occurrences of the group so
// rarer roles compare fairly.
PersuasionUsage persuasion_usage(const std::vector<annotation::MessageAnnotation>& annotations,
                                 const RecordSet& set, GroupBy group_by, bool normalize,
                                 const std::vector<std::string>& categories);

} // namespace shsim::metrics
