#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "honeysim/platform.hpp"
#include "honeysim/population.hpp"
#include "honeysim/rng.hpp"
#include "honeysim/stats.hpp"

namespace honeysim {

// Simulated classifier score in [0,1]; stands in for the external scoring
// service, with configurable class overlap.
struct NoiseSpec {
  enum class Kind : std::uint8_t { Oracle, BetaMixture };
  Kind kind = Kind::BetaMixture;
  double miss_rate = 0.15;         // automated agents scoring below the threshold
  double false_alarm_rate = 0.08;  // humans scoring at/above the threshold
};

struct BotScore {
  UserId user = 0;
  double score = 0.0;
  bool classifiable = true;  // false for suspended/deleted accounts
};

enum class UserClass : std::uint8_t { Automated, Human };

BotScore score_user(const UserProfile& profile, GroundTruthClass truth, const NoiseSpec& noise,
                    Rng& rng);

// "a percentage score of 50% or more" is automated; the boundary is >=.
UserClass classify(double score, double threshold = 0.5);
UserClass classify(const BotScore& score, double threshold = 0.5);  // throws if unclassifiable

using ScoreMap = std::map<UserId, BotScore>;

// One row of the per-technique report. The paper's table counts one entry
// per interaction within a technique but deduplicates users in its Total
// row; both views are reported. n / n_bots / n_humans follow the paper's
// semantics (per classifiable interaction for technique rows, per unique
// user for the Total row); the *_unique fields always deduplicate.
struct TechniqueReportRow {
  TechniqueId technique = kNoTechnique;  // kNoTechnique marks the Total row
  std::uint64_t n_interactions = 0;      // raw events, unclassifiable actors included
  std::uint64_t n = 0;
  std::optional<DescriptiveStats> score_stats;  // over unique classifiable users
  std::uint64_t n_bots = 0;
  std::uint64_t n_humans = 0;
  std::uint64_t n_unique_users = 0;
  std::uint64_t n_bots_unique = 0;
  std::uint64_t n_humans_unique = 0;
  std::optional<double> precision;         // n_bots / n
  std::optional<double> precision_unique;  // unique bots / unique classifiable users
  std::optional<double> recall;            // ground-truth based, when labels are given
};

struct TechniqueReport {
  std::vector<TechniqueReportRow> rows;  // ascending technique id
  TechniqueReportRow total;
};

// Builds the per-technique table from attributed events. Only events whose
// actor is not a honeypot count (those are the attracted users). Scores must
// cover every counted actor. Labels, when given, add ground-truth recall.
TechniqueReport technique_report(const std::vector<InteractionEvent>& events,
                                 const ScoreMap& scores, const std::set<UserId>& honeypots,
                                 const GroundTruth* labels = nullptr,
                                 double threshold = 0.5);

struct RecallRow {
  TechniqueId technique = 0;
  std::uint64_t attracted_automated = 0;
  std::uint64_t automated_total = 0;
  double recall = 0.0;
};

struct RecallReport {
  std::vector<RecallRow> rows;
  RecallRow overall;  // union over all honeypots
};

// recall(tau) = |automated agents attracted by tau| / |automated agents in
// the population|; needs the ground truth, which only a controlled
// environment has.
RecallReport recall_report(const std::vector<InteractionEvent>& events, const GroundTruth& labels,
                           const std::set<UserId>& honeypots);

struct AccountSummary {
  DescriptiveStats statuses, friends, followers, listed, account_age;
  std::size_t n = 0;
  std::size_t verified = 0;
};

AccountSummary account_summary(const std::vector<const UserProfile*>& profiles);

// --- CSV / table export ----------------------------------------------------

void write_technique_report_csv(std::ostream& os, const TechniqueReport& report);
void write_account_summary_csv(std::ostream& os, const AccountSummary& summary);
void write_recall_csv(std::ostream& os, const RecallReport& report);

struct PlotRow {
  std::string label;
  std::uint64_t bots = 0;
  std::uint64_t humans = 0;
  std::uint64_t interactions = 0;
  double scale = 1.0;  // honeypots using the technique, for per-honeypot scaling
};

// Figure-style data: per-technique and per-honeypot bot/human interaction
// counts, ordered from most precise to least.
std::vector<PlotRow> plot_rows_by_technique(const std::vector<InteractionEvent>& events,
                                            const ScoreMap& scores,
                                            const std::set<UserId>& honeypots,
                                            const std::map<TechniqueId, std::size_t>& usage);
std::vector<PlotRow> plot_rows_by_honeypot(const std::vector<InteractionEvent>& events,
                                           const ScoreMap& scores,
                                           const std::map<UserId, std::string>& honeypot_names);
void write_plot_csv(std::ostream& os, const std::vector<PlotRow>& rows);

void write_scores_csv(std::ostream& os, const ScoreMap& scores);
ScoreMap read_scores_csv(std::istream& is);

}  // namespace honeysim
