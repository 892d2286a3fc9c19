#include "honeysim/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace honeysim {

namespace {

// triangular draw on [0,1); soft mode near the middle of each half
double hump(Rng& rng) { return (rng.next_double() + rng.next_double()) / 2.0; }

}  // namespace

BotScore score_user(const UserProfile& profile, GroundTruthClass truth, const NoiseSpec& noise,
                    Rng& rng) {
  BotScore out;
  out.user = profile.id;
  if (profile.suspended) {
    out.classifiable = false;
    return out;
  }
  if (noise.kind == NoiseSpec::Kind::Oracle) {
    out.score = truth == GroundTruthClass::Automated ? 1.0 : 0.0;
    return out;
  }
  bool high;
  if (truth == GroundTruthClass::Automated) {
    high = !rng.bernoulli(noise.miss_rate);
  } else {
    high = rng.bernoulli(noise.false_alarm_rate);
  }
  out.score = high ? 0.5 + 0.5 * hump(rng) : 0.5 * hump(rng);
  return out;
}

UserClass classify(double score, double threshold) {
  return score >= threshold ? UserClass::Automated : UserClass::Human;
}

UserClass classify(const BotScore& score, double threshold) {
  if (!score.classifiable) throw std::invalid_argument("classify: unclassifiable score");
  return classify(score.score, threshold);
}

namespace {

struct RowAccumulator {
  std::uint64_t n_interactions = 0;
  std::uint64_t n = 0;       // classifiable interactions
  std::uint64_t n_bots = 0;  // per interaction
  std::uint64_t n_humans = 0;
  std::map<UserId, double> unique_scores;  // classifiable users
  std::set<UserId> all_actors;             // classifiable or not
};

void fill_row(TechniqueReportRow& row, const RowAccumulator& acc, double threshold) {
  row.n_interactions = acc.n_interactions;
  row.n = acc.n;
  row.n_bots = acc.n_bots;
  row.n_humans = acc.n_humans;
  row.n_unique_users = acc.unique_scores.size();
  std::vector<double> scores;
  scores.reserve(acc.unique_scores.size());
  for (const auto& [user, score] : acc.unique_scores) {
    scores.push_back(score);
    if (classify(score, threshold) == UserClass::Automated) {
      ++row.n_bots_unique;
    } else {
      ++row.n_humans_unique;
    }
  }
  if (!scores.empty()) row.score_stats = describe(std::move(scores));
  if (row.n > 0) row.precision = static_cast<double>(row.n_bots) / static_cast<double>(row.n);
  if (row.n_unique_users > 0) {
    row.precision_unique =
        static_cast<double>(row.n_bots_unique) / static_cast<double>(row.n_unique_users);
  }
}

}  // namespace

TechniqueReport technique_report(const std::vector<InteractionEvent>& events,
                                 const ScoreMap& scores, const std::set<UserId>& honeypots,
                                 const GroundTruth* labels, double threshold) {
  std::map<TechniqueId, RowAccumulator> acc;
  RowAccumulator total;
  std::map<TechniqueId, std::set<UserId>> attracted_by_tech;  // for recall, all actors

  for (const InteractionEvent& ev : events) {
    if (ev.technique == kNoTechnique) continue;
    if (honeypots.count(ev.actor)) continue;  // honeypot-issued, not an attracted user
    auto it = scores.find(ev.actor);
    if (it == scores.end()) {
      throw std::invalid_argument("technique_report: no score for user " +
                                  std::to_string(ev.actor));
    }
    RowAccumulator& row = acc[ev.technique];
    ++row.n_interactions;
    ++total.n_interactions;
    row.all_actors.insert(ev.actor);
    total.all_actors.insert(ev.actor);
    attracted_by_tech[ev.technique].insert(ev.actor);
    if (!it->second.classifiable) continue;
    double score = it->second.score;
    ++row.n;
    if (classify(score, threshold) == UserClass::Automated) {
      ++row.n_bots;
    } else {
      ++row.n_humans;
    }
    row.unique_scores.emplace(ev.actor, score);
    total.unique_scores.emplace(ev.actor, score);
  }

  std::map<UserId, GroundTruthClass> truth;
  std::uint64_t automated_total = 0;
  if (labels) {
    for (const auto& rec : *labels) {
      truth.emplace(rec.user, rec.ground_truth);
      if (rec.ground_truth == GroundTruthClass::Automated) ++automated_total;
    }
  }

  TechniqueReport report;
  for (auto& [tech, row_acc] : acc) {
    TechniqueReportRow row;
    row.technique = tech;
    fill_row(row, row_acc, threshold);
    if (labels && automated_total > 0) {
      std::uint64_t hit = 0;
      for (UserId u : attracted_by_tech[tech]) {
        auto t = truth.find(u);
        if (t != truth.end() && t->second == GroundTruthClass::Automated) ++hit;
      }
      row.recall = static_cast<double>(hit) / static_cast<double>(automated_total);
    }
    report.rows.push_back(std::move(row));
  }

  // the Total row deduplicates users across every technique
  report.total.technique = kNoTechnique;
  report.total.n_interactions = total.n_interactions;
  report.total.n_unique_users = total.unique_scores.size();
  std::vector<double> all_scores;
  for (const auto& [user, score] : total.unique_scores) {
    all_scores.push_back(score);
    if (classify(score, threshold) == UserClass::Automated) {
      ++report.total.n_bots_unique;
    } else {
      ++report.total.n_humans_unique;
    }
  }
  report.total.n = report.total.n_unique_users;
  report.total.n_bots = report.total.n_bots_unique;
  report.total.n_humans = report.total.n_humans_unique;
  if (!all_scores.empty()) report.total.score_stats = describe(std::move(all_scores));
  if (report.total.n > 0) {
    report.total.precision =
        static_cast<double>(report.total.n_bots) / static_cast<double>(report.total.n);
    report.total.precision_unique = report.total.precision;
  }
  if (labels && automated_total > 0) {
    std::uint64_t hit = 0;
    for (UserId u : total.all_actors) {
      auto t = truth.find(u);
      if (t != truth.end() && t->second == GroundTruthClass::Automated) ++hit;
    }
    report.total.recall = static_cast<double>(hit) / static_cast<double>(automated_total);
  }
  return report;
}

RecallReport recall_report(const std::vector<InteractionEvent>& events, const GroundTruth& labels,
                           const std::set<UserId>& honeypots) {
  std::map<UserId, GroundTruthClass> truth;
  std::uint64_t automated_total = 0;
  for (const auto& rec : labels) {
    truth.emplace(rec.user, rec.ground_truth);
    if (rec.ground_truth == GroundTruthClass::Automated) ++automated_total;
  }
  if (automated_total == 0) {
    throw std::invalid_argument("recall_report: no automated agents in the ground truth");
  }

  std::map<TechniqueId, std::set<UserId>> attracted;
  std::set<UserId> attracted_union;
  for (const InteractionEvent& ev : events) {
    if (ev.technique == kNoTechnique) continue;
    if (honeypots.count(ev.actor)) continue;
    if (!truth.count(ev.actor)) {
      throw std::invalid_argument("recall_report: actor " + std::to_string(ev.actor) +
                                  " missing from the ground-truth labels");
    }
    attracted[ev.technique].insert(ev.actor);
    attracted_union.insert(ev.actor);
  }

  auto count_automated = [&](const std::set<UserId>& users) {
    std::uint64_t hit = 0;
    for (UserId u : users) {
      if (truth.at(u) == GroundTruthClass::Automated) ++hit;
    }
    return hit;
  };

  RecallReport report;
  for (const auto& [tech, users] : attracted) {
    RecallRow row;
    row.technique = tech;
    row.attracted_automated = count_automated(users);
    row.automated_total = automated_total;
    row.recall = static_cast<double>(row.attracted_automated) /
                 static_cast<double>(automated_total);
    report.rows.push_back(row);
  }
  report.overall.technique = kNoTechnique;
  report.overall.attracted_automated = count_automated(attracted_union);
  report.overall.automated_total = automated_total;
  report.overall.recall = static_cast<double>(report.overall.attracted_automated) /
                          static_cast<double>(automated_total);
  return report;
}

AccountSummary account_summary(const std::vector<const UserProfile*>& profiles) {
  if (profiles.empty()) throw std::invalid_argument("account_summary: empty profile set");
  AccountSummary out;
  out.n = profiles.size();
  std::vector<double> statuses, friends, followers, listed, age;
  for (const UserProfile* p : profiles) {
    statuses.push_back(static_cast<double>(p->statuses_count));
    friends.push_back(static_cast<double>(p->friends_count));
    followers.push_back(static_cast<double>(p->followers_count));
    listed.push_back(static_cast<double>(p->listed_count));
    age.push_back(static_cast<double>(p->account_age_days));
    if (p->verified) ++out.verified;
  }
  out.statuses = describe(std::move(statuses));
  out.friends = describe(std::move(friends));
  out.followers = describe(std::move(followers));
  out.listed = describe(std::move(listed));
  out.account_age = describe(std::move(age));
  return out;
}

// --- export -------------------------------------------------------------------

namespace {

std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

void write_stats_fields(std::ostream& os, const std::optional<DescriptiveStats>& stats,
                        bool rounded) {
  if (!stats) {
    os << ",,,,,,,";
    return;
  }
  auto emit = [&](double v) { return rounded ? std::to_string(std::llround(v)) : fmt(v); };
  os << ',' << emit(stats->mean) << ',' << emit(stats->median) << ',';
  if (stats->st_dev) os << emit(*stats->st_dev);  // blank when undefined (n = 1)
  os << ',' << emit(stats->min) << ',' << emit(stats->q1) << ',' << emit(stats->q3) << ','
     << emit(stats->max);
}

void write_report_row(std::ostream& os, const TechniqueReportRow& row) {
  if (row.technique == kNoTechnique) {
    os << "total";
  } else {
    os << static_cast<int>(row.technique);
  }
  os << ',' << row.n;
  write_stats_fields(os, row.score_stats, false);
  os << ',' << row.n_bots << ',' << row.n_humans;
  os << ',' << row.n_interactions << ',' << row.n_unique_users << ',' << row.n_bots_unique << ','
     << row.n_humans_unique;
  os << ',';
  if (row.precision) os << fmt(*row.precision, 9);
  os << ',';
  if (row.precision_unique) os << fmt(*row.precision_unique, 9);
  os << ',';
  if (row.recall) os << fmt(*row.recall, 9);
  os << '\n';
}

}  // namespace

void write_technique_report_csv(std::ostream& os, const TechniqueReport& report) {
  os << "technique,n,mean,median,st_dev,min,q1,q3,max,n_bots,n_humans,"
        "n_interactions,n_unique_users,n_bots_unique,n_humans_unique,"
        "precision,precision_unique,recall\n";
  for (const auto& row : report.rows) write_report_row(os, row);
  write_report_row(os, report.total);
}

void write_account_summary_csv(std::ostream& os, const AccountSummary& summary) {
  os << "statistic,n,mean,median,st_dev,min,q1,q3,max\n";
  auto row = [&](const char* name, const DescriptiveStats& stats) {
    os << name << ',' << summary.n;
    std::optional<DescriptiveStats> s = stats;
    write_stats_fields(os, s, true);  // "rounded to nearest whole number"
    os << '\n';
  };
  row("statuses", summary.statuses);
  row("friends", summary.friends);
  row("followers", summary.followers);
  row("listed", summary.listed);
  row("account_age", summary.account_age);
  os << "# verified_accounts: " << summary.verified << '\n';
}

void write_recall_csv(std::ostream& os, const RecallReport& report) {
  os << "technique,attracted_automated,automated_total,recall\n";
  for (const auto& row : report.rows) {
    os << static_cast<int>(row.technique) << ',' << row.attracted_automated << ','
       << row.automated_total << ',' << fmt(row.recall, 9) << '\n';
  }
  os << "overall," << report.overall.attracted_automated << ',' << report.overall.automated_total
     << ',' << fmt(report.overall.recall, 9) << '\n';
}

namespace {

void sort_by_precision(std::vector<PlotRow>& rows) {
  // "ordered from most precise method to least"
  std::stable_sort(rows.begin(), rows.end(), [](const PlotRow& a, const PlotRow& b) {
    double pa = a.bots + a.humans ? static_cast<double>(a.bots) / (a.bots + a.humans) : 0.0;
    double pb = b.bots + b.humans ? static_cast<double>(b.bots) / (b.bots + b.humans) : 0.0;
    if (pa != pb) return pa > pb;
    return a.label < b.label;
  });
}

}  // namespace

std::vector<PlotRow> plot_rows_by_technique(const std::vector<InteractionEvent>& events,
                                            const ScoreMap& scores,
                                            const std::set<UserId>& honeypots,
                                            const std::map<TechniqueId, std::size_t>& usage) {
  std::map<TechniqueId, PlotRow> acc;
  for (const InteractionEvent& ev : events) {
    if (ev.technique == kNoTechnique || honeypots.count(ev.actor)) continue;
    auto it = scores.find(ev.actor);
    if (it == scores.end() || !it->second.classifiable) continue;
    PlotRow& row = acc[ev.technique];
    ++row.interactions;
    if (classify(it->second.score) == UserClass::Automated) {
      ++row.bots;
    } else {
      ++row.humans;
    }
  }
  std::vector<PlotRow> rows;
  for (auto& [tech, row] : acc) {
    row.label = "t" + std::to_string(tech);
    auto used = usage.find(tech);
    row.scale = used != usage.end() && used->second > 0 ? static_cast<double>(used->second) : 1.0;
    rows.push_back(row);
  }
  sort_by_precision(rows);
  return rows;
}

std::vector<PlotRow> plot_rows_by_honeypot(const std::vector<InteractionEvent>& events,
                                           const ScoreMap& scores,
                                           const std::map<UserId, std::string>& honeypot_names) {
  std::map<UserId, PlotRow> acc;
  for (const InteractionEvent& ev : events) {
    auto name = honeypot_names.find(ev.target_user);
    if (name == honeypot_names.end()) continue;
    if (honeypot_names.count(ev.actor)) continue;
    auto it = scores.find(ev.actor);
    if (it == scores.end() || !it->second.classifiable) continue;
    PlotRow& row = acc[ev.target_user];
    row.label = name->second;
    ++row.interactions;
    if (classify(it->second.score) == UserClass::Automated) {
      ++row.bots;
    } else {
      ++row.humans;
    }
  }
  std::vector<PlotRow> rows;
  for (auto& [account, row] : acc) rows.push_back(row);
  sort_by_precision(rows);
  return rows;
}

void write_plot_csv(std::ostream& os, const std::vector<PlotRow>& rows) {
  os << "label,bots,humans,interactions,scale,interactions_scaled\n";
  for (const auto& row : rows) {
    os << row.label << ',' << row.bots << ',' << row.humans << ',' << row.interactions << ','
       << fmt(row.scale, 2) << ',' << fmt(static_cast<double>(row.interactions) / row.scale, 4)
       << '\n';
  }
}

void write_scores_csv(std::ostream& os, const ScoreMap& scores) {
  os << "user_id,score,classifiable\n";
  for (const auto& [user, score] : scores) {
    os << user << ',' << fmt(score.score, 9) << ',' << (score.classifiable ? 1 : 0) << '\n';
  }
}

ScoreMap read_scores_csv(std::istream& is) {
  ScoreMap out;
  std::string line;
  bool header = true;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream ls(line);
    std::string user, score, classifiable;
    if (!std::getline(ls, user, ',') || !std::getline(ls, score, ',') ||
        !std::getline(ls, classifiable)) {
      throw std::runtime_error("scores line " + std::to_string(lineno) + ": bad format");
    }
    BotScore s;
    s.user = static_cast<UserId>(std::stoul(user));
    s.score = std::stod(score);
    s.classifiable = classifiable == "1";
    out.emplace(s.user, s);
  }
  return out;
}

}  // namespace honeysim
