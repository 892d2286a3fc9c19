#include "honeysim/config.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "honeysim/log_io.hpp"

namespace honeysim {

namespace fs = std::filesystem;
using nlohmann::json;

std::string default_data_dir() {
  if (const char* env = std::getenv("HONEYSIM_DATA_DIR")) return env;
#ifdef HONEYSIM_SOURCE_DATA_DIR
  if (fs::exists(HONEYSIM_SOURCE_DATA_DIR)) return HONEYSIM_SOURCE_DATA_DIR;
#endif
  return "data";
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string figure2_fixture_path(const std::string& data_dir) {
  return data_dir + "/figure2_combinations.txt";
}

namespace {

ArchetypeParams parse_params(const json& j, ArchetypeParams base) {
  if (j.contains("follow_back_p")) base.follow_back_p = j["follow_back_p"].get<double>();
  if (j.contains("keyword_trigger_p")) base.keyword_trigger_p = j["keyword_trigger_p"].get<double>();
  if (j.contains("gibberish_aversion_p")) {
    base.gibberish_aversion_p = j["gibberish_aversion_p"].get<double>();
  }
  if (j.contains("daily_activity_rate")) {
    base.daily_activity_rate = j["daily_activity_rate"].get<double>();
  }
  if (j.contains("post_rate")) base.post_rate = j["post_rate"].get<double>();
  if (j.contains("geo_tag_p")) base.geo_tag_p = j["geo_tag_p"].get<double>();
  if (j.contains("watched_actors")) base.watched_actors = j["watched_actors"].get<int>();
  if (j.contains("trigger_keywords")) base.trigger_keywords = j["trigger_keywords"].get<int>();
  return base;
}

void parse_population(const json& j, PopulationSpec& spec) {
  if (j.contains("total")) spec.total = j["total"].get<std::size_t>();
  if (j.contains("observation_cap")) spec.observation_cap = j["observation_cap"].get<std::size_t>();
  if (j.contains("mix")) {
    spec.mix.clear();
    for (auto it = j["mix"].begin(); it != j["mix"].end(); ++it) {
      auto label = archetype_from_string(it.key());
      if (!label) throw std::runtime_error("config: unknown archetype '" + it.key() + "'");
      spec.mix[*label] = it.value().get<double>();
    }
  }
  if (j.contains("profiles")) {
    const json& p = j["profiles"];
    auto set = [&](const char* key, double& field) {
      if (p.contains(key)) field = p[key].get<double>();
    };
    set("followers_median", spec.profiles.followers_median);
    set("followers_sigma", spec.profiles.followers_sigma);
    set("friends_median", spec.profiles.friends_median);
    set("friends_sigma", spec.profiles.friends_sigma);
    set("statuses_median", spec.profiles.statuses_median);
    set("statuses_sigma", spec.profiles.statuses_sigma);
    set("listed_median", spec.profiles.listed_median);
    set("listed_sigma", spec.profiles.listed_sigma);
    set("verified_fraction", spec.profiles.verified_fraction);
    set("home_region_fraction", spec.profiles.home_region_fraction);
    if (p.contains("age_min_days")) spec.profiles.age_min_days = p["age_min_days"].get<int>();
    if (p.contains("age_max_days")) spec.profiles.age_max_days = p["age_max_days"].get<int>();
    if (p.contains("home_region")) spec.profiles.home_region = p["home_region"].get<std::string>();
  }
  if (j.contains("params")) {
    for (auto it = j["params"].begin(); it != j["params"].end(); ++it) {
      auto label = archetype_from_string(it.key());
      if (!label) throw std::runtime_error("config: unknown archetype '" + it.key() + "'");
      spec.params[*label] = parse_params(it.value(), default_archetype(*label).params);
    }
  }
}

}  // namespace

CampaignConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("config: invalid JSON: ") + e.what());
  }
  CampaignConfig cfg;
  cfg.raw_json = json_text;
  cfg.population = default_population_spec();
  if (!j.contains("seed")) {
    throw std::runtime_error("config: 'seed' is mandatory (determinism contract)");
  }
  cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("ticks")) cfg.ticks = j["ticks"].get<Tick>();
  if (j.contains("warmup_ticks")) cfg.warmup_ticks = j["warmup_ticks"].get<Tick>();
  if (j.contains("start_date")) cfg.start_date = j["start_date"].get<std::string>();
  if (j.contains("geo_region")) cfg.geo_region = j["geo_region"].get<std::string>();
  if (j.contains("rate_limits")) {
    const json& r = j["rate_limits"];
    if (r.contains("max_actions_per_tick")) {
      cfg.rate_limits.max_actions_per_tick = r["max_actions_per_tick"].get<std::uint32_t>();
    }
    if (r.contains("max_follows_per_day")) {
      cfg.rate_limits.max_follows_per_day = r["max_follows_per_day"].get<std::uint32_t>();
    }
    if (r.contains("suspension_threshold")) {
      cfg.rate_limits.suspension_threshold = r["suspension_threshold"].get<std::uint32_t>();
    }
  }
  if (j.contains("population")) parse_population(j["population"], cfg.population);
  if (j.contains("actors")) {
    const json& a = j["actors"];
    if (a.contains("file")) cfg.actors_file = a["file"].get<std::string>();
    if (a.contains("count")) cfg.actor_count = a["count"].get<std::size_t>();
    if (a.contains("leaders")) cfg.leader_count = a["leaders"].get<std::size_t>();
  }
  if (j.contains("news")) {
    const json& n = j["news"];
    if (n.contains("file")) cfg.news_file = n["file"].get<std::string>();
    if (n.contains("per_day")) cfg.news_per_day = n["per_day"].get<std::size_t>();
  }
  if (j.contains("actor_posts")) {
    const json& p = j["actor_posts"];
    if (p.contains("file")) cfg.actor_posts_file = p["file"].get<std::string>();
    auto set = [&](const char* key, double& field) {
      if (p.contains(key)) field = p[key].get<double>();
    };
    set("leader_rate_per_tick", cfg.actor_post_params.leader_rate_per_tick);
    set("member_rate_per_tick", cfg.actor_post_params.member_rate_per_tick);
    set("hashtag_p", cfg.actor_post_params.hashtag_p);
    set("mention_p", cfg.actor_post_params.mention_p);
  }
  if (j.contains("budget_per_technique")) {
    cfg.budget_per_technique = j["budget_per_technique"].get<int>();
  }
  if (j.contains("replications")) cfg.replications = j["replications"].get<int>();
  if (j.contains("honeypots")) {
    const json& h = j["honeypots"];
    if (h.is_string()) {
      if (h.get<std::string>() != "figure2") {
        throw std::runtime_error("config: unknown honeypot preset '" + h.get<std::string>() + "'");
      }
      cfg.figure2_preset = true;
    } else {
      cfg.figure2_preset = false;
      for (const json& item : h) {
        HoneypotConfig hp;
        hp.name = item.at("name").get<std::string>();
        for (const json& t : item.at("techniques")) {
          hp.techniques.push_back(static_cast<TechniqueId>(t.get<int>()));
        }
        hp.budget_per_technique = item.value("budget_per_technique", cfg.budget_per_technique);
        hp.replications = item.value("replications", 1);
        cfg.honeypots.push_back(std::move(hp));
      }
    }
  }
  if (j.contains("trend")) {
    const json& t = j["trend"];
    if (t.contains("k")) cfg.trend_k = t["k"].get<std::size_t>();
    if (t.contains("ngram_max")) cfg.trend_ngram_max = t["ngram_max"].get<int>();
    if (t.contains("stopwords_file")) cfg.stopwords_file = t["stopwords_file"].get<std::string>();
  }
  if (j.contains("noise")) {
    const json& n = j["noise"];
    std::string kind = n.value("kind", "beta_mixture");
    if (kind == "oracle") {
      cfg.noise.kind = NoiseSpec::Kind::Oracle;
    } else if (kind == "beta_mixture") {
      cfg.noise.kind = NoiseSpec::Kind::BetaMixture;
    } else {
      throw std::runtime_error("config: unknown noise kind '" + kind + "'");
    }
    if (n.contains("miss_rate")) cfg.noise.miss_rate = n["miss_rate"].get<double>();
    if (n.contains("false_alarm_rate")) {
      cfg.noise.false_alarm_rate = n["false_alarm_rate"].get<double>();
    }
  }
  if (j.contains("data_dir")) cfg.data_dir = j["data_dir"].get<std::string>();
  if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
  return cfg;
}

CampaignConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

CampaignConfig default_config(std::uint64_t seed) {
  json j;
  j["seed"] = seed;
  return parse_config(j.dump());
}

CampaignSetup assemble_setup(const CampaignConfig& config) {
  CampaignSetup setup;
  setup.seed = config.seed;
  setup.campaign_ticks = config.ticks;
  setup.warmup_ticks = config.warmup_ticks;
  setup.rate_limits = config.rate_limits;
  setup.population = config.population;
  setup.geo_region = config.geo_region;
  setup.start_day = parse_iso_date(config.start_date);
  setup.trend_config.k = config.trend_k;
  setup.trend_config.ngram_max = config.trend_ngram_max;

  std::string stopwords_path =
      config.stopwords_file ? *config.stopwords_file : config.data_dir + "/stopwords_en.txt";
  setup.trend_config.stopwords = load_stopwords(stopwords_path);
  setup.lexicons = load_lexicons(config.data_dir);

  if (config.actors_file) {
    setup.registry_entries = ingest_actors(*config.actors_file);
  } else {
    setup.registry_entries =
        synthesize_actors(config.actor_count, config.leader_count, config.seed ^ 0xA0);
  }

  Tick total_ticks = config.warmup_ticks + config.ticks;
  if (config.actor_posts_file) {
    setup.actor_posts = ingest_actor_posts(*config.actor_posts_file, setup.registry_entries);
  } else {
    setup.actor_posts = synthesize_actor_posts(config.actor_post_params, setup.registry_entries,
                                               total_ticks, config.seed ^ 0xB1);
  }

  if (config.news_file) {
    setup.news = ingest_news(*config.news_file);
  } else {
    // one day before the campaign through its last day
    std::int32_t days = static_cast<std::int32_t>((config.ticks + kTicksPerDay - 1) / kTicksPerDay) + 1;
    setup.news = synthesize_news(setup.start_day - 1, days, config.news_per_day,
                                 config.seed ^ 0xC2);
  }

  if (config.figure2_preset) {
    setup.honeypots =
        load_figure2_matrix(figure2_fixture_path(config.data_dir), config.budget_per_technique);
  } else {
    setup.honeypots = config.honeypots;
  }
  for (auto& hp : setup.honeypots) {
    if (config.replications > 1) hp.replications = config.replications;
  }
  return setup;
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string profiles_csv(const Platform& platform) {
  std::ostringstream os;
  os << "user_id,handle,statuses,friends,followers,listed,account_age_days,verified,locale,"
        "geo_home,suspended,honeypot,archetype_ref\n";
  for (const UserProfile& p : platform.users()) {
    os << p.id << ',' << p.handle << ',' << p.statuses_count << ',' << p.friends_count << ','
       << p.followers_count << ',' << p.listed_count << ',' << p.account_age_days << ','
       << (p.verified ? 1 : 0) << ',' << p.locale << ',' << (p.geo_home ? *p.geo_home : "-")
       << ',' << (p.suspended ? 1 : 0) << ',' << (p.honeypot ? 1 : 0) << ',' << p.archetype_ref
       << '\n';
  }
  return os.str();
}

std::string honeypots_csv(const CampaignResult& result) {
  std::ostringstream os;
  os << "name,account,techniques,generation_only,suspended_at,attracted_users,interactions\n";
  for (const HoneypotSummary& hp : result.honeypots) {
    os << hp.name << ',' << hp.account << ',';
    for (std::size_t i = 0; i < hp.techniques.size(); ++i) {
      if (i) os << '+';
      os << static_cast<int>(hp.techniques[i]);
    }
    os << ',' << (hp.generation_only ? 1 : 0) << ',';
    if (hp.suspended_at) os << *hp.suspended_at;
    os << ',' << hp.attracted.size() << ',' << hp.interactions << '\n';
  }
  return os.str();
}

}  // namespace

RunOutputs run_campaign_to_dir(const CampaignConfig& config) {
  RunOutputs out;
  CampaignSetup setup = assemble_setup(config);
  out.result = run_campaign(setup);
  const Platform& platform = *out.result.platform;

  // score every population agent at campaign end
  Rng score_rng = Rng(config.seed).fork(0x5C02E);
  std::map<UserId, GroundTruthClass> truth;
  for (const auto& rec : out.result.labels) truth.emplace(rec.user, rec.ground_truth);
  for (const auto& rec : out.result.labels) {
    out.scores.emplace(rec.user,
                       score_user(platform.user(rec.user), rec.ground_truth, config.noise,
                                  score_rng));
  }

  out.report = technique_report(platform.events(), out.scores, out.result.honeypot_accounts,
                                &out.result.labels);
  out.recall = recall_report(platform.events(), out.result.labels, out.result.honeypot_accounts);

  // attracted & classifiable accounts, snapshot at campaign end
  std::set<UserId> attracted;
  for (const auto& hp : out.result.honeypots) {
    attracted.insert(hp.attracted.begin(), hp.attracted.end());
  }
  std::vector<const UserProfile*> attracted_profiles;
  for (UserId u : attracted) {
    auto it = out.scores.find(u);
    if (it != out.scores.end() && !it->second.classifiable) continue;
    attracted_profiles.push_back(&platform.user(u));
  }
  if (!attracted_profiles.empty()) out.accounts = account_summary(attracted_profiles);

  std::map<TechniqueId, std::size_t> usage;
  for (const auto& hp : out.result.honeypots) {
    for (TechniqueId t : hp.techniques) ++usage[t];
  }
  std::map<UserId, std::string> hp_names;
  for (const auto& hp : out.result.honeypots) hp_names[hp.account] = hp.name;

  // stage everything, then rename into place so the output is all-or-nothing
  fs::path final_dir(config.output_dir);
  if (fs::exists(final_dir) && !fs::is_empty(final_dir)) {
    throw std::runtime_error("output directory already exists and is not empty: " +
                             final_dir.string());
  }
  fs::path parent = final_dir.parent_path().empty() ? "." : final_dir.parent_path();
  fs::create_directories(parent);
  fs::path staging = parent / (final_dir.filename().string() + ".partial");
  fs::remove_all(staging);
  fs::create_directories(staging);

  write_file(staging / "events.log", event_log_string(platform));
  {
    std::ostringstream os;
    write_labels_csv(os, out.result.labels);
    write_file(staging / "labels.csv", os.str());
  }
  write_file(staging / "profiles.csv", profiles_csv(platform));
  {
    std::ostringstream os;
    write_scores_csv(os, out.scores);
    write_file(staging / "scores.csv", os.str());
  }
  {
    std::ostringstream os;
    write_technique_report_csv(os, out.report);
    write_file(staging / "report_techniques.csv", os.str());
  }
  {
    std::ostringstream os;
    if (out.accounts) {
      write_account_summary_csv(os, *out.accounts);
    } else {
      os << "statistic,n,mean,median,st_dev,min,q1,q3,max\n";
    }
    write_file(staging / "report_accounts.csv", os.str());
  }
  {
    std::ostringstream os;
    write_recall_csv(os, out.recall);
    write_file(staging / "report_recall.csv", os.str());
  }
  {
    std::ostringstream os;
    write_plot_csv(os, plot_rows_by_technique(platform.events(), out.scores,
                                              out.result.honeypot_accounts, usage));
    write_file(staging / "plot_techniques.csv", os.str());
  }
  {
    std::ostringstream os;
    write_plot_csv(os, plot_rows_by_honeypot(platform.events(), out.scores, hp_names));
    write_file(staging / "plot_honeypots.csv", os.str());
  }
  write_file(staging / "honeypots.csv", honeypots_csv(out.result));

  std::uint64_t config_hash = fnv1a64(config.raw_json);
  std::uint64_t log_hash = fnv1a64(event_log_string(platform));
  std::uint64_t manifest_hash =
      fnv1a64(hex64(config_hash) + ":" + std::to_string(config.seed) + ":" + hex64(log_hash));
  out.manifest_hash = hex64(manifest_hash);
  {
    nlohmann::json manifest;
    manifest["config_hash"] = hex64(config_hash);
    manifest["seed"] = config.seed;
    manifest["ticks"] = config.ticks;
    manifest["warmup_ticks"] = config.warmup_ticks;
    manifest["event_log_hash"] = hex64(log_hash);
    manifest["manifest_hash"] = out.manifest_hash;
    manifest["users"] = platform.user_count();
    manifest["statuses"] = platform.status_count();
    manifest["events"] = platform.events().size();
    manifest["files"] = {"events.log",          "labels.csv",           "profiles.csv",
                         "scores.csv",          "report_techniques.csv", "report_accounts.csv",
                         "report_recall.csv",   "plot_techniques.csv",   "plot_honeypots.csv",
                         "honeypots.csv",       "manifest.json"};
    write_file(staging / "manifest.json", manifest.dump(2) + "\n");
  }

  fs::remove_all(final_dir);
  fs::rename(staging, final_dir);
  out.directory = final_dir.string();
  return out;
}

void report_from_dir(const std::string& log_dir, const std::string& out_dir) {
  fs::path dir(log_dir);
  ParsedLog log = load_event_log((dir / "events.log").string());
  GroundTruth labels;
  {
    std::ifstream in(dir / "labels.csv");
    if (!in) throw std::runtime_error("cannot open " + (dir / "labels.csv").string());
    labels = read_labels_csv(in);
  }
  ScoreMap scores;
  {
    std::ifstream in(dir / "scores.csv");
    if (!in) throw std::runtime_error("cannot open " + (dir / "scores.csv").string());
    scores = read_scores_csv(in);
  }
  // honeypot accounts from the profiles snapshot
  std::set<UserId> honeypots;
  {
    std::ifstream in(dir / "profiles.csv");
    if (!in) throw std::runtime_error("cannot open " + (dir / "profiles.csv").string());
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      std::vector<std::string> f;
      std::string cur;
      for (char c : line) {
        if (c == ',') {
          f.push_back(cur);
          cur.clear();
        } else {
          cur += c;
        }
      }
      f.push_back(cur);
      if (f.size() >= 12 && f[11] == "1") honeypots.insert(static_cast<UserId>(std::stoul(f[0])));
    }
  }

  TechniqueReport report = technique_report(log.events, scores, honeypots, &labels);
  RecallReport recall = recall_report(log.events, labels, honeypots);

  fs::create_directories(out_dir);
  {
    std::ofstream os(fs::path(out_dir) / "report_techniques.csv");
    write_technique_report_csv(os, report);
  }
  {
    std::ofstream os(fs::path(out_dir) / "report_recall.csv");
    write_recall_csv(os, recall);
  }
}

}  // namespace honeysim
