#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "honeysim/evaluation.hpp"
#include "honeysim/honeypot.hpp"

namespace honeysim {

// Resolution order: HONEYSIM_DATA_DIR env var, then the compiled-in source
// data directory, then ./data.
std::string default_data_dir();

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

// Campaign configuration as read from the JSON config file. Corpus inputs
// may name files or ask for deterministic synthesis; everything defaults
// except the seed, which the determinism contract makes mandatory.
struct CampaignConfig {
  std::uint64_t seed = 0;
  Tick ticks = 168;
  Tick warmup_ticks = 168;
  std::string start_date = "2024-02-05";
  std::string geo_region = "ZA";
  RateLimitPolicy rate_limits;
  PopulationSpec population;

  std::optional<std::string> actors_file;
  std::size_t actor_count = 287;
  std::size_t leader_count = 44;

  std::optional<std::string> news_file;
  std::size_t news_per_day = 6;

  std::optional<std::string> actor_posts_file;
  ActorPostParams actor_post_params;

  bool figure2_preset = true;
  std::vector<HoneypotConfig> honeypots;  // used when figure2_preset is false
  int budget_per_technique = 5;
  int replications = 1;

  std::size_t trend_k = 10;
  int trend_ngram_max = 1;
  std::optional<std::string> stopwords_file;

  NoiseSpec noise;
  std::string data_dir = default_data_dir();
  std::string output_dir = "out";

  std::string raw_json;  // original file bytes, hashed into the manifest
};

CampaignConfig parse_config(const std::string& json_text);
CampaignConfig load_config(const std::string& path);
CampaignConfig default_config(std::uint64_t seed);

// Loads corpora (or synthesizes them), the lexicons and the honeypot set.
CampaignSetup assemble_setup(const CampaignConfig& config);

struct RunOutputs {
  std::string directory;
  std::string manifest_hash;
  TechniqueReport report;
  RecallReport recall;
  std::optional<AccountSummary> accounts;  // absent when nothing was attracted
  CampaignResult result;
  ScoreMap scores;
};

// Runs the campaign and writes every output file atomically into
// config.output_dir: the event log, labels, profiles, scores, the three
// report CSVs, plot data and a manifest.
RunOutputs run_campaign_to_dir(const CampaignConfig& config);

// Recomputes the report CSVs from a persisted run directory.
void report_from_dir(const std::string& log_dir, const std::string& out_dir);

std::string figure2_fixture_path(const std::string& data_dir);

}  // namespace honeysim
