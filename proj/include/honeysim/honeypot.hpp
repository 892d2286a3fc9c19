#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "honeysim/corpus.hpp"
#include "honeysim/platform.hpp"
#include "honeysim/population.hpp"
#include "honeysim/techniques.hpp"

namespace honeysim {

struct HoneypotConfig {
  std::string name;
  std::vector<TechniqueId> techniques;  // non-empty; executed in ascending id order
  int budget_per_technique = 5;         // actions per technique per tick
  int replications = 1;
};

// Content-only honeypots are allowed but worth flagging: they produce little
// social interaction compared to anything that follows.
bool generation_only(const HoneypotConfig& config);

// The tested combinations transcribed from the combination matrix: each
// marked cell is one honeypot, a consumption singleton on the diagonal or a
// consumption+generation pair in columns 13..37. 41 in total.
std::vector<HoneypotConfig> load_figure2_matrix(const std::string& fixture_path,
                                                int budget_per_technique = 5);

struct CampaignSetup {
  std::uint64_t seed = 1;
  Tick campaign_ticks = 168;
  Tick warmup_ticks = 168;  // pre-campaign history so week-long windows exist at tick 0
  RateLimitPolicy rate_limits;
  PopulationSpec population;
  std::vector<RegistryEntry> registry_entries;
  NewsCorpus news;
  std::vector<PlannedPost> actor_posts;
  std::vector<HoneypotConfig> honeypots;
  TrendConfig trend_config;
  std::string geo_region = "ZA";
  std::int32_t start_day = 0;  // civil day of the first campaign tick
  Lexicons lexicons;
  std::size_t keyword_pool_size = 40;
  std::string honeypot_handle_prefix = "hp_";
};

struct HoneypotSummary {
  std::string name;
  UserId account = 0;
  std::vector<TechniqueId> techniques;
  bool generation_only = false;
  std::optional<Tick> suspended_at;
  std::set<UserId> attracted;  // distinct non-honeypot actors with events targeting this account
  std::uint64_t interactions = 0;
};

struct CampaignResult {
  std::unique_ptr<Platform> platform;
  ActorRegistry registry;
  GroundTruth labels;
  std::vector<HoneypotSummary> honeypots;
  std::set<UserId> honeypot_accounts;
  Tick warmup_ticks = 0;
  Tick campaign_ticks = 0;
};

// Creates the honeypot's platform account: fresh profile, age 0, zero
// counters. Throws on an empty or invalid technique set.
UserId build_honeypot(Platform& platform, const HoneypotConfig& config,
                      const std::string& handle);

CampaignResult run_campaign(const CampaignSetup& setup);

}  // namespace honeysim
