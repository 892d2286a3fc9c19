#include "honeysim/honeypot.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace honeysim {

bool generation_only(const HoneypotConfig& config) {
  for (TechniqueId id : config.techniques) {
    if (technique(id).family == TechniqueFamily::Consume) return false;
  }
  return true;
}

std::vector<HoneypotConfig> load_figure2_matrix(const std::string& fixture_path,
                                                int budget_per_technique) {
  std::ifstream in(fixture_path);
  if (!in) throw std::runtime_error("cannot open combination fixture: " + fixture_path);
  struct Cell {
    int row;
    int col;
    bool uncertain;
  };
  std::vector<Cell> cells;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    Cell c{0, 0, false};
    std::string flag;
    if (!(is >> c.row >> c.col)) {
      throw std::runtime_error(fixture_path + ":" + std::to_string(lineno) + ": bad cell");
    }
    if (is >> flag) c.uncertain = flag == "uncertain";
    cells.push_back(c);
  }

  // integrity: the matrix is 12x37, diagonal singletons, pairs above column 12
  std::set<std::pair<int, int>> seen;
  std::set<int> singleton_rows;
  for (const Cell& c : cells) {
    if (c.row < 1 || c.row > 12 || c.col < 1 || c.col > 37) {
      throw std::runtime_error(fixture_path + ": cell out of matrix bounds");
    }
    if (c.col <= 12 && c.col != c.row) {
      throw std::runtime_error(fixture_path + ": off-diagonal cell in singleton columns");
    }
    if (!seen.insert({c.row, c.col}).second) {
      throw std::runtime_error(fixture_path + ": duplicate cell");
    }
    if (c.col == c.row) singleton_rows.insert(c.row);
  }
  if (singleton_rows.size() != 12) {
    throw std::runtime_error(fixture_path + ": expected all 12 consumption singletons");
  }
  if (cells.size() != 41) {
    throw std::runtime_error(fixture_path + ": expected 41 combinations, found " +
                             std::to_string(cells.size()));
  }

  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.col != b.col) return a.col < b.col;
    return a.row < b.row;
  });
  std::vector<HoneypotConfig> out;
  for (const Cell& c : cells) {
    if (c.uncertain) continue;
    HoneypotConfig cfg;
    cfg.budget_per_technique = budget_per_technique;
    if (c.col <= 12) {
      cfg.name = "hp" + std::to_string(c.col);
      cfg.techniques = {static_cast<TechniqueId>(c.row)};
    } else {
      cfg.name = "hp" + std::to_string(c.col) + "_" + std::to_string(c.row);
      cfg.techniques = {static_cast<TechniqueId>(c.row), static_cast<TechniqueId>(c.col)};
    }
    out.push_back(std::move(cfg));
  }
  return out;
}

UserId build_honeypot(Platform& platform, const HoneypotConfig& config,
                      const std::string& handle) {
  if (config.techniques.empty()) {
    throw std::invalid_argument("honeypot '" + config.name + "' has no techniques");
  }
  for (TechniqueId id : config.techniques) technique(id);  // validates the ids
  UserProfile profile;
  profile.handle = handle;
  profile.account_age_days = 0;
  profile.honeypot = true;
  profile.locale = "en";
  return platform.create_user(std::move(profile));
}

namespace {

struct HoneypotRuntime {
  HoneypotConfig config;
  std::string name;
  UserId account = 0;
  std::vector<TechniqueId> techniques;  // ascending
  std::map<TechniqueId, std::size_t> cursors;
  Rng rng;
};

UserProfile actor_profile(const RegistryEntry& entry, Rng& rng) {
  UserProfile p;
  p.handle = entry.handle;
  p.baseline_followers = static_cast<std::uint64_t>(
      rng.lognormal_median(entry.leader ? 50000.0 : 4000.0, 1.0));
  p.baseline_friends = static_cast<std::uint64_t>(rng.lognormal_median(800.0, 0.8));
  p.baseline_statuses = static_cast<std::uint64_t>(rng.lognormal_median(6000.0, 1.0));
  p.listed_count = entry.leader ? 200 : 20;
  p.account_age_days = static_cast<std::int32_t>(rng.uniform_int(1500, 4000));
  p.verified = entry.leader;
  p.geo_home = "ZA";
  return p;
}

}  // namespace

CampaignResult run_campaign(const CampaignSetup& setup) {
  if (setup.campaign_ticks < 0 || setup.warmup_ticks < 0) {
    throw std::invalid_argument("negative tick counts");
  }
  Rng root(setup.seed);

  CampaignResult result;
  result.warmup_ticks = setup.warmup_ticks;
  result.campaign_ticks = setup.campaign_ticks;
  result.platform = std::make_unique<Platform>(setup.rate_limits);
  Platform& platform = *result.platform;

  // actors first: registry ids are stable and precede everything else
  Rng actor_rng = root.fork(0xAC);
  for (const RegistryEntry& entry : setup.registry_entries) {
    UserId id = platform.create_user(actor_profile(entry, actor_rng));
    result.registry.actors.push_back(id);
    if (entry.leader) result.registry.leaders.push_back(id);
  }

  auto keyword_pool = keyword_pool_from_posts(setup.actor_posts, setup.trend_config.stopwords,
                                              setup.keyword_pool_size);
  Population population(platform, setup.population, keyword_pool, result.registry,
                        root.fork(0x90));
  result.labels = population.ground_truth();

  std::vector<HoneypotRuntime> honeypots;
  std::uint64_t hp_index = 0;
  for (const HoneypotConfig& config : setup.honeypots) {
    int reps = std::max(1, config.replications);
    for (int r = 0; r < reps; ++r) {
      HoneypotRuntime rt{config, config.name, 0, config.techniques, {}, root.fork(0x1000 + hp_index)};
      if (reps > 1) rt.name += "_r" + std::to_string(r + 1);
      rt.account = build_honeypot(platform, config, setup.honeypot_handle_prefix + rt.name);
      std::sort(rt.techniques.begin(), rt.techniques.end());
      rt.techniques.erase(std::unique(rt.techniques.begin(), rt.techniques.end()),
                          rt.techniques.end());
      result.honeypot_accounts.insert(rt.account);
      honeypots.push_back(std::move(rt));
      ++hp_index;
    }
  }

  // planned actor posts grouped by tick
  std::map<Tick, std::vector<const PlannedPost*>> posts_by_tick;
  for (const PlannedPost& p : setup.actor_posts) posts_by_tick[p.tick].push_back(&p);

  std::size_t status_mark = 0;
  std::size_t event_mark = 0;
  auto route_new_records = [&](bool notify) {
    if (notify) {
      for (; status_mark < platform.status_count(); ++status_mark) {
        population.notify_status(platform, static_cast<StatusId>(status_mark));
      }
      for (; event_mark < platform.events().size(); ++event_mark) {
        population.notify_event(platform, event_mark);
      }
    } else {
      status_mark = platform.status_count();
      event_mark = platform.events().size();
    }
  };

  auto post_actor_content = [&](Tick t) {
    auto it = posts_by_tick.find(t);
    if (it == posts_by_tick.end()) return;
    for (const PlannedPost* p : it->second) {
      StatusDraft draft;
      draft.tokens = p->tokens;
      draft.hashtags = p->hashtags;
      for (std::size_t actor_index : p->mention_actors) {
        UserId uid = result.registry.actors.at(actor_index);
        draft.mentions.push_back(uid);
        draft.tokens.push_back("@" + platform.user(uid).handle);
      }
      platform.post_status(result.registry.actors.at(p->actor), std::move(draft));
    }
  };

  Tick total_ticks = setup.warmup_ticks + setup.campaign_ticks;
  for (Tick t = 0; t < total_ticks; ++t) {
    platform.begin_tick(t);
    bool in_campaign = t >= setup.warmup_ticks;

    post_actor_content(t);
    route_new_records(in_campaign);

    if (in_campaign) {
      population.step_tick(platform);
      route_new_records(true);

      TickFeeds feeds = build_tick_feeds(platform, result.registry, t, setup.trend_config,
                                         setup.geo_region);
      std::int32_t campaign_day = (t - setup.warmup_ticks) / kTicksPerDay;
      ComposeContext compose_ctx;
      compose_ctx.platform = &platform;
      compose_ctx.registry = &result.registry;
      compose_ctx.news = &setup.news;
      compose_ctx.lexicons = &setup.lexicons;
      compose_ctx.news_day = setup.start_day + campaign_day - 1;  // the proceeding day
      compose_ctx.trends = feeds.trends;
      // generation sources draw on the trailing week of actor content
      for (UserId actor : result.registry.actors) {
        for (StatusId sid : platform.statuses_of(actor)) {
          const Status& st = platform.status(sid);
          if (st.kind == StatusKind::Original && st.tick >= t - kTicksPerWeek && st.tick < t) {
            compose_ctx.actor_window.push_back(sid);
          }
        }
      }
      std::sort(compose_ctx.actor_window.begin(), compose_ctx.actor_window.end());

      for (HoneypotRuntime& hp : honeypots) {
        if (platform.user(hp.account).suspended) continue;
        for (TechniqueId tid : hp.techniques) {
          const TechniqueSpec& spec = technique(tid);
          std::size_t budget = static_cast<std::size_t>(std::max(0, hp.config.budget_per_technique));
          if (spec.family == TechniqueFamily::Consume) {
            std::size_t& cursor = hp.cursors[tid];
            run_consumption_technique(platform, spec, hp.account, result.registry, feeds, budget,
                                      cursor, hp.rng);
          } else {
            for (std::size_t i = 0; i < budget; ++i) {
              try {
                GeneratedContent gc = compose_status(spec, compose_ctx, hp.rng);
                StatusDraft draft;
                draft.tokens = std::move(gc.tokens);
                draft.language = gc.language;
                draft.coherent = gc.coherent;
                if (gc.mention) draft.mentions.push_back(*gc.mention);
                if (gc.hashtag) draft.hashtags.push_back(*gc.hashtag);
                draft.technique = spec.id;
                if (platform.post_status(hp.account, std::move(draft)).outcome !=
                    ActionOutcome::Ok) {
                  break;  // rate-limited or suspended; stop burning budget
                }
              } catch (const EmptyCorpusError&) {
                break;  // nothing to say this tick
              }
            }
          }
        }
      }
      route_new_records(true);
    }
    platform.end_tick();
  }

  // summaries
  for (HoneypotRuntime& hp : honeypots) {
    HoneypotSummary s;
    s.name = hp.name;
    s.account = hp.account;
    s.techniques = hp.techniques;
    s.generation_only = generation_only(hp.config);
    for (const auto& [user, tick] : platform.suspensions()) {
      if (user == hp.account) s.suspended_at = tick;
    }
    result.honeypots.push_back(std::move(s));
  }
  std::map<UserId, std::size_t> by_account;
  for (std::size_t i = 0; i < result.honeypots.size(); ++i) {
    by_account[result.honeypots[i].account] = i;
  }
  for (const InteractionEvent& ev : platform.events()) {
    auto it = by_account.find(ev.target_user);
    if (it == by_account.end()) continue;
    if (result.honeypot_accounts.count(ev.actor)) continue;
    result.honeypots[it->second].attracted.insert(ev.actor);
    ++result.honeypots[it->second].interactions;
  }
  return result;
}

}  // namespace honeysim
