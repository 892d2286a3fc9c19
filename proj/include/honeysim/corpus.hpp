#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "honeysim/rng.hpp"
#include "honeysim/types.hpp"

namespace honeysim {

// Lowercases, splits on whitespace and strips surrounding punctuation.
// Leading '#' and '@' are preserved so hashtags and mentions survive.
std::vector<std::string> tokenize(const std::string& text);

std::int32_t parse_iso_date(const std::string& iso);  // days since 1970-01-01
std::string format_iso_date(std::int32_t day);

struct RegistryEntry {
  std::string handle;
  bool leader = false;
};

// Two-column text: handle, then "leader"/"member" (or 1/0).
std::vector<RegistryEntry> ingest_actors(const std::string& path);
std::vector<RegistryEntry> synthesize_actors(std::size_t count, std::size_t leaders,
                                             std::uint64_t seed);

struct Article {
  std::int32_t day = 0;  // civil day of publication
  std::vector<std::string> headline;
  std::vector<std::string> abstract;
};

struct NewsCorpus {
  std::vector<Article> articles;
  std::map<std::int32_t, std::vector<std::size_t>> by_day;

  void index();
  // Articles from exactly the given day ("only the proceeding day's news").
  std::vector<std::size_t> on_day(std::int32_t day) const;
};

// Tab-separated: ISO date, headline, abstract.
NewsCorpus ingest_news(const std::string& path);
NewsCorpus synthesize_news(std::int32_t first_day, std::int32_t days, std::size_t per_day,
                           std::uint64_t seed);

// One scripted actor status; mentions reference registry indices and are
// resolved to platform users by the campaign runner.
struct PlannedPost {
  Tick tick = 0;
  std::size_t actor = 0;  // index into the registry entry list
  std::vector<std::string> tokens;
  std::vector<std::string> hashtags;
  std::vector<std::size_t> mention_actors;
};

struct ActorPostParams {
  double leader_rate_per_tick = 0.08;
  double member_rate_per_tick = 0.02;
  double hashtag_p = 0.5;
  double mention_p = 0.15;
};

// File format: tick <TAB> handle <TAB> text. Hashtags/mentions are parsed
// out of the text; '@handle' tokens resolve against the registry.
std::vector<PlannedPost> ingest_actor_posts(const std::string& path,
                                            const std::vector<RegistryEntry>& registry);
std::vector<PlannedPost> synthesize_actor_posts(const ActorPostParams& params,
                                                const std::vector<RegistryEntry>& registry,
                                                Tick total_ticks, std::uint64_t seed);

const std::vector<std::string>& topic_word_pool();
const std::vector<std::string>& filler_word_pool();

std::set<std::string> load_stopwords(const std::string& path);

// Most frequent non-stopword keywords across a post plan; this seeds agent
// trigger interests so that the population and the corpus share a topic
// vocabulary.
std::vector<std::string> keyword_pool_from_posts(const std::vector<PlannedPost>& posts,
                                                 const std::set<std::string>& stopwords,
                                                 std::size_t top_n);

}  // namespace honeysim
