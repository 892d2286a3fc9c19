#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "honeysim/corpus.hpp"
#include "honeysim/platform.hpp"
#include "honeysim/rng.hpp"
#include "honeysim/types.hpp"

namespace honeysim {

enum class TechniqueFamily : std::uint8_t { Consume, Generate };
enum class TargetSource : std::uint8_t { PoliticalActors, KeywordFeed, GeoRealtime };
enum class Ordering : std::uint8_t { Sequential, Random, None };
enum class ContentSource : std::uint8_t { PoliticalActors, News };
enum class WordOrder : std::uint8_t { Sentence, Randomised };

// One of the 37 solicitation techniques. Consumption techniques (1-12)
// interact with existing users/statuses; generation techniques (13-37) post
// composed content and are the permutations of source x language x word
// order x social features.
struct TechniqueSpec {
  TechniqueId id = 0;
  TechniqueFamily family = TechniqueFamily::Consume;
  // consumption axes
  InteractionKind verb = InteractionKind::Follow;
  TargetSource target_source = TargetSource::PoliticalActors;
  Ordering ordering = Ordering::None;
  // generation axes
  ContentSource source = ContentSource::PoliticalActors;
  Language language = Language::En;
  WordOrder word_order = WordOrder::Sentence;
  bool mentions = false;
  bool hashtags = false;
};

const std::vector<TechniqueSpec>& technique_catalogue();
const TechniqueSpec& technique(TechniqueId id);  // throws on id outside 1..37

std::string_view to_string(TechniqueFamily f);
std::string_view to_string(TargetSource s);
std::string_view to_string(Ordering o);
std::string_view to_string(ContentSource s);
std::string_view to_string(WordOrder w);

// --- actor registry -------------------------------------------------------

struct ActorRegistry {
  std::vector<UserId> actors;   // all political actors, registry order
  std::vector<UserId> leaders;  // subset used for trend extraction
};

// --- trending keywords -----------------------------------------------------

struct KeywordTrend {
  std::string keyword;
  std::uint32_t count = 0;
  std::uint32_t rank = 0;  // 1-based
};

struct TrendConfig {
  std::size_t k = 10;
  int ngram_max = 1;  // phrases up to this length; 1 = unigrams/hashtags only
  std::set<std::string> stopwords;
};

// Top-k keywords across the leaders' statuses in [from_tick, to_tick],
// counting one occurrence per (status, keyword), ties broken
// lexicographically ascending.
std::vector<KeywordTrend> extract_trending_keywords(const Platform& platform,
                                                    const std::vector<UserId>& leaders,
                                                    Tick from_tick, Tick to_tick,
                                                    const TrendConfig& config);

// --- target selection ------------------------------------------------------

template <class T>
struct Selection {
  std::vector<T> targets;
  std::size_t cursor = 0;
};

// Sequential: next n from the cursor, wrapping at the end. Random: n sampled
// without replacement from the whole feed. Targets for which skip() returns
// true are passed over in both modes.
template <class T, class SkipFn>
Selection<T> select_targets(const std::vector<T>& feed, Ordering ordering, std::size_t cursor,
                            std::size_t n, Rng& rng, SkipFn skip) {
  Selection<T> sel;
  sel.cursor = cursor;
  if (feed.empty() || n == 0) return sel;
  if (ordering == Ordering::Random) {
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < feed.size(); ++i) {
      if (!skip(feed[i])) eligible.push_back(i);
    }
    for (std::size_t idx : rng.sample_indices(eligible.size(), n)) {
      sel.targets.push_back(feed[eligible[idx]]);
    }
    return sel;
  }
  // sequential (also used for Ordering::None list walks)
  std::size_t pos = cursor % feed.size();
  for (std::size_t visited = 0; visited < feed.size() && sel.targets.size() < n; ++visited) {
    const T& candidate = feed[pos];
    pos = (pos + 1) % feed.size();
    if (skip(candidate)) continue;
    sel.targets.push_back(candidate);
  }
  sel.cursor = pos;
  return sel;
}

// --- content generation ----------------------------------------------------

struct EmptyCorpusError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Lexicon {
  std::map<std::string, std::string> entries;
  std::string fallback_suffix;  // applied to unmapped tokens
};

struct Lexicons {
  Lexicon af, xh, zu;
};

Lexicon load_lexicon(const std::string& path, std::string fallback_suffix);
Lexicons load_lexicons(const std::string& data_dir);

// Deterministic token-wise mapping; unmapped tokens pass through with a
// language-specific suffix. Hashtag and mention tokens are left alone.
std::vector<std::string> pseudo_translate(const std::vector<std::string>& tokens, Language target,
                                          const Lexicons& lexicons);

// Uniform permutation from the seeded stream; when a distinct permutation
// exists the output is guaranteed to differ from the input.
std::vector<std::string> shuffle_words(std::vector<std::string> tokens, Rng& rng);

struct GeneratedContent {
  std::vector<std::string> tokens;
  Language language = Language::En;
  bool coherent = true;
  std::optional<UserId> mention;
  std::optional<std::string> hashtag;
  std::string provenance_kind;  // "actor_status" or "news"
  std::uint32_t provenance_id = 0;
};

struct ComposeContext {
  const Platform* platform = nullptr;
  const ActorRegistry* registry = nullptr;
  const NewsCorpus* news = nullptr;
  const Lexicons* lexicons = nullptr;
  std::vector<StatusId> actor_window;        // actor statuses from the trailing week
  std::int32_t news_day = 0;                 // "only the proceeding day's news"
  std::vector<KeywordTrend> trends;          // current top-k
  std::size_t max_chars = 280;
};

GeneratedContent compose_status(const TechniqueSpec& spec, const ComposeContext& ctx, Rng& rng);

// --- consumption execution --------------------------------------------------

// Per-tick view of the world shared by every honeypot's techniques.
struct TickFeeds {
  std::vector<KeywordTrend> trends;
  std::vector<std::string> trend_keywords;
  std::vector<StatusId> keyword_statuses;  // trailing week, (tick, id) ascending
  std::vector<UserId> keyword_authors;     // feed order, first occurrence
  std::vector<StatusId> geo_statuses;      // current tick, geo + keyword filtered
  std::vector<UserId> geo_authors;
};

TickFeeds build_tick_feeds(const Platform& platform, const ActorRegistry& registry, Tick now,
                           const TrendConfig& trend_config, const std::string& geo_region);

struct ConsumptionOutcome {
  std::uint32_t issued = 0;   // events that landed
  std::uint32_t dropped = 0;  // rate-limited attempts
};

// Executes one consumption technique for one honeypot, issuing at most
// `budget` interact() calls attributed to spec.id. The cursor is the
// honeypot's private position in the technique's feed.
ConsumptionOutcome run_consumption_technique(Platform& platform, const TechniqueSpec& spec,
                                             UserId honeypot, const ActorRegistry& registry,
                                             const TickFeeds& feeds, std::size_t budget,
                                             std::size_t& cursor, Rng& rng);

}  // namespace honeysim
