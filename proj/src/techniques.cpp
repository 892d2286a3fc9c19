#include "honeysim/techniques.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace honeysim {

namespace {

std::vector<TechniqueSpec> build_catalogue() {
  std::vector<TechniqueSpec> out;
  auto consume = [&](TechniqueId id, InteractionKind verb, TargetSource src, Ordering ord) {
    TechniqueSpec s;
    s.id = id;
    s.family = TechniqueFamily::Consume;
    s.verb = verb;
    s.target_source = src;
    s.ordering = ord;
    out.push_back(s);
  };
  auto generate = [&](TechniqueId id, ContentSource src, Language lang, WordOrder order,
                      bool mentions, bool hashtags) {
    TechniqueSpec s;
    s.id = id;
    s.family = TechniqueFamily::Generate;
    s.source = src;
    s.language = lang;
    s.word_order = order;
    s.mentions = mentions;
    s.hashtags = hashtags;
    out.push_back(s);
  };

  using K = InteractionKind;
  using TS = TargetSource;
  using O = Ordering;
  consume(1, K::Follow, TS::PoliticalActors, O::None);
  consume(2, K::Favourite, TS::PoliticalActors, O::None);
  consume(3, K::Retweet, TS::PoliticalActors, O::None);
  consume(4, K::Follow, TS::KeywordFeed, O::Sequential);
  consume(5, K::Follow, TS::KeywordFeed, O::Random);
  consume(6, K::Favourite, TS::KeywordFeed, O::Sequential);
  consume(7, K::Favourite, TS::KeywordFeed, O::Random);
  consume(8, K::Retweet, TS::KeywordFeed, O::Sequential);
  consume(9, K::Retweet, TS::KeywordFeed, O::Random);
  consume(10, K::Follow, TS::GeoRealtime, O::None);
  consume(11, K::Favourite, TS::GeoRealtime, O::None);
  consume(12, K::Retweet, TS::GeoRealtime, O::None);

  using CS = ContentSource;
  using L = Language;
  using W = WordOrder;
  generate(13, CS::PoliticalActors, L::En, W::Sentence, false, false);
  generate(14, CS::PoliticalActors, L::En, W::Randomised, true, false);
  generate(15, CS::PoliticalActors, L::En, W::Randomised, false, true);
  generate(16, CS::PoliticalActors, L::Af, W::Sentence, false, true);
  generate(17, CS::PoliticalActors, L::Af, W::Randomised, false, false);
  generate(18, CS::PoliticalActors, L::Xh, W::Sentence, true, false);
  generate(19, CS::PoliticalActors, L::Xh, W::Randomised, true, true);
  generate(20, CS::PoliticalActors, L::Xh, W::Randomised, false, true);
  generate(21, CS::PoliticalActors, L::Zu, W::Sentence, true, false);
  generate(22, CS::PoliticalActors, L::Zu, W::Randomised, true, true);
  generate(23, CS::News, L::En, W::Sentence, true, true);
  generate(24, CS::News, L::En, W::Sentence, false, true);
  generate(25, CS::News, L::En, W::Sentence, false, false);
  generate(26, CS::News, L::En, W::Randomised, true, false);
  generate(27, CS::News, L::En, W::Randomised, false, true);
  generate(28, CS::News, L::En, W::Randomised, false, false);
  generate(29, CS::News, L::Af, W::Sentence, true, false);
  generate(30, CS::News, L::Af, W::Sentence, false, true);
  generate(31, CS::News, L::Af, W::Randomised, true, true);
  generate(32, CS::News, L::Af, W::Randomised, false, false);
  generate(33, CS::News, L::Xh, W::Sentence, true, false);
  generate(34, CS::News, L::Xh, W::Randomised, true, true);
  generate(35, CS::News, L::Zu, W::Sentence, false, true);
  generate(36, CS::News, L::Zu, W::Randomised, false, true);
  generate(37, CS::News, L::Zu, W::Randomised, false, false);
  return out;
}

}  // namespace

const std::vector<TechniqueSpec>& technique_catalogue() {
  static const std::vector<TechniqueSpec> catalogue = build_catalogue();
  return catalogue;
}

const TechniqueSpec& technique(TechniqueId id) {
  const auto& cat = technique_catalogue();
  if (id < 1 || id > cat.size()) {
    throw std::out_of_range("unknown technique id " + std::to_string(id));
  }
  return cat[id - 1];
}

std::string_view to_string(TechniqueFamily f) {
  return f == TechniqueFamily::Consume ? "consume" : "generate";
}
std::string_view to_string(TargetSource s) {
  switch (s) {
    case TargetSource::PoliticalActors: return "political_actors";
    case TargetSource::KeywordFeed: return "keyword_feed";
    case TargetSource::GeoRealtime: return "geo_realtime";
  }
  return "political_actors";
}
std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::Sequential: return "sequential";
    case Ordering::Random: return "random";
    case Ordering::None: return "n/a";
  }
  return "n/a";
}
std::string_view to_string(ContentSource s) {
  return s == ContentSource::PoliticalActors ? "political_actors" : "news";
}
std::string_view to_string(WordOrder w) {
  return w == WordOrder::Sentence ? "sentence" : "randomised";
}

// --- trends -----------------------------------------------------------------

std::vector<KeywordTrend> extract_trending_keywords(const Platform& platform,
                                                    const std::vector<UserId>& leaders,
                                                    Tick from_tick, Tick to_tick,
                                                    const TrendConfig& config) {
  std::map<std::string, std::uint32_t> counts;
  for (UserId leader : leaders) {
    for (StatusId sid : platform.statuses_of(leader)) {
      const Status& st = platform.status(sid);
      if (st.tick < from_tick || st.tick > to_tick) continue;
      if (st.kind != StatusKind::Original) continue;
      // one count per (status, keyword)
      std::set<std::string> keys;
      std::vector<std::string> plain;
      for (const auto& t : st.tokens) {
        if (t.size() > 1 && t[0] == '#') {
          keys.insert(t.substr(1));
          continue;
        }
        if (!t.empty() && t[0] == '@') continue;
        if (t.size() < 2 || config.stopwords.count(t)) continue;
        keys.insert(t);
        plain.push_back(t);
      }
      for (int n = 2; n <= config.ngram_max; ++n) {
        for (std::size_t i = 0; i + n <= plain.size(); ++i) {
          std::string gram = plain[i];
          for (int j = 1; j < n; ++j) gram += " " + plain[i + j];
          keys.insert(gram);
        }
      }
      for (const auto& k : keys) ++counts[k];
    }
  }
  std::vector<KeywordTrend> ranked;
  ranked.reserve(counts.size());
  for (const auto& [kw, n] : counts) ranked.push_back({kw, n, 0});
  std::sort(ranked.begin(), ranked.end(), [](const KeywordTrend& a, const KeywordTrend& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.keyword < b.keyword;
  });
  if (ranked.size() > config.k) ranked.resize(config.k);
  for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i].rank = static_cast<std::uint32_t>(i + 1);
  return ranked;
}

// --- pseudo-translation ------------------------------------------------------

Lexicon load_lexicon(const std::string& path, std::string fallback_suffix) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lexicon: " + path);
  Lexicon lex;
  lex.fallback_suffix = std::move(fallback_suffix);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    std::string from, to;
    if (!(is >> from >> to)) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected two columns");
    }
    lex.entries[from] = to;
  }
  return lex;
}

Lexicons load_lexicons(const std::string& data_dir) {
  Lexicons lx;
  lx.af = load_lexicon(data_dir + "/lexicon_af.txt", "af");
  lx.xh = load_lexicon(data_dir + "/lexicon_xh.txt", "xh");
  lx.zu = load_lexicon(data_dir + "/lexicon_zu.txt", "zu");
  return lx;
}

std::vector<std::string> pseudo_translate(const std::vector<std::string>& tokens, Language target,
                                          const Lexicons& lexicons) {
  const Lexicon* lex = nullptr;
  switch (target) {
    case Language::Af: lex = &lexicons.af; break;
    case Language::Xh: lex = &lexicons.xh; break;
    case Language::Zu: lex = &lexicons.zu; break;
    case Language::En: throw std::invalid_argument("pseudo_translate: target must not be en");
  }
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!t.empty() && (t[0] == '#' || t[0] == '@')) {
      out.push_back(t);
      continue;
    }
    auto it = lex->entries.find(t);
    if (it != lex->entries.end()) {
      out.push_back(it->second);
    } else {
      out.push_back(t + "-" + lex->fallback_suffix);
    }
  }
  return out;
}

std::vector<std::string> shuffle_words(std::vector<std::string> tokens, Rng& rng) {
  if (tokens.size() < 2) return tokens;
  bool distinct_possible = false;
  for (const auto& t : tokens) {
    if (t != tokens.front()) {
      distinct_possible = true;
      break;
    }
  }
  if (!distinct_possible) return tokens;
  const std::vector<std::string> original = tokens;
  for (int attempt = 0; attempt < 64; ++attempt) {
    rng.shuffle(tokens);
    if (tokens != original) return tokens;
  }
  // permutations kept colliding; rotate, which preserves the multiset
  std::rotate(tokens.begin(), tokens.begin() + 1, tokens.end());
  return tokens;
}

// --- composition --------------------------------------------------------------

GeneratedContent compose_status(const TechniqueSpec& spec, const ComposeContext& ctx, Rng& rng) {
  if (spec.family != TechniqueFamily::Generate) {
    throw std::invalid_argument("compose_status: not a generation technique");
  }
  GeneratedContent gc;
  gc.language = spec.language;
  gc.coherent = spec.word_order == WordOrder::Sentence;

  std::vector<std::string> base;
  if (spec.source == ContentSource::PoliticalActors) {
    if (ctx.actor_window.empty()) {
      throw EmptyCorpusError("no political actor statuses in window");
    }
    StatusId src = ctx.actor_window[rng.uniform_index(ctx.actor_window.size())];
    gc.provenance_kind = "actor_status";
    gc.provenance_id = src;
    for (const auto& t : ctx.platform->status(src).tokens) {
      if (!t.empty() && t[0] == '@') continue;     // duplicated content, not its mentions
      if (t.size() > 1 && t[0] == '#') {
        base.push_back(t.substr(1));               // keep the word, drop the tag
      } else {
        base.push_back(t);
      }
    }
    if (base.empty()) throw EmptyCorpusError("source status had no plain tokens");
  } else {
    auto todays = ctx.news->on_day(ctx.news_day);
    if (todays.empty()) {
      throw EmptyCorpusError("no news articles for day " + format_iso_date(ctx.news_day));
    }
    std::size_t pick = todays[rng.uniform_index(todays.size())];
    gc.provenance_kind = "news";
    gc.provenance_id = static_cast<std::uint32_t>(pick);
    const Article& a = ctx.news->articles[pick];
    base = a.headline;
    base.insert(base.end(), a.abstract.begin(), a.abstract.end());
  }

  if (spec.language != Language::En) base = pseudo_translate(base, spec.language, *ctx.lexicons);
  if (spec.word_order == WordOrder::Randomised) base = shuffle_words(std::move(base), rng);

  std::vector<std::string> suffix;
  if (spec.mentions) {
    if (ctx.registry->actors.empty()) throw EmptyCorpusError("actor registry empty");
    UserId target = ctx.registry->actors[rng.uniform_index(ctx.registry->actors.size())];
    gc.mention = target;
    suffix.push_back("@" + ctx.platform->user(target).handle);
  }
  if (spec.hashtags) {
    if (ctx.trends.empty()) throw EmptyCorpusError("no trending keywords");
    const auto& kw = ctx.trends[rng.uniform_index(ctx.trends.size())].keyword;
    gc.hashtag = kw;
    suffix.push_back("#" + kw);
  }

  auto joined_length = [&](const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::size_t len = 0, n = 0;
    for (const auto& t : a) len += t.size(), ++n;
    for (const auto& t : b) len += t.size(), ++n;
    return n == 0 ? 0 : len + n - 1;
  };
  // trim source tokens until the assembled status fits; the social features
  // are part of the technique's definition and always survive
  while (base.size() > 1 && joined_length(base, suffix) > ctx.max_chars) base.pop_back();

  gc.tokens = std::move(base);
  gc.tokens.insert(gc.tokens.end(), suffix.begin(), suffix.end());
  return gc;
}

// --- consumption ---------------------------------------------------------------

TickFeeds build_tick_feeds(const Platform& platform, const ActorRegistry& registry, Tick now,
                           const TrendConfig& trend_config, const std::string& geo_region) {
  TickFeeds feeds;
  feeds.trends = extract_trending_keywords(platform, registry.leaders, now - kTicksPerWeek,
                                           now - 1, trend_config);
  for (const auto& t : feeds.trends) feeds.trend_keywords.push_back(t.keyword);

  // keyword feed: everything about the current trends from the trailing week
  std::set<StatusId> seen;
  for (const auto& kw : feeds.trend_keywords) {
    for (StatusId sid : platform.search_statuses(kw, now - kTicksPerWeek, now)) {
      if (platform.user(platform.status(sid).author).honeypot) continue;
      if (seen.insert(sid).second) feeds.keyword_statuses.push_back(sid);
    }
  }
  std::sort(feeds.keyword_statuses.begin(), feeds.keyword_statuses.end());
  std::set<UserId> seen_authors;
  for (StatusId sid : feeds.keyword_statuses) {
    UserId author = platform.status(sid).author;
    if (seen_authors.insert(author).second) feeds.keyword_authors.push_back(author);
  }

  feeds.geo_statuses = platform.stream_filter(feeds.trend_keywords, geo_region);
  std::set<UserId> seen_geo;
  for (auto it = feeds.geo_statuses.begin(); it != feeds.geo_statuses.end();) {
    UserId author = platform.status(*it).author;
    if (platform.user(author).honeypot) {
      it = feeds.geo_statuses.erase(it);
      continue;
    }
    if (seen_geo.insert(author).second) feeds.geo_authors.push_back(author);
    ++it;
  }
  return feeds;
}

namespace {

// Applies one verb to one target, returning whether the attempt consumed
// budget (Ok or RateLimited).
bool apply_verb(Platform& platform, InteractionKind verb, UserId honeypot, UserId target_user,
                std::optional<StatusId> target_status, TechniqueId tech,
                ConsumptionOutcome& outcome) {
  InteractResult r = platform.interact(honeypot, verb, target_user, target_status, tech);
  switch (r.outcome) {
    case ActionOutcome::Ok:
      ++outcome.issued;
      return true;
    case ActionOutcome::RateLimited:
      ++outcome.dropped;
      return true;
    default:
      return false;
  }
}

}  // namespace

ConsumptionOutcome run_consumption_technique(Platform& platform, const TechniqueSpec& spec,
                                             UserId honeypot, const ActorRegistry& registry,
                                             const TickFeeds& feeds, std::size_t budget,
                                             std::size_t& cursor, Rng& rng) {
  if (spec.family != TechniqueFamily::Consume) {
    throw std::invalid_argument("run_consumption_technique: not a consumption technique");
  }
  ConsumptionOutcome outcome;
  if (platform.user(honeypot).suspended || budget == 0) return outcome;

  auto skip_user = [&](UserId u) {
    const auto& profile = platform.user(u);
    return u == honeypot || profile.honeypot || profile.suspended ||
           platform.follows(honeypot, u);
  };

  switch (spec.target_source) {
    case TargetSource::PoliticalActors: {
      // walk the registry with the honeypot's cursor
      const auto& feed = registry.actors;
      if (feed.empty()) return outcome;
      std::size_t pos = cursor % feed.size();
      for (std::size_t visited = 0; visited < feed.size() && budget > 0; ++visited) {
        UserId actor = feed[pos];
        pos = (pos + 1) % feed.size();
        if (platform.user(actor).suspended) continue;
        if (spec.verb == InteractionKind::Follow) {
          if (platform.follows(honeypot, actor)) continue;
          if (apply_verb(platform, spec.verb, honeypot, actor, std::nullopt, spec.id, outcome)) {
            --budget;
          }
        } else {
          // most recent status; a retweet resolves to its original
          auto latest = platform.latest_status_of(actor);
          if (!latest) continue;
          const Status& st = platform.status(*latest);
          StatusId target = st.kind == StatusKind::Retweet ? st.retweet_of : st.id;
          if (platform.user(platform.status(target).author).honeypot) continue;
          if (spec.verb == InteractionKind::Favourite && platform.has_favourited(honeypot, target))
            continue;
          if (spec.verb == InteractionKind::Retweet && platform.has_retweeted(honeypot, target))
            continue;
          if (apply_verb(platform, spec.verb, honeypot, 0, target, spec.id, outcome)) --budget;
        }
      }
      cursor = pos;
      break;
    }
    case TargetSource::KeywordFeed:
    case TargetSource::GeoRealtime: {
      bool realtime = spec.target_source == TargetSource::GeoRealtime;
      std::size_t fresh_cursor = 0;  // the real-time stream restarts every tick
      std::size_t& cur = realtime ? fresh_cursor : cursor;
      Ordering ordering = realtime ? Ordering::Sequential : spec.ordering;
      if (spec.verb == InteractionKind::Follow) {
        const auto& feed = realtime ? feeds.geo_authors : feeds.keyword_authors;
        auto sel = select_targets(feed, ordering, cur, budget, rng, skip_user);
        cur = sel.cursor;
        for (UserId u : sel.targets) {
          apply_verb(platform, spec.verb, honeypot, u, std::nullopt, spec.id, outcome);
        }
      } else {
        const auto& feed = realtime ? feeds.geo_statuses : feeds.keyword_statuses;
        auto skip_status = [&](StatusId sid) {
          const Status& st = platform.status(sid);
          if (st.author == honeypot || platform.user(st.author).honeypot ||
              platform.user(st.author).suspended) {
            return true;
          }
          if (spec.verb == InteractionKind::Favourite) return platform.has_favourited(honeypot, sid);
          return platform.has_retweeted(honeypot, sid);
        };
        auto sel = select_targets(feed, ordering, cur, budget, rng, skip_status);
        cur = sel.cursor;
        for (StatusId sid : sel.targets) {
          apply_verb(platform, spec.verb, honeypot, 0, sid, spec.id, outcome);
        }
      }
      break;
    }
  }
  return outcome;
}

}  // namespace honeysim
