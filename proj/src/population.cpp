#include "honeysim/population.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace honeysim {

std::string_view to_string(ArchetypeLabel label) {
  switch (label) {
    case ArchetypeLabel::FollowBackBot: return "follow_back_bot";
    case ArchetypeLabel::KeywordBot: return "keyword_bot";
    case ArchetypeLabel::AmplifierBot: return "amplifier_bot";
    case ArchetypeLabel::Cyborg: return "cyborg";
    case ArchetypeLabel::CasualHuman: return "casual_human";
    case ArchetypeLabel::EngagedHuman: return "engaged_human";
  }
  return "casual_human";
}

std::string_view to_string(GroundTruthClass cls) {
  return cls == GroundTruthClass::Automated ? "automated" : "human";
}

std::optional<ArchetypeLabel> archetype_from_string(std::string_view s) {
  for (auto label : {ArchetypeLabel::FollowBackBot, ArchetypeLabel::KeywordBot,
                     ArchetypeLabel::AmplifierBot, ArchetypeLabel::Cyborg,
                     ArchetypeLabel::CasualHuman, ArchetypeLabel::EngagedHuman}) {
    if (to_string(label) == s) return label;
  }
  return std::nullopt;
}

namespace {

std::vector<Archetype> build_default_archetypes() {
  auto make = [](ArchetypeLabel label, GroundTruthClass cls, double fb, double trig,
                 double aversion, double activity, double post, double geo, int watch,
                 int triggers) {
    Archetype a;
    a.label = label;
    a.ground_truth = cls;
    a.params.follow_back_p = fb;
    a.params.keyword_trigger_p = trig;
    a.params.gibberish_aversion_p = aversion;
    a.params.daily_activity_rate = activity;
    a.params.post_rate = post;
    a.params.geo_tag_p = geo;
    a.params.watched_actors = watch;
    a.params.trigger_keywords = triggers;
    return a;
  };
  using L = ArchetypeLabel;
  using C = GroundTruthClass;
  return {
      make(L::FollowBackBot, C::Automated, 0.90, 0.50, 0.0, 24.0, 0.08, 0.35, 3, 2),
      make(L::KeywordBot, C::Automated, 0.25, 0.60, 0.0, 24.0, 0.20, 0.30, 0, 3),
      make(L::AmplifierBot, C::Automated, 0.15, 0.50, 0.0, 24.0, 0.12, 0.25, 5, 2),
      make(L::Cyborg, C::Human, 0.75, 0.30, 0.80, 12.0, 0.10, 0.40, 2, 2),
      make(L::CasualHuman, C::Human, 0.12, 0.10, 0.92, 2.0, 0.06, 0.50, 0, 2),
      make(L::EngagedHuman, C::Human, 0.30, 0.25, 0.95, 6.0, 0.15, 0.50, 0, 3),
  };
}

const std::vector<Archetype>& default_archetypes() {
  static const std::vector<Archetype> archetypes = build_default_archetypes();
  return archetypes;
}

std::uint64_t draw_counter(Rng& rng, double median, double sigma) {
  double v = rng.lognormal_median(median, sigma);
  if (v < 0.0) v = 0.0;
  if (v > 2.0e6) v = 2.0e6;  // clip the extreme tail to platform-plausible sizes
  return static_cast<std::uint64_t>(std::llround(v));
}

const std::vector<std::pair<const char*, double>>& locale_pool() {
  static const std::vector<std::pair<const char*, double>> pool = {
      {"en", 0.78}, {"af", 0.08}, {"xh", 0.05}, {"zu", 0.05}, {"uk", 0.02}, {"zh", 0.02}};
  return pool;
}

std::string draw_handle(Rng& rng) {
  static const std::vector<std::string> syllables = {
      "tha", "ndi", "bo", "ka", "zi", "lu", "ma", "ne", "si", "vu",
      "ja",  "re",  "ko", "pe", "du", "fa", "mo", "li", "sa", "we"};
  std::string h;
  std::size_t n = 2 + rng.uniform_index(2);
  for (std::size_t i = 0; i < n; ++i) h += syllables[rng.uniform_index(syllables.size())];
  h += std::to_string(rng.uniform_u32(100));
  return h;
}

}  // namespace

const Archetype& default_archetype(ArchetypeLabel label) {
  return default_archetypes()[static_cast<std::size_t>(label)];
}

PopulationSpec default_population_spec() {
  PopulationSpec spec;
  spec.total = 1000;
  spec.mix = {
      {ArchetypeLabel::FollowBackBot, 0.05}, {ArchetypeLabel::KeywordBot, 0.04},
      {ArchetypeLabel::AmplifierBot, 0.03},  {ArchetypeLabel::Cyborg, 0.08},
      {ArchetypeLabel::CasualHuman, 0.55},   {ArchetypeLabel::EngagedHuman, 0.25},
  };
  return spec;
}

Population::Population(Platform& platform, const PopulationSpec& spec,
                       const std::vector<std::string>& keyword_pool,
                       const ActorRegistry& registry, Rng rng)
    : observation_cap_(spec.observation_cap),
      session_ticks_(std::max<Tick>(1, spec.session_ticks)),
      notification_ttl_(spec.notification_ttl),
      reactions_per_target_per_day_(spec.reactions_per_target_per_day),
      rng_(rng) {
  if (spec.total < 1) throw std::invalid_argument("population total must be >= 1");
  double sum = 0.0;
  for (const auto& [label, frac] : spec.mix) {
    if (frac < 0.0) throw std::invalid_argument("negative mix fraction");
    sum += frac;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("mix fractions must sum to 1 (got " + std::to_string(sum) + ")");
  }

  for (const Archetype& base : default_archetypes()) {
    Archetype a = base;
    auto it = spec.params.find(a.label);
    if (it != spec.params.end()) a.params = it->second;
    archetypes_.push_back(a);
  }

  // largest-remainder allocation of archetype counts
  std::vector<std::pair<ArchetypeLabel, double>> mix(spec.mix.begin(), spec.mix.end());
  std::vector<std::size_t> counts(mix.size());
  std::size_t assigned = 0;
  std::vector<std::pair<double, std::size_t>> remainders;
  for (std::size_t i = 0; i < mix.size(); ++i) {
    double exact = mix[i].second * static_cast<double>(spec.total);
    counts[i] = static_cast<std::size_t>(std::floor(exact + 1e-12));
    assigned += counts[i];
    remainders.push_back({exact - std::floor(exact + 1e-12), i});
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::size_t i = 0; assigned < spec.total; ++i, ++assigned) {
    ++counts[remainders[i % remainders.size()].second];
  }

  std::vector<ArchetypeLabel> labels;
  labels.reserve(spec.total);
  for (std::size_t i = 0; i < mix.size(); ++i) {
    labels.insert(labels.end(), counts[i], mix[i].first);
  }
  rng_.shuffle(labels);

  const auto& dist = spec.profiles;
  for (ArchetypeLabel label : labels) {
    const Archetype& a = archetypes_[static_cast<std::size_t>(label)];
    UserProfile profile;
    std::string handle = draw_handle(rng_);
    while (platform.find_user(handle)) handle += "x";
    profile.handle = handle;
    profile.baseline_followers = draw_counter(rng_, dist.followers_median, dist.followers_sigma);
    profile.baseline_friends = draw_counter(rng_, dist.friends_median, dist.friends_sigma);
    profile.baseline_statuses = draw_counter(rng_, dist.statuses_median, dist.statuses_sigma);
    profile.listed_count = draw_counter(rng_, dist.listed_median, dist.listed_sigma) / 10;
    profile.account_age_days =
        static_cast<std::int32_t>(rng_.uniform_int(dist.age_min_days, dist.age_max_days));
    profile.verified = rng_.bernoulli(dist.verified_fraction);
    double roll = rng_.next_double();
    double acc = 0.0;
    profile.locale = "en";
    for (const auto& [loc, p] : locale_pool()) {
      acc += p;
      if (roll < acc) {
        profile.locale = loc;
        break;
      }
    }
    if (rng_.bernoulli(dist.home_region_fraction)) profile.geo_home = dist.home_region;
    profile.archetype_ref = static_cast<std::int32_t>(ground_truth_.size());

    UserId id = platform.create_user(std::move(profile));
    ground_truth_.push_back({id, label, a.ground_truth});
    agent_ids_.push_back(id);

    AgentState st;
    st.user = id;
    st.archetype_index = static_cast<std::size_t>(label);
    int n_triggers = std::max(0, a.params.trigger_keywords);
    if (!keyword_pool.empty()) {
      for (int k = 0; k < n_triggers; ++k) {
        st.triggers.push_back(keyword_pool[rng_.uniform_index(keyword_pool.size())]);
      }
      std::sort(st.triggers.begin(), st.triggers.end());
      st.triggers.erase(std::unique(st.triggers.begin(), st.triggers.end()), st.triggers.end());
    }
    if (a.params.watched_actors > 0 && !registry.actors.empty()) {
      auto picks = rng_.sample_indices(registry.actors.size(),
                                       static_cast<std::size_t>(a.params.watched_actors));
      for (std::size_t p : picks) st.watched.push_back(registry.actors[p]);
      std::sort(st.watched.begin(), st.watched.end());
    }
    agent_index_[id] = agents_.size();
    agents_.push_back(std::move(st));
  }

  for (std::size_t i = 0; i < agents_.size(); ++i) {
    for (UserId actor : agents_[i].watched) watchers_.emplace(actor, i);
  }
}

void Population::notify_event(const Platform& platform, std::size_t event_index) {
  const InteractionEvent& ev = platform.events()[event_index];
  auto it = agent_index_.find(ev.target_user);
  if (it != agent_index_.end()) agents_[it->second].inbox.push_back(event_index);
  auto [lo, hi] = watchers_.equal_range(ev.target_user);
  for (auto w = lo; w != hi; ++w) {
    if (agents_[w->second].user != ev.actor) agents_[w->second].watched_events.push_back(event_index);
  }
}

void Population::notify_status(const Platform& platform, StatusId sid) {
  const Status& st = platform.status(sid);
  if (st.kind != StatusKind::Original) return;
  for (UserId mentioned : st.mentions) {
    auto [lo, hi] = watchers_.equal_range(mentioned);
    for (auto w = lo; w != hi; ++w) {
      if (agents_[w->second].user != st.author) agents_[w->second].watched_mentions.push_back(sid);
    }
  }
  std::set<std::string> keys;
  for (const auto& t : st.tokens) {
    if (!t.empty() && t[0] == '@') continue;
    if (t.size() > 1 && t[0] == '#') {
      keys.insert(t.substr(1));
    } else {
      keys.insert(t);
    }
  }
  for (const auto& k : keys) pending_index_[k].push_back(sid);
}

void Population::follow_back(Platform& platform, AgentState& agent, UserId target,
                             TechniqueId technique) {
  if (target == agent.user) return;
  if (platform.follows(agent.user, target)) return;
  TechniqueId attributed = platform.user(target).honeypot ? technique : kNoTechnique;
  platform.interact(agent.user, InteractionKind::Follow, target, std::nullopt, attributed);
}

bool Population::consume_reaction_quota(AgentState& agent, UserId target, Tick now) {
  if (reactions_per_target_per_day_ <= 0) return true;
  std::int32_t day = now / kTicksPerDay;
  auto& slot = agent.reaction_quota[target];
  if (slot.first != day) slot = {day, 0};
  if (slot.second >= reactions_per_target_per_day_) return false;
  ++slot.second;
  return true;
}

void Population::react_to_status(Platform& platform, AgentState& agent, const Archetype& a,
                                 const Status& st, Rng& rng) {
  if (st.author == agent.user) return;
  TechniqueId attributed = platform.user(st.author).honeypot ? st.technique : kNoTechnique;
  switch (a.label) {
    case ArchetypeLabel::KeywordBot: {
      // hashtag-driven, indifferent to coherence
      bool hit = false;
      for (const auto& h : st.hashtags) {
        if (std::binary_search(agent.triggers.begin(), agent.triggers.end(), h)) {
          hit = true;
          break;
        }
      }
      if (!hit || !rng.bernoulli(a.params.keyword_trigger_p)) return;
      if (!consume_reaction_quota(agent, st.author, platform.current_tick())) return;
      if (!platform.has_retweeted(agent.user, st.id)) {
        platform.interact(agent.user, InteractionKind::Retweet, 0, st.id, attributed);
      } else if (!platform.has_favourited(agent.user, st.id)) {
        platform.interact(agent.user, InteractionKind::Favourite, 0, st.id, attributed);
      }
      return;
    }
    case ArchetypeLabel::CasualHuman:
    case ArchetypeLabel::EngagedHuman:
    case ArchetypeLabel::Cyborg: {
      // humans only engage with content that reads as a sentence
      if (!st.coherent && rng.bernoulli(a.params.gibberish_aversion_p)) return;
      if (!rng.bernoulli(a.params.keyword_trigger_p)) return;
      if (!consume_reaction_quota(agent, st.author, platform.current_tick())) return;
      double verb = rng.next_double();
      if (verb < 0.60) {
        if (!platform.has_favourited(agent.user, st.id)) {
          platform.interact(agent.user, InteractionKind::Favourite, 0, st.id, attributed);
        }
      } else if (verb < 0.85) {
        if (!platform.has_retweeted(agent.user, st.id)) {
          platform.interact(agent.user, InteractionKind::Retweet, 0, st.id, attributed);
        }
      } else {
        follow_back(platform, agent, st.author, attributed);
      }
      return;
    }
    case ArchetypeLabel::FollowBackBot:
    case ArchetypeLabel::AmplifierBot:
      return;  // no keyword channel
  }
}

void Population::post_chatter(Platform& platform, AgentState& agent, const Archetype& a,
                              Rng& rng) {
  const auto& fillers = filler_word_pool();
  StatusDraft draft;
  std::size_t n = 2 + rng.uniform_index(3);
  for (std::size_t i = 0; i < n; ++i) {
    draft.tokens.push_back(fillers[rng.uniform_index(fillers.size())]);
  }
  if (!agent.triggers.empty()) {
    const std::string& kw = agent.triggers[rng.uniform_index(agent.triggers.size())];
    if (rng.bernoulli(0.6)) {
      draft.tokens.push_back("#" + kw);
      draft.hashtags.push_back(kw);
    } else {
      draft.tokens.push_back(kw);
    }
  }
  const auto& profile = platform.user(agent.user);
  if (profile.geo_home && rng.bernoulli(a.params.geo_tag_p)) draft.geotag = profile.geo_home;
  platform.post_status(agent.user, std::move(draft));
}

void Population::step_tick(Platform& platform) {
  visible_index_ = std::move(pending_index_);
  pending_index_.clear();

  for (AgentState& agent : agents_) {
    const Archetype& a = archetypes_[agent.archetype_index];
    if (platform.user(agent.user).suspended) {
      agent.inbox.clear();
      agent.watched_events.clear();
      agent.watched_mentions.clear();
      continue;
    }
    if (!rng_.bernoulli(a.params.daily_activity_rate / 24.0)) continue;  // asleep; inbox waits

    // 1) social notifications: somebody followed/favourited/retweeted me
    for (std::size_t idx : agent.inbox) {
      const InteractionEvent& ev = platform.events()[idx];
      if (rng_.bernoulli(a.params.follow_back_p)) {
        follow_back(platform, agent, ev.actor, ev.technique);
      }
    }
    agent.inbox.clear();

    // 2) actor watching: follow-train on users interacting with watched actors
    if (a.label == ArchetypeLabel::FollowBackBot || a.label == ArchetypeLabel::AmplifierBot ||
        a.label == ArchetypeLabel::Cyborg) {
      for (std::size_t idx : agent.watched_events) {
        const InteractionEvent& ev = platform.events()[idx];
        if (rng_.bernoulli(a.params.keyword_trigger_p)) {
          follow_back(platform, agent, ev.actor, ev.technique);
        }
      }
    }
    agent.watched_events.clear();

    // 3) amplification: retweet statuses mentioning watched actors
    if (a.label == ArchetypeLabel::AmplifierBot) {
      for (StatusId sid : agent.watched_mentions) {
        const Status& st = platform.status(sid);
        if (st.author == agent.user) continue;
        if (!rng_.bernoulli(a.params.keyword_trigger_p)) continue;
        if (platform.has_retweeted(agent.user, st.id)) continue;
        TechniqueId attributed = platform.user(st.author).honeypot ? st.technique : kNoTechnique;
        platform.interact(agent.user, InteractionKind::Retweet, 0, st.id, attributed);
      }
    }
    agent.watched_mentions.clear();

    // 4) keyword interests over last tick's public statuses
    if (!agent.triggers.empty()) {
      std::vector<StatusId> candidates;
      for (const auto& kw : agent.triggers) {
        auto it = visible_index_.find(kw);
        if (it == visible_index_.end()) continue;
        for (StatusId sid : it->second) {
          if (std::find(candidates.begin(), candidates.end(), sid) == candidates.end()) {
            candidates.push_back(sid);
          }
        }
      }
      if (candidates.size() > observation_cap_) {
        std::vector<StatusId> sampled;
        for (std::size_t idx : rng_.sample_indices(candidates.size(), observation_cap_)) {
          sampled.push_back(candidates[idx]);
        }
        candidates = std::move(sampled);
      }
      for (StatusId sid : candidates) {
        react_to_status(platform, agent, a, platform.status(sid), rng_);
      }
    }

    // 5) chatter
    if (rng_.bernoulli(a.params.post_rate)) post_chatter(platform, agent, a, rng_);
  }
}

void write_labels_csv(std::ostream& os, const GroundTruth& labels) {
  os << "user_id,archetype,class\n";
  for (const auto& rec : labels) {
    os << rec.user << ',' << to_string(rec.label) << ',' << to_string(rec.ground_truth) << '\n';
  }
}

GroundTruth read_labels_csv(std::istream& is) {
  GroundTruth out;
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
    std::string user, label, cls;
    if (!std::getline(ls, user, ',') || !std::getline(ls, label, ',') || !std::getline(ls, cls)) {
      throw std::runtime_error("labels line " + std::to_string(lineno) + ": bad format");
    }
    GroundTruthRecord rec;
    rec.user = static_cast<UserId>(std::stoul(user));
    auto parsed = archetype_from_string(label);
    if (!parsed) throw std::runtime_error("labels line " + std::to_string(lineno) +
                                          ": unknown archetype '" + label + "'");
    rec.label = *parsed;
    rec.ground_truth = cls == "automated" ? GroundTruthClass::Automated : GroundTruthClass::Human;
    out.push_back(rec);
  }
  return out;
}

}  // namespace honeysim
