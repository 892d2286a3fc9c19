#include "honeysim/platform.hpp"

#include <algorithm>
#include <stdexcept>

namespace honeysim {

namespace {

bool contains_token(const std::vector<std::string>& tokens, const std::string& t) {
  return std::find(tokens.begin(), tokens.end(), t) != tokens.end();
}

bool matches_keyword(const Status& st, const std::string& keyword) {
  if (contains_token(st.tokens, keyword)) return true;
  return std::find(st.hashtags.begin(), st.hashtags.end(), keyword) != st.hashtags.end();
}

}  // namespace

Platform::Platform(RateLimitPolicy policy) : policy_(policy) {
  if (policy_.max_actions_per_tick < 1 || policy_.max_follows_per_day < 1 ||
      policy_.suspension_threshold < 1) {
    throw std::invalid_argument("rate limit policy fields must be >= 1");
  }
}

void Platform::check_user(UserId id, const char* what) const {
  if (id >= users_.size()) {
    throw std::out_of_range(std::string(what) + ": unknown user id " + std::to_string(id));
  }
}

UserId Platform::create_user(UserProfile profile) {
  if (in_tick_) throw std::logic_error("create_user: only legal at tick boundaries");
  if (profile.handle.empty()) throw std::invalid_argument("create_user: empty handle");
  if (handle_index_.count(profile.handle)) {
    throw std::invalid_argument("create_user: duplicate handle '" + profile.handle + "'");
  }
  profile.id = static_cast<UserId>(users_.size());
  profile.statuses_count = profile.baseline_statuses;
  profile.friends_count = profile.baseline_friends;
  profile.followers_count = profile.baseline_followers;
  profile.suspended = false;
  handle_index_.emplace(profile.handle, profile.id);
  users_.push_back(std::move(profile));
  runtime_.emplace_back();
  return users_.back().id;
}

const UserProfile& Platform::user(UserId id) const {
  check_user(id, "user");
  return users_[id];
}

std::optional<UserId> Platform::find_user(const std::string& handle) const {
  auto it = handle_index_.find(handle);
  if (it == handle_index_.end()) return std::nullopt;
  return it->second;
}

void Platform::begin_tick(Tick tick) {
  if (in_tick_) throw std::logic_error("begin_tick: previous tick not ended");
  if (started_ && tick != tick_ + 1) throw std::logic_error("begin_tick: ticks must advance by 1");
  if (!started_ && tick < 0) throw std::invalid_argument("begin_tick: negative start tick");
  bool new_day = !started_ || (tick / kTicksPerDay) != (tick_ / kTicksPerDay);
  tick_ = tick;
  started_ = true;
  in_tick_ = true;
  posted_this_tick_.clear();
  for (auto& rt : runtime_) {
    rt.actions_this_tick = 0;
    if (new_day) rt.follows_today = 0;
  }
}

std::vector<UserId> Platform::end_tick() {
  if (!in_tick_) throw std::logic_error("end_tick: no tick in progress");
  in_tick_ = false;
  std::vector<UserId> newly_suspended;
  for (UserId id = 0; id < users_.size(); ++id) {
    if (users_[id].suspended) continue;
    if (runtime_[id].violation_days >= policy_.suspension_threshold) {
      users_[id].suspended = true;
      suspensions_.emplace_back(id, tick_);
      newly_suspended.push_back(id);
    }
  }
  return newly_suspended;
}

bool Platform::consume_action_budget(UserId actor, bool is_follow) {
  auto& rt = runtime_[actor];
  if (rt.actions_this_tick >= policy_.max_actions_per_tick) {
    record_violation(actor);
    return false;
  }
  if (is_follow && rt.follows_today >= policy_.max_follows_per_day) {
    record_violation(actor);
    return false;
  }
  ++rt.actions_this_tick;
  if (is_follow) ++rt.follows_today;
  return true;
}

void Platform::record_violation(UserId user) {
  auto& rt = runtime_[user];
  ++rt.violations;
  std::int32_t day = tick_ / kTicksPerDay;
  if (rt.last_violation_day != day) {
    rt.last_violation_day = day;
    ++rt.violation_days;
  }
}

void Platform::index_status(const Status& st) {
  if (st.kind != StatusKind::Original) return;
  // one posting per keyword per status
  std::set<std::string> keys;
  for (const auto& t : st.tokens) {
    if (t.size() > 1 && t[0] == '#') continue;  // indexed via hashtags below
    if (!t.empty() && t[0] == '@') continue;
    keys.insert(t);
  }
  for (const auto& h : st.hashtags) keys.insert(h);
  for (const auto& k : keys) keyword_index_[k].push_back(st.id);
}

PostResult Platform::post_status(UserId author, StatusDraft draft) {
  check_user(author, "post_status");
  if (!in_tick_) throw std::logic_error("post_status: outside tick processing");
  if (users_[author].suspended) return {ActionOutcome::ActorSuspended, std::nullopt};
  if (draft.tokens.empty()) throw std::invalid_argument("post_status: empty token list");
  for (const auto& h : draft.hashtags) {
    if (!contains_token(draft.tokens, "#" + h)) {
      throw std::invalid_argument("post_status: hashtag '" + h + "' missing from tokens");
    }
  }
  for (UserId m : draft.mentions) {
    check_user(m, "post_status mention");
    if (!contains_token(draft.tokens, "@" + users_[m].handle)) {
      throw std::invalid_argument("post_status: mention of '" + users_[m].handle +
                                  "' missing from tokens");
    }
  }
  if (!consume_action_budget(author, false)) return {ActionOutcome::RateLimited, std::nullopt};

  Status st;
  st.id = static_cast<StatusId>(statuses_.size());
  st.author = author;
  st.tick = tick_;
  st.tokens = std::move(draft.tokens);
  st.language = draft.language;
  st.coherent = draft.coherent;
  st.mentions = std::move(draft.mentions);
  st.hashtags = std::move(draft.hashtags);
  st.geotag = std::move(draft.geotag);
  st.kind = StatusKind::Original;
  st.technique = draft.technique;
  index_status(st);
  posted_this_tick_.push_back(st.id);
  runtime_[author].statuses.push_back(st.id);
  ++users_[author].statuses_count;
  log_order_.push_back({LogRecord::Kind::Status, st.id});
  statuses_.push_back(std::move(st));
  return {ActionOutcome::Ok, statuses_.back().id};
}

const Status& Platform::status(StatusId id) const {
  if (id >= statuses_.size()) {
    throw std::out_of_range("status: unknown status id " + std::to_string(id));
  }
  return statuses_[id];
}

const Status& Platform::resolve_original(StatusId id) const {
  const Status* st = &status(id);
  if (st->kind == StatusKind::Retweet) st = &status(st->retweet_of);
  return *st;
}

InteractResult Platform::interact(UserId actor, InteractionKind kind, UserId target_user,
                                  std::optional<StatusId> target_status, TechniqueId technique) {
  check_user(actor, "interact");
  if (!in_tick_) throw std::logic_error("interact: outside tick processing");

  StatusId resolved_status = 0;
  if (kind == InteractionKind::Follow) {
    if (target_status) throw std::invalid_argument("interact: follow carries no status");
    check_user(target_user, "interact target");
    if (actor == target_user) throw std::invalid_argument("interact: self-follow");
  } else {
    if (!target_status) throw std::invalid_argument("interact: favourite/retweet need a status");
    const Status& original = resolve_original(*target_status);  // throws on dangling id
    resolved_status = original.id;
    target_user = original.author;
    if (actor == target_user) throw std::invalid_argument("interact: self-interaction");
  }
  if (technique > kTechniqueCount) throw std::invalid_argument("interact: bad technique id");

  // Attribution is present exactly when a honeypot is involved.
  bool honeypot_involved = users_[actor].honeypot || users_[target_user].honeypot;
  if (honeypot_involved && technique == kNoTechnique) {
    throw std::logic_error("interact: honeypot interaction without technique attribution");
  }
  if (!honeypot_involved && technique != kNoTechnique) {
    throw std::logic_error("interact: technique attribution without a honeypot");
  }

  if (users_[actor].suspended) return {ActionOutcome::ActorSuspended, std::nullopt, std::nullopt};
  if (users_[target_user].suspended) {
    return {ActionOutcome::TargetSuspended, std::nullopt, std::nullopt};
  }

  auto& rt = runtime_[actor];
  switch (kind) {
    case InteractionKind::Follow:
      if (rt.following.count(target_user)) {
        return {ActionOutcome::DuplicateNoop, std::nullopt, std::nullopt};
      }
      break;
    case InteractionKind::Favourite:
      if (rt.favourited.count(resolved_status)) {
        return {ActionOutcome::DuplicateNoop, std::nullopt, std::nullopt};
      }
      break;
    case InteractionKind::Retweet:
      if (rt.retweeted.count(resolved_status)) {
        return {ActionOutcome::DuplicateNoop, std::nullopt, std::nullopt};
      }
      break;
  }

  if (!consume_action_budget(actor, kind == InteractionKind::Follow)) {
    return {ActionOutcome::RateLimited, std::nullopt, std::nullopt};
  }

  InteractResult result;
  result.outcome = ActionOutcome::Ok;
  InteractionEvent ev;
  ev.tick = tick_;
  ev.actor = actor;
  ev.kind = kind;
  ev.target_user = target_user;
  ev.technique = technique;

  switch (kind) {
    case InteractionKind::Follow: {
      rt.following.insert(target_user);
      ++users_[actor].friends_count;
      ++users_[target_user].followers_count;
      break;
    }
    case InteractionKind::Favourite: {
      rt.favourited.insert(resolved_status);
      ev.target_status = resolved_status;
      break;
    }
    case InteractionKind::Retweet: {
      rt.retweeted.insert(resolved_status);
      ev.target_status = resolved_status;
      Status st;
      st.id = static_cast<StatusId>(statuses_.size());
      st.author = actor;
      st.tick = tick_;
      st.kind = StatusKind::Retweet;
      st.retweet_of = resolved_status;
      st.language = statuses_[resolved_status].language;
      st.coherent = statuses_[resolved_status].coherent;
      st.technique = technique;
      rt.statuses.push_back(st.id);
      ++users_[actor].statuses_count;
      log_order_.push_back({LogRecord::Kind::Status, st.id});
      statuses_.push_back(std::move(st));
      result.retweet_status = statuses_.back().id;
      break;
    }
  }

  result.event_index = events_.size();
  log_order_.push_back({LogRecord::Kind::Event, static_cast<std::uint32_t>(events_.size())});
  events_.push_back(ev);
  return result;
}

bool Platform::follows(UserId follower, UserId followee) const {
  check_user(follower, "follows");
  return runtime_[follower].following.count(followee) > 0;
}

bool Platform::has_favourited(UserId user, StatusId status_id) const {
  check_user(user, "has_favourited");
  const Status& original = resolve_original(status_id);
  return runtime_[user].favourited.count(original.id) > 0;
}

bool Platform::has_retweeted(UserId user, StatusId original) const {
  check_user(user, "has_retweeted");
  const Status& resolved = resolve_original(original);
  return runtime_[user].retweeted.count(resolved.id) > 0;
}

std::optional<StatusId> Platform::latest_status_of(UserId user) const {
  check_user(user, "latest_status_of");
  const auto& v = runtime_[user].statuses;
  if (v.empty()) return std::nullopt;
  return v.back();
}

const std::vector<StatusId>& Platform::statuses_of(UserId user) const {
  check_user(user, "statuses_of");
  return runtime_[user].statuses;
}

std::vector<StatusId> Platform::search_statuses(const std::string& keyword, Tick from_tick,
                                                Tick to_tick) const {
  if (to_tick > tick_) throw std::invalid_argument("search_statuses: window beyond history");
  std::vector<StatusId> out;
  if (to_tick < from_tick) return out;
  if (from_tick < 0) from_tick = 0;
  auto it = keyword_index_.find(keyword);
  if (it == keyword_index_.end()) return out;
  const auto& ids = it->second;  // ascending, and status tick is monotone in id
  auto lo = std::partition_point(ids.begin(), ids.end(),
                                 [&](StatusId id) { return statuses_[id].tick < from_tick; });
  for (auto p = lo; p != ids.end() && statuses_[*p].tick <= to_tick; ++p) out.push_back(*p);
  return out;
}

std::vector<StatusId> Platform::stream_filter(const std::vector<std::string>& keywords,
                                              const std::optional<std::string>& geo) const {
  if (!in_tick_) throw std::logic_error("stream_filter: only available during tick processing");
  std::vector<StatusId> out;
  for (StatusId id : posted_this_tick_) {
    const Status& st = statuses_[id];
    if (st.kind != StatusKind::Original) continue;
    if (geo && (!st.geotag || *st.geotag != *geo)) continue;
    for (const auto& k : keywords) {
      if (matches_keyword(st, k)) {
        out.push_back(id);
        break;
      }
    }
  }
  return out;
}

std::uint32_t Platform::violation_days(UserId user) const {
  check_user(user, "violation_days");
  return runtime_[user].violation_days;
}

std::uint64_t Platform::violation_count(UserId user) const {
  check_user(user, "violation_count");
  return runtime_[user].violations;
}

}  // namespace honeysim
