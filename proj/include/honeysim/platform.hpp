#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "honeysim/types.hpp"

namespace honeysim {

struct UserProfile {
  UserId id = 0;
  std::string handle;
  // Live counters; for generated accounts they start from a pre-simulation
  // baseline, so "counters replay the event log" holds for the deltas.
  std::uint64_t statuses_count = 0;
  std::uint64_t friends_count = 0;
  std::uint64_t followers_count = 0;
  std::uint64_t listed_count = 0;
  std::uint64_t baseline_statuses = 0;
  std::uint64_t baseline_friends = 0;
  std::uint64_t baseline_followers = 0;
  std::int32_t account_age_days = 0;
  bool verified = false;
  std::string locale = "en";
  std::optional<std::string> geo_home;
  bool suspended = false;
  bool honeypot = false;
  // Opaque link to the ground-truth table; only the evaluation side reads it.
  std::int32_t archetype_ref = -1;
};

struct Status {
  StatusId id = 0;
  UserId author = 0;
  Tick tick = 0;
  std::vector<std::string> tokens;
  Language language = Language::En;
  bool coherent = true;
  std::vector<UserId> mentions;
  std::vector<std::string> hashtags;  // bare keywords, the "#kw" form lives in tokens
  std::optional<std::string> geotag;
  StatusKind kind = StatusKind::Original;
  StatusId retweet_of = 0;  // meaningful only when kind == Retweet
  TechniqueId technique = kNoTechnique;
};

// What a caller submits to post_status; id/tick/author are assigned.
struct StatusDraft {
  std::vector<std::string> tokens;
  Language language = Language::En;
  bool coherent = true;
  std::vector<UserId> mentions;
  std::vector<std::string> hashtags;
  std::optional<std::string> geotag;
  TechniqueId technique = kNoTechnique;
};

struct InteractionEvent {
  Tick tick = 0;
  UserId actor = 0;
  InteractionKind kind = InteractionKind::Follow;
  UserId target_user = 0;
  std::optional<StatusId> target_status;
  TechniqueId technique = kNoTechnique;
};

struct RateLimitPolicy {
  std::uint32_t max_actions_per_tick = 10;
  std::uint32_t max_follows_per_day = 400;
  std::uint32_t suspension_threshold = 3;  // distinct violation-days before suspension
};

enum class ActionOutcome : std::uint8_t {
  Ok,
  DuplicateNoop,    // idempotent repeat (e.g. second follow of the same user)
  RateLimited,      // dropped, violation recorded
  ActorSuspended,   // actor is suspended, no effect
  TargetSuspended,  // target is suspended, no effect
};

struct PostResult {
  ActionOutcome outcome = ActionOutcome::Ok;
  std::optional<StatusId> id;
};

struct InteractResult {
  ActionOutcome outcome = ActionOutcome::Ok;
  std::optional<std::size_t> event_index;   // into events()
  std::optional<StatusId> retweet_status;   // the new Status for kind == Retweet
};

// Order in which statuses and events were created, for log persistence.
struct LogRecord {
  enum class Kind : std::uint8_t { Status, Event };
  Kind kind;
  std::uint32_t index;  // into statuses() or events()
};

// In-memory simulation of the OSN substrate: accounts, statuses, the three
// interaction verbs, keyword search, the geotagged real-time stream, rate
// limits and suspension. Single-threaded and fully deterministic; the event
// log is append-only during a run.
class Platform {
 public:
  explicit Platform(RateLimitPolicy policy = {});

  // --- accounts ---------------------------------------------------------
  // Assigns ids sequentially from 0. Only legal outside tick processing.
  UserId create_user(UserProfile profile);

  const UserProfile& user(UserId id) const;
  std::size_t user_count() const { return users_.size(); }
  std::optional<UserId> find_user(const std::string& handle) const;

  // --- tick loop --------------------------------------------------------
  void begin_tick(Tick tick);
  // Applies suspension for users whose violation-days reached the policy
  // threshold; returns the newly suspended ids, ascending.
  std::vector<UserId> end_tick();
  Tick current_tick() const { return tick_; }
  bool in_tick() const { return in_tick_; }

  // --- actions ----------------------------------------------------------
  PostResult post_status(UserId author, StatusDraft draft);
  InteractResult interact(UserId actor, InteractionKind kind, UserId target_user,
                          std::optional<StatusId> target_status,
                          TechniqueId technique = kNoTechnique);

  // --- queries ----------------------------------------------------------
  const Status& status(StatusId id) const;
  std::size_t status_count() const { return statuses_.size(); }
  const std::vector<InteractionEvent>& events() const { return events_; }
  const std::vector<LogRecord>& log_order() const { return log_order_; }
  const std::vector<UserProfile>& users() const { return users_; }
  const RateLimitPolicy& policy() const { return policy_; }

  bool follows(UserId follower, UserId followee) const;
  bool has_favourited(UserId user, StatusId status) const;
  bool has_retweeted(UserId user, StatusId original) const;
  std::optional<StatusId> latest_status_of(UserId user) const;
  const std::vector<StatusId>& statuses_of(UserId user) const;

  // Non-retweet statuses containing the keyword as token or hashtag within
  // [from_tick, to_tick], ordered by (tick, StatusId) ascending. from_tick
  // is clamped at 0; to_tick must not exceed the current tick.
  std::vector<StatusId> search_statuses(const std::string& keyword, Tick from_tick,
                                        Tick to_tick) const;

  // Current-tick statuses matching any keyword; when geo is set the status
  // must carry a geotag equal to it.
  std::vector<StatusId> stream_filter(const std::vector<std::string>& keywords,
                                      const std::optional<std::string>& geo) const;

  std::uint32_t violation_days(UserId user) const;
  std::uint64_t violation_count(UserId user) const;
  const std::vector<std::pair<UserId, Tick>>& suspensions() const { return suspensions_; }

 private:
  struct UserRuntime {
    std::uint32_t actions_this_tick = 0;
    std::uint32_t follows_today = 0;
    std::uint32_t violation_days = 0;
    std::int32_t last_violation_day = -1;
    std::uint64_t violations = 0;
    std::set<UserId> following;
    std::unordered_set<StatusId> favourited;
    std::unordered_set<StatusId> retweeted;  // originals this user retweeted
    std::vector<StatusId> statuses;          // authored, ascending
  };

  bool consume_action_budget(UserId actor, bool is_follow);
  void record_violation(UserId user);
  void index_status(const Status& st);
  const Status& resolve_original(StatusId id) const;
  void check_user(UserId id, const char* what) const;

  RateLimitPolicy policy_;
  Tick tick_ = -1;
  bool in_tick_ = false;
  bool started_ = false;

  std::vector<UserProfile> users_;
  std::vector<UserRuntime> runtime_;
  std::unordered_map<std::string, UserId> handle_index_;

  std::vector<Status> statuses_;
  std::vector<InteractionEvent> events_;
  std::vector<LogRecord> log_order_;

  // keyword (token or bare hashtag) -> status ids, ascending
  std::unordered_map<std::string, std::vector<StatusId>> keyword_index_;
  std::vector<StatusId> posted_this_tick_;
  std::vector<std::pair<UserId, Tick>> suspensions_;
};

}  // namespace honeysim
