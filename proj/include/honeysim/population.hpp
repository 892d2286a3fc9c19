#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "honeysim/platform.hpp"
#include "honeysim/rng.hpp"
#include "honeysim/techniques.hpp"

namespace honeysim {

enum class ArchetypeLabel : std::uint8_t {
  FollowBackBot,
  KeywordBot,
  AmplifierBot,
  Cyborg,
  CasualHuman,
  EngagedHuman,
};

enum class GroundTruthClass : std::uint8_t { Automated, Human };

std::string_view to_string(ArchetypeLabel label);
std::string_view to_string(GroundTruthClass cls);
std::optional<ArchetypeLabel> archetype_from_string(std::string_view s);

struct ArchetypeParams {
  double follow_back_p = 0.0;       // react to an inbound interaction with a follow
  double keyword_trigger_p = 0.0;   // react to an observed matching status / watched event
  double gibberish_aversion_p = 0.0;  // humans: refusal to engage with incoherent content
  double daily_activity_rate = 24.0;  // expected active hours per day (bots are always on)
  double post_rate = 0.0;           // chatter probability per active tick
  double geo_tag_p = 0.0;           // chatter carries the home-region geotag
  int watched_actors = 0;           // actors monitored for interactions/mentions
  int trigger_keywords = 2;         // interest keywords drawn from the shared pool
};

struct Archetype {
  ArchetypeLabel label = ArchetypeLabel::CasualHuman;
  GroundTruthClass ground_truth = GroundTruthClass::Human;
  ArchetypeParams params;
};

// Cyborgs are ground-truth humans (humans using automation); the three bot
// archetypes are automated.
const Archetype& default_archetype(ArchetypeLabel label);

struct ProfileDistributions {
  double followers_median = 691.0;
  double followers_sigma = 2.8;
  double friends_median = 1496.0;
  double friends_sigma = 1.9;
  double statuses_median = 1666.0;
  double statuses_sigma = 1.96;
  double listed_median = 1.0;
  double listed_sigma = 3.0;
  std::int32_t age_min_days = 29;
  std::int32_t age_max_days = 3486;
  double verified_fraction = 10.0 / 288.0;
  double home_region_fraction = 0.85;
  std::string home_region = "ZA";
};

struct PopulationSpec {
  std::size_t total = 1000;
  std::map<ArchetypeLabel, double> mix;  // fractions, must sum to 1
  ProfileDistributions profiles;
  // per-archetype parameter overrides; unset labels use the defaults
  std::map<ArchetypeLabel, ArchetypeParams> params;
  std::size_t observation_cap = 4;  // keyword-matched statuses an agent sees per tick
  // humans are online in bursts; notifications scroll away if missed
  Tick session_ticks = 3;
  Tick notification_ttl = 4;
  int reactions_per_target_per_day = 1;  // content reactions; follows are once-ever anyway
};

PopulationSpec default_population_spec();

struct GroundTruthRecord {
  UserId user = 0;
  ArchetypeLabel label = ArchetypeLabel::CasualHuman;
  GroundTruthClass ground_truth = GroundTruthClass::Human;
};

using GroundTruth = std::vector<GroundTruthRecord>;

// Steps the reactive agents. Agents act on two channels: an inbox of events
// that targeted them, and a bounded sample of last-tick statuses matching
// their trigger keywords. Bots ignore the coherence flag; humans engage with
// incoherent content only with probability (1 - gibberish_aversion_p).
class Population {
 public:
  // Creates exactly spec.total platform accounts. The keyword pool ties
  // agent interests to the corpus vocabulary; the registry feeds the
  // actor-watching behaviours.
  Population(Platform& platform, const PopulationSpec& spec,
             const std::vector<std::string>& keyword_pool, const ActorRegistry& registry,
             Rng rng);

  const GroundTruth& ground_truth() const { return ground_truth_; }
  const std::vector<UserId>& agents() const { return agent_ids_; }

  // Routes one freshly appended event to agent inboxes (including the
  // watchers of a targeted political actor).
  void notify_event(const Platform& platform, std::size_t event_index);
  // Routes a freshly posted status to the watchers of mentioned actors and
  // into the keyword index agents will sample next tick.
  void notify_status(const Platform& platform, StatusId sid);

  // Runs every agent for the current tick, in UserId order.
  void step_tick(Platform& platform);

 private:
  struct AgentState {
    UserId user = 0;
    std::size_t archetype_index = 0;  // into archetypes_
    std::vector<std::string> triggers;
    std::vector<UserId> watched;
    std::vector<std::size_t> inbox;          // event indices targeting this agent
    std::vector<std::size_t> watched_events;  // event indices on watched actors
    std::vector<StatusId> watched_mentions;   // statuses mentioning watched actors
    Tick session_left = 0;
    std::map<UserId, std::pair<std::int32_t, int>> reaction_quota;  // target -> (day, used)
  };

  bool consume_reaction_quota(AgentState& agent, UserId target, Tick now);
  void react_to_status(Platform& platform, AgentState& agent, const Archetype& a,
                       const Status& st, Rng& rng);
  void post_chatter(Platform& platform, AgentState& agent, const Archetype& a, Rng& rng);
  void follow_back(Platform& platform, AgentState& agent, UserId target, TechniqueId technique);

  std::vector<Archetype> archetypes_;  // one per label, with spec overrides applied
  std::vector<AgentState> agents_;
  std::vector<UserId> agent_ids_;
  std::map<UserId, std::size_t> agent_index_;
  std::multimap<UserId, std::size_t> watchers_;  // actor -> agent index
  GroundTruth ground_truth_;
  std::size_t observation_cap_;
  Tick session_ticks_;
  Tick notification_ttl_;
  int reactions_per_target_per_day_;

  // keyword -> statuses posted last tick (visible to agents this tick)
  std::map<std::string, std::vector<StatusId>> visible_index_;
  std::map<std::string, std::vector<StatusId>> pending_index_;
  Rng rng_;
};

void write_labels_csv(std::ostream& os, const GroundTruth& labels);
GroundTruth read_labels_csv(std::istream& is);

}  // namespace honeysim
