#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace honeysim {

using UserId = std::uint32_t;
using StatusId = std::uint32_t;
using Tick = std::int32_t;

// Technique ids run 1..37; 0 means "no technique attributed".
using TechniqueId = std::uint8_t;
inline constexpr TechniqueId kNoTechnique = 0;
inline constexpr TechniqueId kTechniqueCount = 37;

inline constexpr Tick kTicksPerDay = 24;
inline constexpr Tick kTicksPerWeek = 7 * kTicksPerDay;

enum class Language : std::uint8_t { En, Af, Xh, Zu };

enum class InteractionKind : std::uint8_t { Follow, Favourite, Retweet };

enum class StatusKind : std::uint8_t { Original, Retweet };

std::string_view to_string(Language lang);
std::string_view to_string(InteractionKind kind);
std::optional<Language> language_from_string(std::string_view s);
std::optional<InteractionKind> interaction_kind_from_string(std::string_view s);

}  // namespace honeysim
