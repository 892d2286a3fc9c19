#include "honeysim/types.hpp"

namespace honeysim {

std::string_view to_string(Language lang) {
  switch (lang) {
    case Language::En: return "en";
    case Language::Af: return "af";
    case Language::Xh: return "xh";
    case Language::Zu: return "zu";
  }
  return "en";
}

std::string_view to_string(InteractionKind kind) {
  switch (kind) {
    case InteractionKind::Follow: return "follow";
    case InteractionKind::Favourite: return "favourite";
    case InteractionKind::Retweet: return "retweet";
  }
  return "follow";
}

std::optional<Language> language_from_string(std::string_view s) {
  if (s == "en") return Language::En;
  if (s == "af") return Language::Af;
  if (s == "xh") return Language::Xh;
  if (s == "zu") return Language::Zu;
  return std::nullopt;
}

std::optional<InteractionKind> interaction_kind_from_string(std::string_view s) {
  if (s == "follow") return InteractionKind::Follow;
  if (s == "favourite") return InteractionKind::Favourite;
  if (s == "retweet") return InteractionKind::Retweet;
  return std::nullopt;
}

}  // namespace honeysim
