#include "honeysim/log_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace honeysim {

namespace {

constexpr char kSep = '\t';

void append_list(std::string& line, const std::vector<std::string>& items) {
  if (items.empty()) {
    line += '-';
    return;
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) line += ',';
    line += items[i];
  }
}

void append_ids(std::string& line, const std::vector<UserId>& items) {
  if (items.empty()) {
    line += '-';
    return;
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) line += ',';
    line += std::to_string(items[i]);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

[[noreturn]] void bad_line(std::size_t lineno, const std::string& why) {
  throw std::runtime_error("event log line " + std::to_string(lineno) + ": " + why);
}

}  // namespace

std::string format_status_line(const Status& st) {
  std::string line = "S";
  line += kSep;
  line += std::to_string(st.id);
  line += kSep;
  line += std::to_string(st.tick);
  line += kSep;
  line += std::to_string(st.author);
  line += kSep;
  line += to_string(st.language);
  line += kSep;
  line += st.coherent ? '1' : '0';
  line += kSep;
  line += st.kind == StatusKind::Original ? 'O' : 'R';
  line += kSep;
  line += st.kind == StatusKind::Retweet ? std::to_string(st.retweet_of) : "-";
  line += kSep;
  line += st.geotag ? *st.geotag : "-";
  line += kSep;
  line += st.technique == kNoTechnique ? "-" : std::to_string(st.technique);
  line += kSep;
  append_list(line, st.hashtags);
  line += kSep;
  append_ids(line, st.mentions);
  line += kSep;
  if (st.tokens.empty()) {
    line += '-';
  } else {
    for (std::size_t i = 0; i < st.tokens.size(); ++i) {
      if (i) line += ' ';
      line += st.tokens[i];
    }
  }
  return line;
}

std::string format_event_line(const InteractionEvent& ev) {
  std::string line = "E";
  line += kSep;
  line += std::to_string(ev.tick);
  line += kSep;
  line += std::to_string(ev.actor);
  line += kSep;
  switch (ev.kind) {
    case InteractionKind::Follow: line += 'F'; break;
    case InteractionKind::Favourite: line += 'V'; break;
    case InteractionKind::Retweet: line += 'R'; break;
  }
  line += kSep;
  line += std::to_string(ev.target_user);
  line += kSep;
  line += ev.target_status ? std::to_string(*ev.target_status) : "-";
  line += kSep;
  line += ev.technique == kNoTechnique ? "-" : std::to_string(ev.technique);
  return line;
}

void write_event_log(std::ostream& os, const Platform& platform) {
  for (const LogRecord& rec : platform.log_order()) {
    if (rec.kind == LogRecord::Kind::Status) {
      os << format_status_line(platform.status(rec.index)) << '\n';
    } else {
      os << format_event_line(platform.events()[rec.index]) << '\n';
    }
  }
}

std::string event_log_string(const Platform& platform) {
  std::ostringstream os;
  write_event_log(os, platform);
  return os.str();
}

ParsedLog parse_event_log(std::istream& is) {
  ParsedLog log;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto f = split(line, kSep);
    if (f[0] == "S") {
      if (f.size() != 13) bad_line(lineno, "status line needs 13 fields");
      Status st;
      st.id = static_cast<StatusId>(std::stoul(f[1]));
      st.tick = static_cast<Tick>(std::stol(f[2]));
      st.author = static_cast<UserId>(std::stoul(f[3]));
      auto lang = language_from_string(f[4]);
      if (!lang) bad_line(lineno, "unknown language '" + f[4] + "'");
      st.language = *lang;
      st.coherent = f[5] == "1";
      if (f[6] == "O") {
        st.kind = StatusKind::Original;
      } else if (f[6] == "R") {
        st.kind = StatusKind::Retweet;
        st.retweet_of = static_cast<StatusId>(std::stoul(f[7]));
      } else {
        bad_line(lineno, "unknown status kind '" + f[6] + "'");
      }
      if (f[8] != "-") st.geotag = f[8];
      if (f[9] != "-") st.technique = static_cast<TechniqueId>(std::stoul(f[9]));
      if (f[10] != "-") st.hashtags = split(f[10], ',');
      if (f[11] != "-") {
        for (const auto& m : split(f[11], ',')) {
          st.mentions.push_back(static_cast<UserId>(std::stoul(m)));
        }
      }
      if (f[12] != "-") {
        for (const auto& t : split(f[12], ' ')) {
          if (!t.empty()) st.tokens.push_back(t);
        }
      }
      log.order.push_back({LogRecord::Kind::Status, static_cast<std::uint32_t>(log.statuses.size())});
      log.statuses.push_back(std::move(st));
    } else if (f[0] == "E") {
      if (f.size() != 7) bad_line(lineno, "event line needs 7 fields");
      InteractionEvent ev;
      ev.tick = static_cast<Tick>(std::stol(f[1]));
      ev.actor = static_cast<UserId>(std::stoul(f[2]));
      if (f[3] == "F") {
        ev.kind = InteractionKind::Follow;
      } else if (f[3] == "V") {
        ev.kind = InteractionKind::Favourite;
      } else if (f[3] == "R") {
        ev.kind = InteractionKind::Retweet;
      } else {
        bad_line(lineno, "unknown event kind '" + f[3] + "'");
      }
      ev.target_user = static_cast<UserId>(std::stoul(f[4]));
      if (f[5] != "-") ev.target_status = static_cast<StatusId>(std::stoul(f[5]));
      if (f[6] != "-") ev.technique = static_cast<TechniqueId>(std::stoul(f[6]));
      log.order.push_back({LogRecord::Kind::Event, static_cast<std::uint32_t>(log.events.size())});
      log.events.push_back(ev);
    } else {
      bad_line(lineno, "unknown record kind '" + f[0] + "'");
    }
  }
  return log;
}

ParsedLog load_event_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open event log: " + path);
  return parse_event_log(in);
}

}  // namespace honeysim
