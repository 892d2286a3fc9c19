#include "honeysim/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace honeysim {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
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

[[noreturn]] void file_error(const std::string& path, std::size_t lineno, const std::string& why) {
  throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + why);
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    // strip trailing punctuation kept by the word scan
    while (!cur.empty() && !is_word_char(cur.back())) cur.pop_back();
    if (!cur.empty() && cur != "#" && cur != "@") out.push_back(cur);
    cur.clear();
  };
  for (char raw : text) {
    char c = static_cast<char>(std::tolower(static_cast<unsigned char>(raw)));
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (is_word_char(c)) {
      cur += c;
    } else if ((c == '#' || c == '@') && cur.empty()) {
      cur += c;
    }
    // other punctuation is dropped
  }
  flush();
  return out;
}

std::int32_t parse_iso_date(const std::string& iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') {
    throw std::invalid_argument("bad ISO date '" + iso + "'");
  }
  int y, m, d;
  try {
    y = std::stoi(iso.substr(0, 4));
    m = std::stoi(iso.substr(5, 2));
    d = std::stoi(iso.substr(8, 2));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad ISO date '" + iso + "'");
  }
  std::chrono::year_month_day ymd{std::chrono::year(y), std::chrono::month(unsigned(m)),
                                  std::chrono::day(unsigned(d))};
  if (!ymd.ok()) throw std::invalid_argument("bad ISO date '" + iso + "'");
  return static_cast<std::int32_t>(std::chrono::sys_days(ymd).time_since_epoch().count());
}

std::string format_iso_date(std::int32_t day) {
  std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{day}}};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                unsigned(ymd.day()));
  return buf;
}

std::vector<RegistryEntry> ingest_actors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open actor file: " + path);
  std::vector<RegistryEntry> out;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    std::string handle, flag;
    if (!(is >> handle >> flag)) file_error(path, lineno, "expected 'handle leader|member'");
    bool leader;
    if (flag == "leader" || flag == "1") {
      leader = true;
    } else if (flag == "member" || flag == "0") {
      leader = false;
    } else {
      file_error(path, lineno, "unknown flag '" + flag + "'");
    }
    if (!seen.insert(handle).second) {
      file_error(path, lineno, "duplicate handle '" + handle + "'");
    }
    out.push_back({handle, leader});
  }
  if (out.empty()) throw std::runtime_error(path + ": no actors found");
  return out;
}

std::vector<RegistryEntry> synthesize_actors(std::size_t count, std::size_t leaders,
                                             std::uint64_t seed) {
  if (count == 0 || leaders > count) throw std::invalid_argument("bad actor registry sizes");
  static const std::vector<std::string> surnames = {
      "dlamini", "nkosi",   "vanwyk",  "botha",   "khumalo", "naidoo", "pillay",  "mokoena",
      "sithole", "meyer",   "fourie",  "ndlovu",  "dube",    "zungu",  "madonsela", "pretorius",
      "mahlangu", "jacobs", "daniels", "mthembu", "radebe",  "venter", "maseko",  "september",
      "moloi",   "cele",    "gumede",  "duplessis", "hlophe", "xaba",  "steyn",   "tshabalala"};
  Rng rng(seed, 0x41c7);
  std::vector<RegistryEntry> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < count; ++i) {
    bool leader = i < leaders;
    const std::string& base = surnames[rng.uniform_index(surnames.size())];
    std::string handle = (leader ? "ldr_" : "mp_") + base;
    if (seen.count(handle)) handle += "_" + std::to_string(i);
    seen.insert(handle);
    out.push_back({handle, leader});
  }
  return out;
}

void NewsCorpus::index() {
  by_day.clear();
  for (std::size_t i = 0; i < articles.size(); ++i) by_day[articles[i].day].push_back(i);
}

std::vector<std::size_t> NewsCorpus::on_day(std::int32_t day) const {
  auto it = by_day.find(day);
  if (it == by_day.end()) return {};
  return it->second;
}

NewsCorpus ingest_news(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open news file: " + path);
  NewsCorpus corpus;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_fields(line, '\t');
    if (fields.size() < 2) file_error(path, lineno, "expected date<TAB>headline[<TAB>abstract]");
    Article a;
    try {
      a.day = parse_iso_date(fields[0]);
    } catch (const std::exception& e) {
      file_error(path, lineno, e.what());
    }
    a.headline = tokenize(fields[1]);
    if (fields.size() > 2) a.abstract = tokenize(fields[2]);
    if (a.headline.empty()) file_error(path, lineno, "empty headline");
    corpus.articles.push_back(std::move(a));
  }
  corpus.index();
  return corpus;
}

const std::vector<std::string>& topic_word_pool() {
  static const std::vector<std::string> pool = {
      "election",   "coalition",  "manifesto", "loadshedding", "economy",   "corruption",
      "parliament", "budget",     "protest",   "servicedelivery", "municipality", "president",
      "debate",     "rally",      "vote",      "registration", "youth",     "jobs",
      "wages",      "housing",    "land",      "reform",       "energy",    "water",
      "education",  "health",     "crime",     "policing",     "taxes",     "grants",
      "transport",  "unions",     "strike",    "summit",       "tender",    "audit",
      "council",    "mayor",      "premier",   "eskom"};
  return pool;
}

const std::vector<std::string>& filler_word_pool() {
  static const std::vector<std::string> pool = {
      "today",  "tomorrow", "people",  "community", "meeting",  "statement", "report",
      "update", "watch",    "listen",  "support",   "against",  "calls",     "plans",
      "promise", "deliver", "announce", "response", "question", "answer",    "crisis",
      "growth", "future",   "together", "change",   "action",   "public",    "national"};
  return pool;
}

NewsCorpus synthesize_news(std::int32_t first_day, std::int32_t days, std::size_t per_day,
                           std::uint64_t seed) {
  Rng rng(seed, 0x9e47);
  const auto& topics = topic_word_pool();
  const auto& fillers = filler_word_pool();
  NewsCorpus corpus;
  for (std::int32_t d = 0; d < days; ++d) {
    for (std::size_t i = 0; i < per_day; ++i) {
      Article a;
      a.day = first_day + d;
      std::size_t head_len = 4 + rng.uniform_index(4);
      for (std::size_t w = 0; w < head_len; ++w) {
        bool topical = rng.bernoulli(0.4);
        const auto& pool = topical ? topics : fillers;
        a.headline.push_back(pool[rng.uniform_index(pool.size())]);
      }
      std::size_t abs_len = 8 + rng.uniform_index(10);
      for (std::size_t w = 0; w < abs_len; ++w) {
        bool topical = rng.bernoulli(0.3);
        const auto& pool = topical ? topics : fillers;
        a.abstract.push_back(pool[rng.uniform_index(pool.size())]);
      }
      corpus.articles.push_back(std::move(a));
    }
  }
  corpus.index();
  return corpus;
}

std::vector<PlannedPost> ingest_actor_posts(const std::string& path,
                                            const std::vector<RegistryEntry>& registry) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open actor post file: " + path);
  std::unordered_map<std::string, std::size_t> by_handle;
  for (std::size_t i = 0; i < registry.size(); ++i) by_handle[registry[i].handle] = i;
  std::vector<PlannedPost> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_fields(line, '\t');
    if (fields.size() != 3) file_error(path, lineno, "expected tick<TAB>handle<TAB>text");
    PlannedPost post;
    try {
      post.tick = static_cast<Tick>(std::stol(fields[0]));
    } catch (const std::exception&) {
      file_error(path, lineno, "bad tick '" + fields[0] + "'");
    }
    auto it = by_handle.find(fields[1]);
    if (it == by_handle.end()) file_error(path, lineno, "unknown handle '" + fields[1] + "'");
    post.actor = it->second;
    post.tokens = tokenize(fields[2]);
    if (post.tokens.empty()) file_error(path, lineno, "empty text");
    for (const auto& t : post.tokens) {
      if (t.size() > 1 && t[0] == '#') post.hashtags.push_back(t.substr(1));
      if (t.size() > 1 && t[0] == '@') {
        auto m = by_handle.find(t.substr(1));
        if (m != by_handle.end()) post.mention_actors.push_back(m->second);
      }
    }
    out.push_back(std::move(post));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const PlannedPost& a, const PlannedPost& b) { return a.tick < b.tick; });
  return out;
}

std::vector<PlannedPost> synthesize_actor_posts(const ActorPostParams& params,
                                                const std::vector<RegistryEntry>& registry,
                                                Tick total_ticks, std::uint64_t seed) {
  Rng rng(seed, 0x77ad);
  const auto& topics = topic_word_pool();
  const auto& fillers = filler_word_pool();
  std::vector<PlannedPost> out;
  for (Tick t = 0; t < total_ticks; ++t) {
    for (std::size_t a = 0; a < registry.size(); ++a) {
      double rate = registry[a].leader ? params.leader_rate_per_tick : params.member_rate_per_tick;
      if (!rng.bernoulli(rate)) continue;
      PlannedPost post;
      post.tick = t;
      post.actor = a;
      std::size_t fill = 3 + rng.uniform_index(4);
      for (std::size_t w = 0; w < fill; ++w) {
        post.tokens.push_back(fillers[rng.uniform_index(fillers.size())]);
      }
      std::size_t topical = 1 + rng.uniform_index(2);
      for (std::size_t w = 0; w < topical; ++w) {
        const std::string& kw = topics[rng.uniform_index(topics.size())];
        if (rng.bernoulli(params.hashtag_p)) {
          post.tokens.push_back("#" + kw);
          post.hashtags.push_back(kw);
        } else {
          post.tokens.push_back(kw);
        }
      }
      if (rng.bernoulli(params.mention_p)) {
        std::size_t other = rng.uniform_index(registry.size());
        if (other != a) post.mention_actors.push_back(other);
      }
      out.push_back(std::move(post));
    }
  }
  return out;
}

std::set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stopword file: " + path);
  std::set<std::string> out;
  std::string word;
  while (in >> word) out.insert(lower(word));
  return out;
}

std::vector<std::string> keyword_pool_from_posts(const std::vector<PlannedPost>& posts,
                                                 const std::set<std::string>& stopwords,
                                                 std::size_t top_n) {
  std::map<std::string, std::size_t> counts;
  for (const auto& p : posts) {
    for (const auto& t : p.tokens) {
      std::string key = t;
      if (!key.empty() && key[0] == '#') key = key.substr(1);
      if (key.empty() || key[0] == '@') continue;
      if (key.size() < 2 || stopwords.count(key)) continue;
      ++counts[key];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > top_n) ranked.resize(top_n);
  std::vector<std::string> out;
  out.reserve(ranked.size());
  for (auto& [kw, n] : ranked) out.push_back(kw);
  return out;
}

}  // namespace honeysim
