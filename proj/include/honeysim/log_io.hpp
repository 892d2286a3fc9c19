#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "honeysim/platform.hpp"

namespace honeysim {

// Newline-delimited event log: one Status or InteractionEvent per line, in
// creation order. Field order is fixed; the exact bytes are the determinism
// oracle for a run. See docs/formats.md.
std::string format_status_line(const Status& st);
std::string format_event_line(const InteractionEvent& ev);

void write_event_log(std::ostream& os, const Platform& platform);
std::string event_log_string(const Platform& platform);

struct ParsedLog {
  std::vector<Status> statuses;
  std::vector<InteractionEvent> events;
  // creation-order interleave, mirroring Platform::log_order()
  std::vector<LogRecord> order;
};

ParsedLog parse_event_log(std::istream& is);
ParsedLog load_event_log(const std::string& path);

}  // namespace honeysim
