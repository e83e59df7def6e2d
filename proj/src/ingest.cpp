// Copyright 2026 The CogSNet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cogsnet/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>

#include "cogsnet/csv.hpp"
#include "cogsnet/error.hpp"

namespace cogsnet {

NodeId NodeTable::intern(std::string_view name) {
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  const NodeId id = names_.size();
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<NodeId> NodeTable::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& NodeTable::name(NodeId id) const {
  if (id >= names_.size()) {
    throw ContractError("unknown node id " + std::to_string(id));
  }
  return names_[id];
}

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string() + " for reading");
  return in;
}

std::string header_line(std::istream& in, std::string_view source) {
  std::string line;
  if (!csv::read_line(in, line)) {
    throw ParseError(std::string(source), 1, "missing header");
  }
  csv::strip_bom(line);
  return line;
}

bool blank(std::string_view line) { return csv::trim(line).empty(); }

}  // namespace

ParsedEvents parse_events(const std::filesystem::path& path, NodeTable& nodes) {
  auto in = open_input(path);
  return parse_events(in, nodes, path.string());
}

ParsedEvents parse_events(std::istream& in, NodeTable& nodes,
                          std::string_view source) {
  ParsedEvents parsed;
  const std::string header = header_line(in, source);
  if (header == kEventHeaderWithRecorder) {
    parsed.has_recorded_by = true;
  } else if (header != kEventHeader) {
    throw ParseError(std::string(source), 1,
                     "expected header '" + std::string(kEventHeader) +
                         "' (optionally followed by ',recorded_by'), got '" +
                         header + "'");
  }
  const std::size_t n_columns = parsed.has_recorded_by ? 6 : 5;

  std::string line;
  std::size_t line_no = 1;
  auto reject = [&](std::string message) {
    parsed.diagnostics.push_back({line_no, std::move(message)});
  };
  while (csv::read_line(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    auto fields = csv::split_line(line);
    if (!fields) {
      reject("unterminated quoted field");
      continue;
    }
    if (fields->size() != n_columns) {
      reject("expected " + std::to_string(n_columns) + " fields, found " +
             std::to_string(fields->size()));
      continue;
    }
    const auto& f = *fields;
    auto timestamp = csv::parse_int(f[0]);
    if (!timestamp) {
      reject("non-numeric timestamp '" + f[0] + "'");
      continue;
    }
    if (*timestamp < 0) {
      reject("negative timestamp " + f[0]);
      continue;
    }
    const std::string_view sender = csv::trim(f[1]), receiver = csv::trim(f[2]);
    if (sender.empty() || receiver.empty()) {
      reject("empty sender or receiver");
      continue;
    }
    if (sender == receiver) {
      reject("sender and receiver are both '" + std::string(sender) + "'");
      continue;
    }
    const std::string_view kind = csv::trim(f[3]);
    if (kind.empty()) {
      reject("empty event kind");
      continue;
    }
    std::optional<std::uint64_t> length;
    if (!csv::trim(f[4]).empty()) {
      length = csv::parse_uint(f[4]);
      if (!length) {
        reject("length must be a non-negative integer, got '" + f[4] + "'");
        continue;
      }
    }
    Direction direction = Direction::Outgoing;
    if (parsed.has_recorded_by) {
      const std::string_view recorder = csv::trim(f[5]);
      if (recorder == receiver) {
        direction = Direction::Incoming;
      } else if (recorder != sender) {
        reject("recorded_by '" + std::string(recorder) +
               "' is neither the sender nor the receiver");
        continue;
      }
    }
    const NodeId s = nodes.intern(sender), r = nodes.intern(receiver);
    RawEventRecord record;
    record.timestamp = *timestamp;
    record.direction = direction;
    record.recorded_by = direction == Direction::Outgoing ? s : r;
    record.peer = direction == Direction::Outgoing ? r : s;
    record.kind = EventKind::parse(kind);
    record.length = length;
    parsed.records.push_back(std::move(record));
  }
  std::stable_sort(parsed.records.begin(), parsed.records.end(),
                   [](const RawEventRecord& a, const RawEventRecord& b) {
                     return a.timestamp < b.timestamp;
                   });
  return parsed;
}

namespace {

void write_event_row(std::ostream& out, std::int64_t timestamp, NodeId sender,
                     NodeId receiver, const EventKind& kind,
                     const std::optional<std::uint64_t>& length,
                     const NodeTable& nodes) {
  out << timestamp << ',' << csv::escape(nodes.name(sender)) << ','
      << csv::escape(nodes.name(receiver)) << ',' << csv::escape(kind.name()) << ',';
  if (length) out << *length;
}

}  // namespace

void write_events(std::ostream& out, std::span<const RawEventRecord> records,
                  const NodeTable& nodes, bool with_recorded_by) {
  out << (with_recorded_by ? kEventHeaderWithRecorder : kEventHeader) << '\n';
  for (const auto& r : records) {
    write_event_row(out, r.timestamp, r.sender(), r.receiver(), r.kind, r.length,
                    nodes);
    if (with_recorded_by) out << ',' << csv::escape(nodes.name(r.recorded_by));
    out << '\n';
  }
}

void write_events(std::ostream& out, std::span<const Event> events,
                  const NodeTable& nodes) {
  out << kEventHeader << '\n';
  for (const auto& e : events) {
    write_event_row(out, e.timestamp, e.sender, e.receiver, e.kind, e.payload_size,
                    nodes);
    out << '\n';
  }
}

void DedupPolicy::validate() const {
  if (window_seconds <= 0) {
    throw ConfigError("dedup window must be a positive number of seconds");
  }
}

namespace {

bool lengths_match(const std::optional<std::uint64_t>& a,
                   const std::optional<std::uint64_t>& b, std::uint64_t tolerance) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  const std::uint64_t diff = *a > *b ? *a - *b : *b - *a;
  return diff <= tolerance;
}

bool mirrors(const RawEventRecord& a, const RawEventRecord& b,
             const DedupPolicy& policy) {
  return a.direction != b.direction && a.recorded_by == b.peer &&
         a.peer == b.recorded_by && a.kind == b.kind &&
         lengths_match(a.length, b.length, policy.length_tolerance);
}

}  // namespace

std::vector<Event> dedup_events(std::span<const RawEventRecord> records,
                                const DedupPolicy& policy, DedupStats* stats) {
  policy.validate();
  DedupStats local;
  std::vector<bool> consumed(records.size(), false);
  std::vector<Event> events;
  events.reserve(records.size());

  for (std::size_t i = 0; i < records.size(); ++i) {
    if (consumed[i]) continue;
    const RawEventRecord& r = records[i];
    std::size_t match = records.size();
    std::size_t candidates = 0;
    for (std::size_t j = i + 1;
         j < records.size() && records[j].timestamp - r.timestamp <= policy.window_seconds;
         ++j) {
      if (consumed[j] || !mirrors(r, records[j], policy)) continue;
      if (candidates++ == 0) match = j;
    }
    if (candidates > 0) {
      consumed[match] = true;
      ++local.merged_pairs;
      if (candidates > 1) ++local.ambiguous;
    }
    events.push_back(Event{r.timestamp, r.sender(), r.receiver(), r.kind, r.length});
  }
  if (stats != nullptr) *stats = local;
  return events;
}

std::vector<RawEventRecord> as_records(std::span<const Event> events) {
  std::vector<RawEventRecord> records;
  records.reserve(events.size());
  for (const Event& e : events) {
    records.push_back(RawEventRecord{e.sender, e.timestamp, e.receiver,
                                     Direction::Outgoing, e.kind, e.payload_size});
  }
  return records;
}

ParsedSurveys parse_surveys(const std::filesystem::path& path, NodeTable& nodes) {
  auto in = open_input(path);
  return parse_surveys(in, nodes, path.string());
}

ParsedSurveys parse_surveys(std::istream& in, NodeTable& nodes,
                            std::string_view source) {
  const std::string header = header_line(in, source);
  if (header != kSurveyHeader) {
    throw ParseError(std::string(source), 1,
                     "expected header '" + std::string(kSurveyHeader) + "', got '" +
                         header + "'");
  }

  ParsedSurveys parsed;
  // Keyed by (respondent, date); value is the index in `order`.
  std::map<std::pair<NodeId, std::int64_t>, std::size_t> slots;
  struct Pending {
    SurveyRecord record;
    std::size_t first_line;
  };
  std::vector<Pending> order;

  std::string line;
  std::size_t line_no = 1;
  auto reject = [&](std::string message) {
    parsed.diagnostics.push_back({line_no, std::move(message)});
  };
  while (csv::read_line(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    auto fields = csv::split_line(line);
    if (!fields || fields->size() != 4) {
      reject("expected 4 fields");
      continue;
    }
    const auto& f = *fields;
    const std::string_view respondent = csv::trim(f[0]);
    if (respondent.empty()) {
      reject("empty respondent");
      continue;
    }
    auto date = parse_iso_date(f[1]);
    if (!date) {
      reject("survey_date must be YYYY-MM-DD, got '" + f[1] + "'");
      continue;
    }
    if (!csv::trim(f[2]).empty() && !csv::parse_int(f[2])) {
      reject("position must be an integer, got '" + f[2] + "'");
      continue;
    }
    const NodeId who = nodes.intern(respondent);
    auto key = std::make_pair(who, to_epoch_seconds(*date));
    auto [it, inserted] = slots.try_emplace(key, order.size());
    if (inserted) order.push_back({SurveyRecord{who, *date, {}}, line_no});
    SurveyRecord& survey = order[it->second].record;

    const std::string_view nominee = csv::trim(f[3]);
    if (nominee.empty()) continue;
    if (nominee == respondent) {
      reject("respondent '" + std::string(respondent) + "' nominated themself");
      continue;
    }
    survey.nominations.push_back(nodes.intern(nominee));
  }

  for (auto& pending : order) {
    auto& noms = pending.record.nominations;
    std::sort(noms.begin(), noms.end());
    noms.erase(std::unique(noms.begin(), noms.end()), noms.end());
    if (noms.size() > kMaxNominations) {
      throw ValidationError(
          std::string(source) + ":" + std::to_string(pending.first_line) +
          ": survey of '" + nodes.name(pending.record.respondent) + "' on " +
          format_iso_date(pending.record.survey_date) + " lists " +
          std::to_string(noms.size()) + " distinct peers; at most " +
          std::to_string(kMaxNominations) + " are allowed");
    }
  }
  std::stable_sort(order.begin(), order.end(), [](const Pending& a, const Pending& b) {
    return std::chrono::sys_days{a.record.survey_date} <
           std::chrono::sys_days{b.record.survey_date};
  });
  parsed.surveys.reserve(order.size());
  for (auto& pending : order) parsed.surveys.push_back(std::move(pending.record));
  return parsed;
}

void write_surveys(std::ostream& out, std::span<const SurveyRecord> surveys,
                   const NodeTable& nodes) {
  out << kSurveyHeader << '\n';
  for (const auto& s : surveys) {
    const std::string who = csv::escape(nodes.name(s.respondent));
    const std::string date = format_iso_date(s.survey_date);
    if (s.nominations.empty()) {
      out << who << ',' << date << ",,\n";
      continue;
    }
    std::size_t position = 1;
    for (NodeId n : s.nominations) {
      out << who << ',' << date << ',' << position++ << ',' << csv::escape(nodes.name(n))
          << '\n';
    }
  }
}

}  // namespace cogsnet
