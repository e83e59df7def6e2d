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

#pragma once

// Event-log and survey ingestion.
//
// Event CSV (header must match exactly):
//   timestamp,sender,receiver,kind,length
// optionally followed by a `recorded_by` column naming the device that
// logged the row (the sender or the receiver). Logs collected on both
// sides of a communication carry that column so dedup_events can merge
// the two copies.
//
// Survey CSV:
//   respondent,survey_date,position,nominee
// one row per nomination; a row with an empty nominee registers a survey
// without adding anyone. Positions are read but not used: nominations are
// unordered sets.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cogsnet/civil_time.hpp"
#include "cogsnet/core.hpp"

namespace cogsnet {

inline constexpr std::string_view kEventHeader = "timestamp,sender,receiver,kind,length";
inline constexpr std::string_view kEventHeaderWithRecorder =
    "timestamp,sender,receiver,kind,length,recorded_by";
inline constexpr std::string_view kSurveyHeader = "respondent,survey_date,position,nominee";
inline constexpr std::size_t kMaxNominations = 20;

// Interns node names to dense ids 0, 1, 2, ... in first-seen order.
class NodeTable {
 public:
  NodeId intern(std::string_view name);
  std::optional<NodeId> find(std::string_view name) const;
  const std::string& name(NodeId id) const;
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> ids_;
};

enum class Direction { Outgoing, Incoming };

struct RawEventRecord {
  NodeId recorded_by = 0;
  std::int64_t timestamp = 0;
  NodeId peer = 0;
  Direction direction = Direction::Outgoing;
  EventKind kind;
  std::optional<std::uint64_t> length;

  NodeId sender() const { return direction == Direction::Outgoing ? recorded_by : peer; }
  NodeId receiver() const { return direction == Direction::Outgoing ? peer : recorded_by; }

  bool operator==(const RawEventRecord&) const = default;
};

struct Diagnostic {
  std::size_t line = 0;
  std::string message;
};

struct ParsedEvents {
  // Sorted by timestamp, stable on file order.
  std::vector<RawEventRecord> records;
  // One entry per skipped malformed row.
  std::vector<Diagnostic> diagnostics;
  bool has_recorded_by = false;
};

// Throws Error if the file cannot be opened and ParseError on a bad header.
// Malformed rows are skipped and reported in `diagnostics`.
ParsedEvents parse_events(const std::filesystem::path& path, NodeTable& nodes);
ParsedEvents parse_events(std::istream& in, NodeTable& nodes,
                          std::string_view source = "<stream>");

void write_events(std::ostream& out, std::span<const RawEventRecord> records,
                  const NodeTable& nodes, bool with_recorded_by);
void write_events(std::ostream& out, std::span<const Event> events,
                  const NodeTable& nodes);

struct DedupPolicy {
  // Mirrored records at most this many seconds apart are one communication.
  std::int64_t window_seconds = 10;
  // Largest accepted |length difference| between the two copies.
  std::uint64_t length_tolerance = 0;

  void validate() const;
};

struct DedupStats {
  std::size_t merged_pairs = 0;
  // Records that had more than one candidate mirror in the window.
  std::size_t ambiguous = 0;
};

// Collapses two-sided recordings of one communication into a single event.
// Records must be sorted by timestamp. A pair merges when it was logged by
// opposite parties, describes the same sender and receiver, has the same
// kind, lies within the time window, and lengths agree within tolerance.
// Matching is greedy, earliest record first; the merged event keeps the
// earlier timestamp.
std::vector<Event> dedup_events(std::span<const RawEventRecord> records,
                                const DedupPolicy& policy,
                                DedupStats* stats = nullptr);

// One-sided records (logged by the sender) describing already reconciled
// events.
std::vector<RawEventRecord> as_records(std::span<const Event> events);

struct SurveyRecord {
  NodeId respondent = 0;
  Date survey_date;
  // Sorted, unique, never contains the respondent.
  std::vector<NodeId> nominations;

  bool operator==(const SurveyRecord&) const = default;
};

struct ParsedSurveys {
  // Ordered by (survey_date, first appearance in the file).
  std::vector<SurveyRecord> surveys;
  std::vector<Diagnostic> diagnostics;
};

// Throws ValidationError when a survey names more than 20 distinct peers.
ParsedSurveys parse_surveys(const std::filesystem::path& path, NodeTable& nodes);
ParsedSurveys parse_surveys(std::istream& in, NodeTable& nodes,
                            std::string_view source = "<stream>");

void write_surveys(std::ostream& out, std::span<const SurveyRecord> surveys,
                   const NodeTable& nodes);

}  // namespace cogsnet
