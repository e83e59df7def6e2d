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

// CogSNet engine: a directed, weighted dynamic graph whose edge weights are
// memory traces. Each event reinforces its edge towards 1; between events a
// trace decays with the configured forgetting function and is forgotten
// once it falls below theta.
//
// Weights are stored only at event times and decayed analytically on
// query, so processing is one pass with O(1) amortized work per event.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <unordered_map>
#include <vector>

#include "cogsnet/forgetting.hpp"

namespace cogsnet {

// Opaque node identifier, assigned by ingest::NodeTable.
using NodeId = std::uint64_t;

class EventKind {
 public:
  enum class Category : std::uint8_t { Call, Message, Other };

  EventKind() = default;

  static EventKind call() { return EventKind(Category::Call, {}); }
  static EventKind message() { return EventKind(Category::Message, {}); }
  static EventKind other(std::string label);
  // "call" and "message" map to the named categories, anything else to
  // Other(text).
  static EventKind parse(std::string_view text);

  Category category() const { return category_; }
  const std::string& label() const { return label_; }
  // Inverse of parse().
  std::string name() const;

  auto operator<=>(const EventKind&) const = default;

 private:
  EventKind(Category category, std::string label)
      : category_(category), label_(std::move(label)) {}

  Category category_ = Category::Call;
  std::string label_;
};

struct Event {
  // Seconds since the Unix epoch.
  std::int64_t timestamp = 0;
  NodeId sender = 0;
  NodeId receiver = 0;
  EventKind kind;
  // Call duration in seconds or message length.
  std::optional<std::uint64_t> payload_size;

  bool operator==(const Event&) const = default;
};

inline double to_hours(std::int64_t seconds) {
  return static_cast<double>(seconds) / kSecondsPerHour;
}

struct EdgeState {
  // w_ij(t_ij): weight right after the latest event.
  double last_weight = 0.0;
  // t_ij in hours.
  double last_event_time = 0.0;
  std::uint64_t event_count = 0;
};

struct ModelConfig {
  ForgettingSpec forgetting{ForgettingKind::Exponential, 0.0};
  double mu_default = 0.4;
  double theta = 0.1;
  std::map<EventKind, double> mu_by_kind;
  // Apply every event to both (i -> j) and (j -> i).
  bool symmetric = true;

  // Throws ConfigError naming the violated constraint.
  void validate() const;

  double mu_for(const EventKind& kind) const {
    if (mu_by_kind.empty()) return mu_default;
    auto it = mu_by_kind.find(kind);
    return it == mu_by_kind.end() ? mu_default : it->second;
  }

  // Derives lambda from a lifetime in days.
  static ModelConfig from_lifetime(ForgettingKind kind, double mu, double theta,
                                   double lifetime_days);
};

struct SnapshotEdge {
  NodeId source = 0;
  NodeId target = 0;
  double weight = 0.0;

  bool operator==(const SnapshotEdge&) const = default;
};

struct Snapshot {
  double at_time = 0.0;
  // Sorted by (source, target); every weight >= theta.
  std::vector<SnapshotEdge> edges;
};

struct WeightedNeighbor {
  NodeId node = 0;
  double weight = 0.0;
};

class Engine {
 public:
  // Throws ConfigError if the configuration is invalid.
  explicit Engine(ModelConfig config);

  const ModelConfig& config() const { return config_; }

  // Applies one event. Events must arrive in non-decreasing timestamp order
  // (OrderingError otherwise); self-loops and negative timestamps are
  // rejected with ContractError.
  void process(const Event& event);
  void process(std::span<const Event> events);

  // Measured weight at time t (hours): 0 for absent or forgotten edges.
  // t must not precede the edge's latest event.
  double edge_weight(NodeId source, NodeId target, double t) const;

  // Up to k neighbours of `node` with positive weight at t, strongest first,
  // ties broken by ascending node id.
  std::vector<NodeId> top_k(NodeId node, double t, std::size_t k) const;

  // All neighbours with positive weight at t, strongest first.
  std::vector<WeightedNeighbor> ranked_neighbors(NodeId node, double t) const;

  // t must not precede the latest processed event.
  Snapshot snapshot(double t) const;

  const EdgeState* find_edge(NodeId source, NodeId target) const;
  std::size_t edge_count() const { return edges_.size(); }
  std::uint64_t events_processed() const { return events_processed_; }
  std::optional<std::int64_t> last_timestamp() const { return last_timestamp_; }

  void clear();

 private:
  struct EdgeKey {
    NodeId source;
    NodeId target;
    bool operator==(const EdgeKey&) const = default;
  };
  struct EdgeKeyHash {
    std::size_t operator()(const EdgeKey& key) const noexcept;
  };
  struct EdgeSlot {
    NodeId source;
    NodeId target;
    EdgeState state;
  };

  void reinforce(NodeId source, NodeId target, double t, double mu);
  double measure(const EdgeState& state, double t) const;
  void check_query_time(const EdgeState& state, double t) const;

  ModelConfig config_;
  std::vector<EdgeSlot> edges_;
  std::unordered_map<EdgeKey, std::uint32_t, EdgeKeyHash> index_;
  std::unordered_map<NodeId, std::vector<std::uint32_t>> out_edges_;
  std::optional<std::int64_t> last_timestamp_;
  std::uint64_t events_processed_ = 0;
};

}  // namespace cogsnet
