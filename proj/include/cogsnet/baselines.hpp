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

// Reference predictors of a node's closest peers:
//   FQ  - most interactions over the whole history,
//   RC  - most interactions among the node's latest n events,
//   RND - uniform sample of peers seen in the history.
// Every event counts as one interaction for both of its endpoints.

#include <cstdint>
#include <deque>
#include <span>
#include <unordered_map>
#include <vector>

#include "cogsnet/core.hpp"

namespace cogsnet {

inline constexpr std::size_t kDefaultRecentEvents = 400;

// Incrementally accumulated interaction history supporting all three
// baselines at the current cut. Feed events in chronological order.
class InteractionHistory {
 public:
  // Keeps up to `window_capacity` latest events per node for RC queries.
  explicit InteractionHistory(std::size_t window_capacity = kDefaultRecentEvents);

  void record(const Event& event);

  // Ties: ascending node id.
  std::vector<NodeId> frequency_top(NodeId node, std::size_t k) const;
  // n_recent <= window capacity. Ties: most recent contact, then ascending id.
  std::vector<NodeId> recency_top(NodeId node, std::size_t k, std::size_t n_recent) const;
  // Deterministic for a fixed seed; all peers if there are at most k.
  std::vector<NodeId> random_top(NodeId node, std::size_t k, std::uint64_t seed) const;

  // Distinct peers in ascending id order.
  std::vector<NodeId> peers(NodeId node) const;
  std::size_t window_capacity() const { return capacity_; }

 private:
  struct Contact {
    NodeId peer;
    std::int64_t timestamp;
  };
  struct NodeHistory {
    std::unordered_map<NodeId, std::uint64_t> counts;
    std::deque<Contact> recent;
  };

  void touch(NodeId node, NodeId peer, std::int64_t timestamp);

  std::size_t capacity_;
  std::unordered_map<NodeId, NodeHistory> nodes_;
};

// Stateless forms over a chronologically sorted event list; only events at
// or before t (hours) are considered.
std::vector<NodeId> fq_top(std::span<const Event> events, NodeId node, double t,
                           std::size_t k);
std::vector<NodeId> rc_top(std::span<const Event> events, NodeId node, double t,
                           std::size_t k, std::size_t n_recent = kDefaultRecentEvents);
std::vector<NodeId> rnd_top(std::span<const Event> events, NodeId node, double t,
                            std::size_t k, std::uint64_t seed);

}  // namespace cogsnet
