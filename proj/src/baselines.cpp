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

#include "cogsnet/baselines.hpp"

#include <algorithm>
#include <map>

#include "cogsnet/error.hpp"
#include "cogsnet/random.hpp"

namespace cogsnet {

InteractionHistory::InteractionHistory(std::size_t window_capacity)
    : capacity_(window_capacity) {
  if (capacity_ == 0) throw ContractError("recent-event window must hold at least one event");
}

void InteractionHistory::record(const Event& event) {
  touch(event.sender, event.receiver, event.timestamp);
  touch(event.receiver, event.sender, event.timestamp);
}

void InteractionHistory::touch(NodeId node, NodeId peer, std::int64_t timestamp) {
  NodeHistory& h = nodes_[node];
  ++h.counts[peer];
  h.recent.push_back({peer, timestamp});
  if (h.recent.size() > capacity_) h.recent.pop_front();
}

std::vector<NodeId> InteractionHistory::frequency_top(NodeId node, std::size_t k) const {
  if (k == 0) throw ContractError("baseline top-k requires k >= 1");
  auto it = nodes_.find(node);
  if (it == nodes_.end()) return {};
  std::vector<std::pair<std::uint64_t, NodeId>> ranked;
  ranked.reserve(it->second.counts.size());
  for (const auto& [peer, count] : it->second.counts) ranked.emplace_back(count, peer);
  const std::size_t n = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + n, ranked.end(),
                    [](const auto& a, const auto& b) {
                      return a.first != b.first ? a.first > b.first : a.second < b.second;
                    });
  std::vector<NodeId> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(ranked[i].second);
  return out;
}

std::vector<NodeId> InteractionHistory::recency_top(NodeId node, std::size_t k,
                                                    std::size_t n_recent) const {
  if (k == 0) throw ContractError("baseline top-k requires k >= 1");
  if (n_recent == 0 || n_recent > capacity_) {
    throw ContractError("recent-event window must be in [1, " +
                        std::to_string(capacity_) + "]");
  }
  auto it = nodes_.find(node);
  if (it == nodes_.end()) return {};
  const auto& recent = it->second.recent;
  const std::size_t start = recent.size() > n_recent ? recent.size() - n_recent : 0;

  struct Tally {
    std::uint64_t count = 0;
    std::int64_t last_seen = 0;
  };
  std::map<NodeId, Tally> tally;
  for (std::size_t i = start; i < recent.size(); ++i) {
    Tally& t = tally[recent[i].peer];
    ++t.count;
    t.last_seen = std::max(t.last_seen, recent[i].timestamp);
  }
  std::vector<std::pair<NodeId, Tally>> ranked(tally.begin(), tally.end());
  const std::size_t n = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + n, ranked.end(),
                    [](const auto& a, const auto& b) {
                      if (a.second.count != b.second.count) return a.second.count > b.second.count;
                      if (a.second.last_seen != b.second.last_seen) {
                        return a.second.last_seen > b.second.last_seen;
                      }
                      return a.first < b.first;
                    });
  std::vector<NodeId> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(ranked[i].first);
  return out;
}

std::vector<NodeId> InteractionHistory::peers(NodeId node) const {
  std::vector<NodeId> out;
  auto it = nodes_.find(node);
  if (it == nodes_.end()) return out;
  out.reserve(it->second.counts.size());
  for (const auto& entry : it->second.counts) out.push_back(entry.first);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> InteractionHistory::random_top(NodeId node, std::size_t k,
                                                   std::uint64_t seed) const {
  if (k == 0) throw ContractError("baseline top-k requires k >= 1");
  std::vector<NodeId> pool = peers(node);
  if (pool.size() <= k) return pool;
  // Partial Fisher-Yates over the id-sorted pool.
  rng::Engine gen(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng::below(gen, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

namespace {

InteractionHistory history_until(std::span<const Event> events, double t,
                                 std::size_t capacity) {
  InteractionHistory history(capacity);
  for (const Event& e : events) {
    if (to_hours(e.timestamp) > t) break;
    history.record(e);
  }
  return history;
}

}  // namespace

std::vector<NodeId> fq_top(std::span<const Event> events, NodeId node, double t,
                           std::size_t k) {
  return history_until(events, t, 1).frequency_top(node, k);
}

std::vector<NodeId> rc_top(std::span<const Event> events, NodeId node, double t,
                           std::size_t k, std::size_t n_recent) {
  if (n_recent == 0) throw ContractError("recent-event window must be at least 1");
  return history_until(events, t, n_recent).recency_top(node, k, n_recent);
}

std::vector<NodeId> rnd_top(std::span<const Event> events, NodeId node, double t,
                            std::size_t k, std::uint64_t seed) {
  return history_until(events, t, 1).random_top(node, k, seed);
}

}  // namespace cogsnet
