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

#include "cogsnet/core.hpp"

#include <algorithm>
#include <sstream>

#include "cogsnet/error.hpp"

namespace cogsnet {

EventKind EventKind::other(std::string label) {
  if (label == "call") return call();
  if (label == "message") return message();
  return EventKind(Category::Other, std::move(label));
}

EventKind EventKind::parse(std::string_view text) {
  return other(std::string(text));
}

std::string EventKind::name() const {
  switch (category_) {
    case Category::Call:
      return "call";
    case Category::Message:
      return "message";
    case Category::Other:
      break;
  }
  return label_;
}

void ModelConfig::validate() const {
  validate_peak_threshold(mu_default, theta);
  for (const auto& [kind, mu] : mu_by_kind) {
    if (!(mu > 0.0 && mu <= 1.0) || !(mu > theta)) {
      std::ostringstream msg;
      msg << "reinforcement peak for '" << kind.name()
          << "' events must satisfy theta < mu <= 1 (got mu=" << mu
          << ", theta=" << theta << ")";
      throw ConfigError(msg.str());
    }
  }
  if (!(forgetting.lambda >= 0.0) || !std::isfinite(forgetting.lambda)) {
    throw ConfigError("forgetting intensity must be a finite non-negative number");
  }
}

ModelConfig ModelConfig::from_lifetime(ForgettingKind kind, double mu,
                                       double theta, double lifetime_days) {
  ModelConfig config;
  config.mu_default = mu;
  config.theta = theta;
  config.forgetting.kind = kind;
  config.forgetting.lambda = lambda_from_lifetime(
      kind, LifetimeParams{mu, theta, lifetime_days * kHoursPerDay});
  return config;
}

std::size_t Engine::EdgeKeyHash::operator()(const EdgeKey& key) const noexcept {
  // splitmix64 finalizer over the packed pair.
  std::uint64_t x = key.source * 0x9E3779B97F4A7C15ULL ^ key.target;
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return static_cast<std::size_t>(x);
}

Engine::Engine(ModelConfig config) : config_(std::move(config)) {
  config_.validate();
}

void Engine::process(const Event& event) {
  if (event.sender == event.receiver) {
    throw ContractError("self-loop event on node " + std::to_string(event.sender) +
                        " at timestamp " + std::to_string(event.timestamp));
  }
  if (event.timestamp < 0) {
    throw ContractError("negative event timestamp " +
                        std::to_string(event.timestamp));
  }
  if (last_timestamp_ && event.timestamp < *last_timestamp_) {
    throw OrderingError("event at timestamp " + std::to_string(event.timestamp) +
                        " precedes already processed timestamp " +
                        std::to_string(*last_timestamp_));
  }
  last_timestamp_ = event.timestamp;
  ++events_processed_;

  const double t = to_hours(event.timestamp);
  const double mu = config_.mu_for(event.kind);
  reinforce(event.sender, event.receiver, t, mu);
  if (config_.symmetric) reinforce(event.receiver, event.sender, t, mu);
}

void Engine::process(std::span<const Event> events) {
  for (const Event& event : events) process(event);
}

void Engine::reinforce(NodeId source, NodeId target, double t, double mu) {
  auto [it, inserted] = index_.try_emplace(
      EdgeKey{source, target}, static_cast<std::uint32_t>(edges_.size()));
  if (inserted) {
    edges_.push_back(EdgeSlot{source, target, EdgeState{}});
    out_edges_[source].push_back(it->second);
  }
  EdgeState& state = edges_[it->second].state;

  const double decayed =
      state.event_count == 0
          ? 0.0
          : state.last_weight *
                detail::decay_factor(config_.forgetting, t - state.last_event_time);
  state.last_weight = decayed < config_.theta ? mu : mu + decayed * (1.0 - mu);
  state.last_event_time = t;
  ++state.event_count;
}

double Engine::measure(const EdgeState& state, double t) const {
  const double w =
      state.last_weight *
      detail::decay_factor(config_.forgetting, t - state.last_event_time);
  return w < config_.theta ? 0.0 : w;
}

void Engine::check_query_time(const EdgeState& state, double t) const {
  if (t < state.last_event_time) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "query time " << t << " h precedes the edge's latest event at "
        << state.last_event_time << " h; replay the stream up to the query time";
    throw ContractError(msg.str());
  }
}

const EdgeState* Engine::find_edge(NodeId source, NodeId target) const {
  auto it = index_.find(EdgeKey{source, target});
  return it == index_.end() ? nullptr : &edges_[it->second].state;
}

double Engine::edge_weight(NodeId source, NodeId target, double t) const {
  const EdgeState* state = find_edge(source, target);
  if (state == nullptr) return 0.0;
  check_query_time(*state, t);
  return measure(*state, t);
}

std::vector<WeightedNeighbor> Engine::ranked_neighbors(NodeId node,
                                                       double t) const {
  std::vector<WeightedNeighbor> out;
  auto it = out_edges_.find(node);
  if (it == out_edges_.end()) return out;
  out.reserve(it->second.size());
  for (std::uint32_t slot : it->second) {
    const EdgeSlot& edge = edges_[slot];
    check_query_time(edge.state, t);
    const double w = measure(edge.state, t);
    if (w > 0.0) out.push_back({edge.target, w});
  }
  std::sort(out.begin(), out.end(),
            [](const WeightedNeighbor& a, const WeightedNeighbor& b) {
              if (a.weight != b.weight) return a.weight > b.weight;
              return a.node < b.node;
            });
  return out;
}

std::vector<NodeId> Engine::top_k(NodeId node, double t, std::size_t k) const {
  if (k == 0) throw ContractError("top_k requires k >= 1");
  std::vector<WeightedNeighbor> ranked = ranked_neighbors(node, t);
  if (ranked.size() > k) ranked.resize(k);
  std::vector<NodeId> out;
  out.reserve(ranked.size());
  for (const auto& n : ranked) out.push_back(n.node);
  return out;
}

Snapshot Engine::snapshot(double t) const {
  if (last_timestamp_ && t < to_hours(*last_timestamp_)) {
    throw ContractError("snapshot time precedes the latest processed event");
  }
  Snapshot snap;
  snap.at_time = t;
  for (const EdgeSlot& edge : edges_) {
    const double w = measure(edge.state, t);
    if (w > 0.0) snap.edges.push_back({edge.source, edge.target, w});
  }
  std::sort(snap.edges.begin(), snap.edges.end(),
            [](const SnapshotEdge& a, const SnapshotEdge& b) {
              return a.source != b.source ? a.source < b.source
                                          : a.target < b.target;
            });
  return snap;
}

void Engine::clear() {
  edges_.clear();
  index_.clear();
  out_edges_.clear();
  last_timestamp_.reset();
  events_processed_ = 0;
}

}  // namespace cogsnet
