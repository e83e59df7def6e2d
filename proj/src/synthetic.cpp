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

#include "cogsnet/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cogsnet/error.hpp"
#include "cogsnet/random.hpp"

namespace cogsnet {

std::string_view to_string(SyntheticBias bias) {
  switch (bias) {
    case SyntheticBias::Uniform:
      return "uniform";
    case SyntheticBias::RecencyBiased:
      return "recency";
    case SyntheticBias::CommunityBiased:
      return "community";
  }
  return "uniform";
}

std::optional<SyntheticBias> parse_synthetic_bias(std::string_view text) {
  if (text == "uniform") return SyntheticBias::Uniform;
  if (text == "recency") return SyntheticBias::RecencyBiased;
  if (text == "community") return SyntheticBias::CommunityBiased;
  return std::nullopt;
}

namespace {

constexpr std::size_t kContactsPerNode = 12;
constexpr double kContactTenureDays = 21.0;
constexpr double kFavoriteShare = 0.85;
constexpr std::size_t kCommunitySize = 10;
constexpr double kCommunityShare = 0.8;
constexpr double kCallShare = 0.35;
constexpr std::int64_t kMaxRecordingDelay = 5;

// Picks receivers for a sender according to the configured bias.
class PeerChooser {
 public:
  PeerChooser(std::size_t n_nodes, SyntheticBias bias, rng::Engine& gen)
      : n_(n_nodes), bias_(bias), gen_(gen) {
    if (bias_ != SyntheticBias::RecencyBiased) return;
    const std::size_t slots = std::min(kContactsPerNode, n_ - 1);
    double total = 0.0;
    for (std::size_t r = 0; r < slots; ++r) {
      total += 1.0 / static_cast<double>(r + 1);
      cumulative_.push_back(total);
    }
    contacts_.resize(n_);
    for (std::size_t node = 0; node < n_; ++node) {
      contacts_[node].resize(slots);
      for (auto& contact : contacts_[node]) contact = fresh_contact(node, 0.0);
    }
  }

  NodeId choose(NodeId sender, double t_days) {
    switch (bias_) {
      case SyntheticBias::Uniform:
        return uniform_other(sender);
      case SyntheticBias::CommunityBiased:
        return community(sender);
      case SyntheticBias::RecencyBiased:
        return favorite(sender, t_days);
    }
    return uniform_other(sender);
  }

 private:
  struct Contact {
    NodeId peer;
    double expires_day;
  };

  NodeId uniform_other(NodeId sender) {
    NodeId r = rng::below(gen_, n_ - 1);
    return r >= sender ? r + 1 : r;
  }

  NodeId community(NodeId sender) {
    const std::size_t first = (sender / kCommunitySize) * kCommunitySize;
    const std::size_t size = std::min(kCommunitySize, n_ - first);
    if (size < 2 || rng::unit(gen_) >= kCommunityShare) return uniform_other(sender);
    NodeId r = first + rng::below(gen_, size - 1);
    return r >= sender ? r + 1 : r;
  }

  Contact fresh_contact(NodeId node, double now_days) {
    const auto& current = contacts_[node];
    NodeId peer = uniform_other(node);
    for (int attempt = 0; attempt < 8; ++attempt) {
      const bool taken = std::any_of(current.begin(), current.end(),
                                     [&](const Contact& c) { return c.peer == peer; });
      if (!taken) break;
      peer = uniform_other(node);
    }
    return {peer, now_days + rng::exponential(gen_, kContactTenureDays)};
  }

  NodeId favorite(NodeId sender, double t_days) {
    auto& contacts = contacts_[sender];
    for (auto& contact : contacts) {
      if (contact.expires_day <= t_days) contact = fresh_contact(sender, t_days);
    }
    if (rng::unit(gen_) >= kFavoriteShare) return uniform_other(sender);
    const double x = rng::unit(gen_) * cumulative_.back();
    const auto slot = static_cast<std::size_t>(
        std::upper_bound(cumulative_.begin(), cumulative_.end(), x) -
        cumulative_.begin());
    return contacts[std::min(slot, contacts.size() - 1)].peer;
  }

  std::size_t n_;
  SyntheticBias bias_;
  rng::Engine& gen_;
  std::vector<double> cumulative_;
  std::vector<std::vector<Contact>> contacts_;
};

std::string node_name(std::size_t index, std::size_t width) {
  std::string digits = std::to_string(index);
  return "u" + std::string(width > digits.size() ? width - digits.size() : 0, '0') +
         digits;
}

}  // namespace

SyntheticDataset generate_synthetic(const SyntheticOptions& options) {
  if (options.n_nodes == 0) throw ContractError("synthetic data needs at least one node");
  if (options.n_events > 0 && options.n_nodes < 2) {
    throw ContractError("synthetic events need at least two nodes");
  }
  if (!(options.duration_days > 0.0)) {
    throw ContractError("synthetic duration must be positive");
  }
  if (!(options.term_days > 0.0)) throw ContractError("term length must be positive");
  if (!(options.two_sided_fraction >= 0.0 && options.two_sided_fraction <= 1.0)) {
    throw ContractError("two-sided fraction must lie in [0, 1]");
  }
  options.planted.validate();

  SyntheticDataset data;
  const std::size_t width = std::to_string(options.n_nodes - 1).size();
  for (std::size_t i = 0; i < options.n_nodes; ++i) data.nodes.intern(node_name(i, width));

  rng::Engine gen(options.seed);
  const auto span_seconds = std::max<std::int64_t>(
      1, std::llround(options.duration_days * static_cast<double>(kSecondsPerDay)));

  std::vector<std::int64_t> offsets(options.n_events);
  for (auto& offset : offsets) offset = static_cast<std::int64_t>(rng::below(gen, span_seconds));
  std::sort(offsets.begin(), offsets.end());

  if (options.n_events > 0) {
    PeerChooser chooser(options.n_nodes, options.bias, gen);
    data.events.reserve(options.n_events);
    for (std::int64_t offset : offsets) {
      const NodeId sender = rng::below(gen, options.n_nodes);
      const double t_days =
          static_cast<double>(offset) / static_cast<double>(kSecondsPerDay);
      const NodeId receiver = chooser.choose(sender, t_days);
      Event event;
      event.timestamp = options.start_timestamp + offset;
      event.sender = sender;
      event.receiver = receiver;
      if (rng::unit(gen) < kCallShare) {
        event.kind = EventKind::call();
        event.payload_size = 1 + rng::below(gen, 1200);
      } else {
        event.kind = EventKind::message();
        event.payload_size = 1 + rng::below(gen, 160);
      }
      data.events.push_back(std::move(event));
    }
  }

  // Recording uses its own stream so the events do not depend on it.
  rng::Engine recorder(rng::mix(options.seed, 0x7265636f7264ULL));
  data.records = as_records(data.events);
  if (options.two_sided_fraction > 0.0) {
    for (const Event& e : data.events) {
      if (rng::unit(recorder) >= options.two_sided_fraction) continue;
      const auto delay = static_cast<std::int64_t>(rng::below(recorder, kMaxRecordingDelay + 1));
      data.records.push_back(RawEventRecord{e.receiver, e.timestamp + delay, e.sender,
                                            Direction::Incoming, e.kind, e.payload_size});
    }
    std::stable_sort(data.records.begin(), data.records.end(),
                     [](const RawEventRecord& a, const RawEventRecord& b) {
                       return a.timestamp < b.timestamp;
                     });
  }

  // Ground-truth surveys: each participant's planted top-20 on the last day
  // of every term.
  const std::size_t participants = options.n_participants == 0
                                       ? options.n_nodes
                                       : std::min(options.n_participants, options.n_nodes);
  const auto n_terms = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::floor(options.duration_days / options.term_days + 1e-9)));
  const auto last_day = std::max<std::int64_t>(
      0, static_cast<std::int64_t>(std::ceil(options.duration_days - 1e-9)) - 1);

  Engine planted(options.planted);
  std::size_t next = 0;
  for (std::int64_t term = 1; term <= n_terms; ++term) {
    const auto day = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(std::floor(term * options.term_days + 1e-9)) - 1, 0,
        last_day);
    const std::int64_t midnight = options.start_timestamp + day * kSecondsPerDay;
    const std::int64_t cut = midnight + options.survey_cut_seconds;
    while (next < data.events.size() && data.events[next].timestamp <= cut) {
      planted.process(data.events[next++]);
    }
    for (NodeId p = 0; p < participants; ++p) {
      auto top = planted.top_k(p, to_hours(cut), kMaxNominations);
      if (top.empty()) continue;
      std::sort(top.begin(), top.end());
      data.surveys.push_back(SurveyRecord{p, date_of(midnight), std::move(top)});
    }
  }
  return data;
}

}  // namespace cogsnet
