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

// Synthetic communication logs with surveys whose ground truth is produced
// by a planted CogSNet configuration, so evaluation has a known optimum.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cogsnet/core.hpp"
#include "cogsnet/ingest.hpp"

namespace cogsnet {

enum class SyntheticBias {
  // Every pair equally likely.
  Uniform,
  // Each node talks mostly to a small set of current contacts that turns
  // over every few weeks.
  RecencyBiased,
  // Nodes belong to fixed groups of ten and mostly talk within the group.
  CommunityBiased,
};

std::string_view to_string(SyntheticBias bias);
std::optional<SyntheticBias> parse_synthetic_bias(std::string_view text);

struct SyntheticOptions {
  std::size_t n_nodes = 100;
  std::size_t n_events = 10'000;
  double duration_days = 240.0;
  std::uint64_t seed = 1;
  SyntheticBias bias = SyntheticBias::RecencyBiased;
  ModelConfig planted = ModelConfig::from_lifetime(ForgettingKind::Exponential, 0.4,
                                                   0.1, 14.0);
  // Nodes that answer surveys (the first n_participants ids); 0 means all.
  std::size_t n_participants = 0;
  // Surveys are taken on the last day of every full term.
  double term_days = 120.0;
  // Midnight UTC of the first day (2011-08-22).
  std::int64_t start_timestamp = 1313971200;
  std::int64_t survey_cut_seconds = kDefaultSurveyCutSeconds;
  // Share of events logged by both parties, producing a mirrored record
  // a few seconds later.
  double two_sided_fraction = 0.0;
};

struct SyntheticDataset {
  NodeTable nodes;
  // Reconciled ground-truth stream, chronological.
  std::vector<Event> events;
  // As the devices would log them; equals as_records(events) unless
  // two_sided_fraction > 0.
  std::vector<RawEventRecord> records;
  std::vector<SurveyRecord> surveys;
};

// Deterministic for fixed options. Throws ContractError on zero nodes or a
// non-positive duration; n_nodes must be at least 2 when n_events > 0.
SyntheticDataset generate_synthetic(const SyntheticOptions& options);

}  // namespace cogsnet
