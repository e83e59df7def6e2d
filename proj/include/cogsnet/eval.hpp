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

// Scoring predicted top-k peer sets against survey nominations, and sweeps
// over the CogSNet parameter grid.

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cogsnet/baselines.hpp"
#include "cogsnet/core.hpp"
#include "cogsnet/ingest.hpp"
#include "cogsnet/stats.hpp"

namespace cogsnet {

// |a ∩ b| / |a ∪ b| over the distinct ids of each list; 0 when both are empty.
double jaccard(std::span<const NodeId> a, std::span<const NodeId> b);

enum class EvalFlag {
  None,
  // The survey lists nobody; scored 0.
  EmptyNominations,
  // No event precedes the survey cut; scored against an empty model.
  BeforeFirstEvent,
};

std::string_view to_string(EvalFlag flag);

struct EvalResult {
  NodeId respondent = 0;
  Date survey_date;
  std::string method;
  // Number of nominations, which is also the requested prediction size.
  std::size_t k = 0;
  double jaccard = 0.0;
  EvalFlag flag = EvalFlag::None;
};

// (node, t in hours, k) -> up to k predicted peers.
using TopKProvider = std::function<std::vector<NodeId>(NodeId, double, std::size_t)>;

EvalResult evaluate_survey(const TopKProvider& provider, std::string_view method,
                           const SurveyRecord& survey, double cut_time);

struct MethodSpec {
  enum class Type { CogSNet, Frequency, Recency, Random };

  std::string label;
  Type type = Type::CogSNet;
  ModelConfig model;
  std::size_t recent_events = kDefaultRecentEvents;
  // Random baseline: Jaccard is averaged over this many independent draws.
  std::size_t random_draws = 100;
  std::uint64_t seed = 1;

  static MethodSpec cogsnet(std::string label, ModelConfig model);
  static MethodSpec frequency(std::string label = "fq");
  static MethodSpec recency(std::size_t n_recent = kDefaultRecentEvents,
                            std::string label = "rc");
  static MethodSpec random(std::size_t draws = 100, std::uint64_t seed = 1,
                           std::string label = "rnd");
};

struct EvalOptions {
  // Seconds after midnight (UTC) of the survey date at which the model is read.
  std::int64_t survey_cut_seconds = kDefaultSurveyCutSeconds;
};

std::int64_t survey_cut_timestamp(const SurveyRecord& survey, const EvalOptions& options);

struct MethodSummary {
  std::string method;
  double mean_jaccard = 0.0;
  std::size_t n_surveys = 0;
};

struct EvalReport {
  std::vector<std::string> methods;
  // Survey-major (input order), then method order.
  std::vector<EvalResult> results;
  std::vector<MethodSummary> summaries;

  std::size_t flagged(EvalFlag flag) const;
};

// One chronological replay of `events` (sorted) with the survey cuts as
// checkpoints; every (survey, method) pair is scored.
EvalReport evaluate_all(std::span<const Event> events,
                        std::span<const SurveyRecord> surveys,
                        std::span<const MethodSpec> methods,
                        const EvalOptions& options = {});

// Blocks are surveys ("respondent@date"), columns are methods.
stats::ScoreMatrix score_matrix(const EvalReport& report, const NodeTable& nodes);

void write_detail_csv(std::ostream& out, const EvalReport& report, const NodeTable& nodes);
void write_summary_csv(std::ostream& out, const EvalReport& report);

struct GridPoint {
  ForgettingKind kind = ForgettingKind::Exponential;
  double mu = 0.4;
  double theta = 0.1;
  double lifetime_days = 14.0;
};

struct SweepPoint {
  ForgettingKind kind = ForgettingKind::Exponential;
  double mu = 0.0;
  double theta = 0.0;
  double lifetime_days = 0.0;
  double mean_jaccard = 0.0;
  std::size_t n_surveys = 0;
};

struct SweepRejection {
  std::size_t index = 0;
  GridPoint point;
  std::string reason;
};

struct SweepOptions {
  EvalOptions eval;
  bool symmetric = true;
};

struct SweepResult {
  // In grid order, valid points only.
  std::vector<SweepPoint> points;
  std::vector<SweepRejection> rejected;

  // Highest mean Jaccard; the earliest grid point wins ties. Null if empty.
  const SweepPoint* best() const;
};

// Reference lifetimes, in days: 1..30, 40, 50, 60, 80, 100.
std::span<const double> default_lifetimes_days();
// Both kinds x {(0.4, 0.1), (0.8, 0.3), (0.8, 0.1)} x default lifetimes.
std::vector<GridPoint> default_grid();

// Invalid points (theta >= mu, power lifetime <= 1 h, ...) are rejected
// individually; the rest share one replay. Throws ContractError on an empty grid.
SweepResult sweep(std::span<const Event> events, std::span<const SurveyRecord> surveys,
                  std::span<const GridPoint> grid, const SweepOptions& options = {});

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points);
// Header `kind,mu,theta,lifetime_days`.
std::vector<GridPoint> read_grid_csv(std::istream& in, std::string_view source = "<stream>");

}  // namespace cogsnet
