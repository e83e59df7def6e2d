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

#include <doctest.h>

#include <sstream>

#include "cogsnet/eval.hpp"
#include "cogsnet/ingest.hpp"
#include "cogsnet/synthetic.hpp"

using namespace cogsnet;

namespace {

std::string serialize(const SyntheticDataset& d) {
  std::ostringstream out;
  write_events(out, d.records, d.nodes, true);
  write_surveys(out, d.surveys, d.nodes);
  return out.str();
}

SyntheticOptions small(SyntheticBias bias) {
  SyntheticOptions o;
  o.n_nodes = 40;
  o.n_events = 5000;
  o.seed = 7;
  o.bias = bias;
  return o;
}

}  // namespace

TEST_CASE("generator is deterministic for a fixed seed") {
  for (auto bias : {SyntheticBias::Uniform, SyntheticBias::RecencyBiased,
                    SyntheticBias::CommunityBiased}) {
    auto options = small(bias);
    options.two_sided_fraction = 0.3;
    CHECK(serialize(generate_synthetic(options)) == serialize(generate_synthetic(options)));
    auto other = options;
    other.seed = 8;
    CHECK(serialize(generate_synthetic(options)) != serialize(generate_synthetic(other)));
  }
}

TEST_CASE("no events means no surveys") {
  SyntheticOptions o;
  o.n_events = 0;
  const auto d = generate_synthetic(o);
  CHECK(d.events.empty());
  CHECK(d.records.empty());
  CHECK(d.surveys.empty());
}

TEST_CASE("generated stream is well formed") {
  const auto d = generate_synthetic(small(SyntheticBias::RecencyBiased));
  REQUIRE(d.events.size() == 5000);
  CHECK(d.nodes.size() == 40);
  CHECK(d.nodes.name(0) == "u00");
  for (std::size_t i = 0; i < d.events.size(); ++i) {
    CHECK(d.events[i].sender != d.events[i].receiver);
    CHECK(d.events[i].sender < 40);
    CHECK(d.events[i].receiver < 40);
    if (i) CHECK(d.events[i - 1].timestamp <= d.events[i].timestamp);
  }
  CHECK(d.records == as_records(d.events));
  // Two 120-day terms in 240 days.
  const auto& first = d.surveys.front();
  CHECK(first.survey_date == std::chrono::year_month_day{
                                 std::chrono::sys_days{std::chrono::year{2011} /
                                                       std::chrono::month{8} /
                                                       std::chrono::day{22}} +
                                 std::chrono::days{119}});
  for (const auto& s : d.surveys) {
    CHECK(s.nominations.size() <= kMaxNominations);
    CHECK_FALSE(s.nominations.empty());
  }
}

TEST_CASE("participants restrict the respondents") {
  auto o = small(SyntheticBias::Uniform);
  o.n_participants = 5;
  for (const auto& s : generate_synthetic(o).surveys) CHECK(s.respondent < 5);
}

TEST_CASE("two-sided logging dedups back to the ground truth") {
  auto o = small(SyntheticBias::CommunityBiased);
  o.two_sided_fraction = 0.5;
  const auto d = generate_synthetic(o);
  CHECK(d.records.size() > d.events.size());
  CHECK(dedup_events(d.records, DedupPolicy{}) == d.events);
}

TEST_CASE("planted configuration scores near perfectly") {
  const SyntheticOptions o;
  const auto d = generate_synthetic(o);
  const std::vector<MethodSpec> methods = {MethodSpec::cogsnet("planted", o.planted)};
  const auto report = evaluate_all(d.events, d.surveys, methods);
  REQUIRE(report.summaries.size() == 1);
  CHECK(report.summaries[0].n_surveys > 0);
  CHECK(report.summaries[0].mean_jaccard >= 0.9);
}

TEST_CASE("bias names") {
  CHECK(parse_synthetic_bias("recency") == SyntheticBias::RecencyBiased);
  CHECK(to_string(SyntheticBias::CommunityBiased) == "community");
  CHECK_FALSE(parse_synthetic_bias("zipf").has_value());
}
