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

#include "cogsnet/civil_time.hpp"
#include "cogsnet/csv.hpp"
#include "cogsnet/error.hpp"
#include "cogsnet/ingest.hpp"
#include "cogsnet/random.hpp"
#include "properties.hpp"

using namespace cogsnet;

namespace {

ParsedEvents parse(const std::string& text, NodeTable& nodes) {
  std::istringstream in(text);
  return parse_events(in, nodes);
}

ParsedSurveys parse_s(const std::string& text, NodeTable& nodes) {
  std::istringstream in(text);
  return parse_surveys(in, nodes);
}

RawEventRecord rec(NodeId by, std::int64_t t, NodeId peer, Direction d,
                   std::uint64_t len, EventKind kind = EventKind::message()) {
  return {by, t, peer, d, kind, len};
}

}  // namespace

TEST_CASE("empty event file with header") {
  NodeTable nodes;
  const auto parsed = parse("timestamp,sender,receiver,kind,length\n", nodes);
  CHECK(parsed.records.empty());
  CHECK(parsed.diagnostics.empty());
}

TEST_CASE("records come out sorted, stable on ties") {
  NodeTable nodes;
  const auto parsed = parse(
      "timestamp,sender,receiver,kind,length\n"
      "30,a,b,call,5\n"
      "10,b,c,message,\n"
      "30,c,a,message,7\n"
      "20,a,c,email,\n",
      nodes);
  REQUIRE(parsed.records.size() == 4);
  CHECK(parsed.records[0].timestamp == 10);
  CHECK(parsed.records[1].timestamp == 20);
  CHECK(parsed.records[2].kind == EventKind::call());
  CHECK(parsed.records[3].sender() == *nodes.find("c"));
  CHECK(parsed.records[1].kind == EventKind::other("email"));
  CHECK_FALSE(parsed.records[0].length.has_value());
  CHECK(nodes.name(0) == "a");
}

TEST_CASE("one malformed row among one hundred") {
  std::ostringstream text;
  text << "timestamp,sender,receiver,kind,length\n";
  for (int i = 0; i < 100; ++i) {
    if (i == 57) {
      text << "later,a,b,call,3\n";
    } else {
      text << i * 60 << ",n" << i % 7 << ",m" << i % 5 << ",call," << i << "\n";
    }
  }
  NodeTable nodes;
  const auto parsed = parse(text.str(), nodes);
  CHECK(parsed.records.size() == 99);
  REQUIRE(parsed.diagnostics.size() == 1);
  CHECK(parsed.diagnostics[0].line == 59);
  CHECK(parsed.diagnostics[0].message.find("timestamp") != std::string::npos);
}

TEST_CASE("row-level rejections") {
  NodeTable nodes;
  const auto parsed = parse(
      "timestamp,sender,receiver,kind,length\n"
      "1,a,a,call,1\n"
      "2,a,b,call\n"
      "-3,a,b,call,1\n"
      "4,a,b,call,-1\n"
      "5,a,,call,1\n"
      "6,a,b,,1\n"
      "\n"
      "7,\"a,1\",b,call,2\n",
      nodes);
  CHECK(parsed.records.size() == 1);
  CHECK(parsed.diagnostics.size() == 6);
  CHECK(nodes.name(parsed.records[0].sender()) == "a,1");
}

TEST_CASE("bad header and missing file") {
  NodeTable nodes;
  CHECK_THROWS_AS(parse("time,from,to\n1,a,b\n", nodes), ParseError);
  CHECK_THROWS_AS(parse("", nodes), ParseError);
  CHECK_THROWS_AS(parse_events(std::filesystem::path("/nonexistent/x.csv"), nodes), Error);
  try {
    parse("time,from,to\n", nodes);
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
}

TEST_CASE("recorded_by column") {
  NodeTable nodes;
  const auto parsed = parse(
      "timestamp,sender,receiver,kind,length,recorded_by\n"
      "1,a,b,message,4,a\n"
      "3,a,b,message,4,b\n"
      "5,a,b,message,4,c\n",
      nodes);
  CHECK(parsed.has_recorded_by);
  REQUIRE(parsed.records.size() == 2);
  CHECK(parsed.records[1].direction == Direction::Incoming);
  CHECK(parsed.records[1].sender() == *nodes.find("a"));
  CHECK(parsed.diagnostics.size() == 1);
}

TEST_CASE("event CSV round trip") {
  rng::Engine gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    NodeTable nodes;
    for (int i = 0; i < 6; ++i) nodes.intern(i == 3 ? "quoted, \"name\"" : "p" + std::to_string(i));
    std::vector<RawEventRecord> records;
    std::int64_t t = 0;
    for (int i = 0; i < 40; ++i) {
      t += static_cast<std::int64_t>(rng::below(gen, 50));
      const NodeId a = rng::below(gen, 6);
      NodeId b = rng::below(gen, 5);
      if (b >= a) ++b;
      std::optional<std::uint64_t> len;
      if (rng::below(gen, 3)) len = rng::below(gen, 1000);
      const EventKind kind = rng::below(gen, 4) == 0 ? EventKind::other("sms group")
                                                     : EventKind::call();
      records.push_back({a, t, b, rng::below(gen, 2) ? Direction::Outgoing : Direction::Incoming,
                         kind, len});
    }
    std::ostringstream out;
    write_events(out, records, nodes, true);
    NodeTable again;
    std::istringstream in(out.str());
    const auto parsed = parse_events(in, again);
    REQUIRE(parsed.records.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& x = records[i];
      const auto& y = parsed.records[i];
      CHECK(x.timestamp == y.timestamp);
      CHECK(nodes.name(x.sender()) == again.name(y.sender()));
      CHECK(nodes.name(x.receiver()) == again.name(y.receiver()));
      CHECK(nodes.name(x.recorded_by) == again.name(y.recorded_by));
      CHECK(x.kind == y.kind);
      CHECK(x.length == y.length);
    }
    std::ostringstream out2;
    write_events(out2, parsed.records, again, true);
    CHECK(out.str() == out2.str());
  }
}

TEST_CASE("dedup examples") {
  const DedupPolicy policy;
  SUBCASE("one-sided record passes through") {
    const std::vector<RawEventRecord> r = {rec(0, 100, 1, Direction::Outgoing, 12)};
    const auto events = dedup_events(r, policy);
    REQUIRE(events.size() == 1);
    CHECK(events[0] == Event{100, 0, 1, EventKind::message(), 12});
  }
  SUBCASE("mirrored pair three seconds apart merges") {
    const std::vector<RawEventRecord> r = {rec(0, 100, 1, Direction::Outgoing, 12),
                                           rec(1, 103, 0, Direction::Incoming, 12)};
    DedupStats stats;
    const auto events = dedup_events(r, policy, &stats);
    REQUIRE(events.size() == 1);
    CHECK(events[0] == Event{100, 0, 1, EventKind::message(), 12});
    CHECK(stats.merged_pairs == 1);
  }
  SUBCASE("incoming copy logged first keeps its earlier timestamp") {
    const std::vector<RawEventRecord> r = {rec(1, 98, 0, Direction::Incoming, 12),
                                           rec(0, 100, 1, Direction::Outgoing, 12)};
    const auto events = dedup_events(r, policy);
    REQUIRE(events.size() == 1);
    CHECK(events[0].timestamp == 98);
  }
  SUBCASE("length mismatch beyond tolerance keeps both") {
    const std::vector<RawEventRecord> r = {rec(0, 100, 1, Direction::Outgoing, 12),
                                           rec(1, 103, 0, Direction::Incoming, 17)};
    CHECK(dedup_events(r, policy).size() == 2);
    CHECK(dedup_events(r, DedupPolicy{10, 5}).size() == 1);
  }
  SUBCASE("window boundary is inclusive") {
    const std::vector<RawEventRecord> at = {rec(0, 100, 1, Direction::Outgoing, 1),
                                            rec(1, 110, 0, Direction::Incoming, 1)};
    const std::vector<RawEventRecord> past = {rec(0, 100, 1, Direction::Outgoing, 1),
                                              rec(1, 111, 0, Direction::Incoming, 1)};
    CHECK(dedup_events(at, policy).size() == 1);
    CHECK(dedup_events(past, policy).size() == 2);
  }
  SUBCASE("same recorder never merges") {
    const std::vector<RawEventRecord> r = {rec(0, 100, 1, Direction::Outgoing, 1),
                                           rec(0, 101, 1, Direction::Outgoing, 1)};
    CHECK(dedup_events(r, policy).size() == 2);
  }
  SUBCASE("different kinds never merge") {
    const std::vector<RawEventRecord> r = {
        rec(0, 100, 1, Direction::Outgoing, 1, EventKind::call()),
        rec(1, 101, 0, Direction::Incoming, 1)};
    CHECK(dedup_events(r, policy).size() == 2);
  }
  SUBCASE("opposite directions between the same people never merge") {
    const std::vector<RawEventRecord> r = {rec(0, 100, 1, Direction::Outgoing, 1),
                                           rec(1, 101, 0, Direction::Outgoing, 1)};
    CHECK(dedup_events(r, policy).size() == 2);
  }
  SUBCASE("greedy earliest-first matching") {
    const std::vector<RawEventRecord> r = {rec(0, 100, 1, Direction::Outgoing, 1),
                                           rec(0, 102, 1, Direction::Outgoing, 1),
                                           rec(1, 104, 0, Direction::Incoming, 1)};
    DedupStats stats;
    const auto events = dedup_events(r, policy, &stats);
    REQUIRE(events.size() == 2);
    CHECK(events[0].timestamp == 100);
    CHECK(events[1].timestamp == 102);
    CHECK(stats.merged_pairs == 1);
  }
  SUBCASE("invalid policy") {
    CHECK_THROWS_AS(DedupPolicy({0, 0}).validate(), ConfigError);
  }
}

TEST_CASE("dedup is idempotent and never grows the stream") {
  CHECK(properties::dedup_idempotence(1000, 21) == "");
}

TEST_CASE("surveys: holes, duplicates and empty lists") {
  NodeTable nodes;
  const auto parsed = parse_s(
      "respondent,survey_date,position,nominee\n"
      "ann,2011-12-10,1,bob\n"
      "ann,2011-12-10,2,cat\n"
      "ann,2011-12-10,5,dan\n"
      "eve,2011-12-10,1,bob\n"
      "eve,2011-12-10,2,bob\n"
      "fay,2011-12-10,,\n"
      "ann,2011-12-09,3,bob\n",
      nodes);
  REQUIRE(parsed.surveys.size() == 4);
  CHECK(parsed.diagnostics.empty());
  CHECK(parsed.surveys[0].survey_date ==
        std::chrono::year_month_day{std::chrono::year{2011}, std::chrono::month{12},
                                    std::chrono::day{9}});
  CHECK(parsed.surveys[1].nominations.size() == 3);
  CHECK(parsed.surveys[2].nominations == std::vector<NodeId>{*nodes.find("bob")});
  CHECK(parsed.surveys[3].nominations.empty());
}

TEST_CASE("surveys: self-nomination and too many peers") {
  NodeTable nodes;
  const auto parsed = parse_s(
      "respondent,survey_date,position,nominee\n"
      "ann,2011-12-10,1,ann\n"
      "ann,2011-12-10,2,bob\n"
      "ann,12/10/2011,3,cat\n"
      "ann,2011-12-10,x,cat\n",
      nodes);
  CHECK(parsed.surveys.size() == 1);
  CHECK(parsed.surveys[0].nominations.size() == 1);
  CHECK(parsed.diagnostics.size() == 3);

  std::ostringstream text;
  text << "respondent,survey_date,position,nominee\n";
  for (int i = 0; i < 21; ++i) text << "ann,2011-12-10," << i + 1 << ",p" << i << "\n";
  NodeTable fresh;
  CHECK_THROWS_AS(parse_s(text.str(), fresh), ValidationError);

  std::ostringstream twenty;
  twenty << "respondent,survey_date,position,nominee\n";
  for (int i = 0; i < 20; ++i) twenty << "ann,2011-12-10," << i + 1 << ",p" << i << "\n";
  twenty << "ann,2011-12-10,21,p0\n";
  NodeTable fresh2;
  CHECK(parse_s(twenty.str(), fresh2).surveys[0].nominations.size() == 20);
  CHECK_THROWS_AS(parse_s("respondent,date,nominee\n", fresh2), ParseError);
}

TEST_CASE("survey CSV round trip") {
  NodeTable nodes;
  const std::string text =
      "respondent,survey_date,position,nominee\n"
      "ann,2011-12-10,1,bob\n"
      "ann,2011-12-10,2,cat\n"
      "fay,2011-12-10,,\n"
      "bob,2012-05-01,1,ann\n";
  const auto parsed = parse_s(text, nodes);
  std::ostringstream out;
  write_surveys(out, parsed.surveys, nodes);
  CHECK(out.str() == text);
  NodeTable again;
  const auto reparsed = parse_s(out.str(), again);
  CHECK(reparsed.surveys == parsed.surveys);
}

TEST_CASE("civil time parsing") {
  CHECK(parse_datetime("1313971200") == 1313971200);
  CHECK(parse_datetime("2011-08-22") == 1313971200);
  CHECK(parse_datetime("2011-08-22T01:00:05Z") == 1313971200 + 3605);
  CHECK(parse_datetime("2011-08-22 23:59") == 1313971200 + 86340);
  CHECK_FALSE(parse_datetime("2011-02-30").has_value());
  CHECK_FALSE(parse_datetime("noon").has_value());
  CHECK(parse_time_of_day("23:59:59") == 86399);
  CHECK_FALSE(parse_time_of_day("24:00").has_value());
}

TEST_CASE("csv helpers") {
  CHECK(csv::split_line("a,\"b,c\",\"d\"\"e\"") ==
        std::vector<std::string>{"a", "b,c", "d\"e"});
  CHECK_FALSE(csv::split_line("a,\"b").has_value());
  CHECK(csv::escape("x,y") == "\"x,y\"");
  CHECK(csv::format_double(0.1) == "0.1");
  CHECK(csv::parse_uint("-1") == std::nullopt);
  CHECK(csv::parse_int(" +42 ") == 42);
}
