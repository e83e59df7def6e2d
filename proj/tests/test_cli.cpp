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

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "cogsnet/core.hpp"
#include "cogsnet/csv.hpp"

namespace fs = std::filesystem;
using namespace cogsnet;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "cogsnet");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("cogsnet_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content = {}) const {
    const auto p = path_ / name;
    if (!content.empty()) std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("config errors exit 2 before touching files") {
  auto r = run({"--theta", "0.5", "snapshot", "/nonexistent/events.csv"});
  CHECK(r.code == cli::kExitConfig);
  CHECK(r.err.find("theta < mu") != std::string::npos);
  CHECK(run({"--forgetting", "linear", "snapshot", "/nonexistent.csv"}).code == 2);
  CHECK(run({"--forgetting", "pow", "--lifetime-days", "0.01", "snapshot", "/x.csv"}).code == 2);
  CHECK(run({"--dedup-window-s", "0", "snapshot", "/x.csv"}).code == 2);
  CHECK(run({"--methods", "fq,magic", "evaluate", "/x.csv", "/y.csv"}).code == 2);
  CHECK(run({"--survey-cut-time", "25:00", "evaluate", "/x.csv", "/y.csv"}).code == 2);
  CHECK(run({"snapshot", "/x.csv", "--at", "yesterday"}).code == 2);
  CHECK(run({"--mu-call", "0.05", "snapshot", "/x.csv"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("I/O and parse failures exit 1") {
  TempDir dir;
  CHECK(run({"snapshot", "/nonexistent/events.csv"}).code == cli::kExitIo);
  const auto bad = dir.file("bad.csv", "when,who\n1,a\n");
  const auto r = run({"snapshot", bad});
  CHECK(r.code == cli::kExitIo);
  CHECK(r.err.find("bad.csv:1") != std::string::npos);
}

TEST_CASE("snapshot") {
  TempDir dir;
  SUBCASE("empty file gives a header only") {
    const auto events = dir.file("e.csv", "timestamp,sender,receiver,kind,length\n");
    const auto r = run({"snapshot", events});
    CHECK(r.code == 0);
    CHECK(r.out == "source,target,weight\n");
  }
  SUBCASE("four-node fixture matches the engine") {
    const auto events = dir.file("e.csv",
                                 "timestamp,sender,receiver,kind,length\n"
                                 "0,A,B,call,60\n"
                                 "7200,A,C,message,20\n"
                                 "86400,B,C,call,30\n"
                                 "172800,A,B,message,5\n"
                                 "259200,C,D,call,100\n");
    const auto r = run({"--lifetime-days", "10", "snapshot", events, "--at", "345600"});
    REQUIRE(r.code == 0);
    auto config = ModelConfig::from_lifetime(ForgettingKind::Exponential, 0.4, 0.1, 10.0);
    Engine engine(config);
    engine.process({0, 0, 1, EventKind::call(), {}});
    engine.process({7200, 0, 2, EventKind::message(), {}});
    engine.process({86400, 1, 2, EventKind::call(), {}});
    engine.process({172800, 0, 1, EventKind::message(), {}});
    engine.process({259200, 2, 3, EventKind::call(), {}});
    const char* names[] = {"A", "B", "C", "D"};
    std::ostringstream expected;
    expected << "source,target,weight\n";
    for (const auto& e : engine.snapshot(96.0).edges) {
      expected << names[e.source] << ',' << names[e.target] << ',' << csv::format_double(e.weight) << '\n';
    }
    CHECK(r.out == expected.str());
    CHECK(count_lines(r.out) == 9);
  }
  SUBCASE("--at before the first event") {
    const auto events = dir.file("e.csv", "timestamp,sender,receiver,kind,length\n"
                                          "1313971200,A,B,call,60\n");
    const auto r = run({"snapshot", events, "--at", "2011-08-01"});
    CHECK(r.code == 0);
    CHECK(r.out == "source,target,weight\n");
    const auto later = run({"snapshot", events, "--at", "2011-08-22T12:00"});
    CHECK(count_lines(later.out) == 3);
  }
  SUBCASE("directed mode") {
    const auto events = dir.file("e.csv", "timestamp,sender,receiver,kind,length\n0,A,B,call,1\n");
    const auto r = run({"--symmetric", "false", "snapshot", events});
    CHECK(r.out == "source,target,weight\nA,B,0.4\n");
  }
}

TEST_CASE("synth, evaluate, sweep and stats pipeline") {
  TempDir dir;
  const auto events = dir.file("events.csv");
  const auto surveys = dir.file("surveys.csv");
  auto r = run({"--seed", "5", "synth", "--nodes", "40", "--events", "8000", "--days", "240",
                "--two-sided-fraction", "0.4", "--events-out", events, "--surveys-out", surveys});
  REQUIRE(r.code == 0);
  CHECK(slurp(events).rfind("timestamp,sender,receiver,kind,length,recorded_by\n", 0) == 0);

  const auto detail = dir.file("detail.csv");
  const auto scores = dir.file("scores.csv");
  r = run({"evaluate", events, surveys, "--detail-out", detail, "--scores-out", scores});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("merged") != std::string::npos);
  std::istringstream summary(r.out);
  std::string line;
  std::getline(summary, line);
  CHECK(line == "method,mean_jaccard,n_surveys");
  std::vector<double> means;
  while (std::getline(summary, line)) means.push_back(std::stod(line.substr(line.find(',') + 1)));
  REQUIRE(means.size() == 4);
  CHECK(r.out.find("\ncogsnet,") != std::string::npos);
  for (std::size_t m = 1; m < 4; ++m) CHECK(means[0] >= means[m]);
  CHECK(slurp(detail).rfind("respondent,survey_date,method,k,jaccard\n", 0) == 0);
  CHECK(slurp(scores).rfind("block,cogsnet,fq,rc,rnd\n", 0) == 0);

  const auto again = run({"evaluate", events, surveys});
  CHECK(again.out == r.out);

  const auto fq_only = run({"--methods", "fq", "evaluate", events, surveys});
  CHECK(fq_only.code == 0);
  CHECK(count_lines(fq_only.out) == 2);
  CHECK(fq_only.out.find("\nfq,") != std::string::npos);

  const auto grid = dir.file("grid.csv", "kind,mu,theta,lifetime_days\n"
                                         "exp,0.4,0.1,14\nexp,0.4,0.5,14\npow,0.8,0.3,30\n");
  const auto sw = run({"sweep", events, surveys, "--grid-file", grid});
  REQUIRE(sw.code == 0);
  CHECK(sw.out.rfind("kind,mu,theta,lifetime_days,mean_jaccard,n_surveys\nexp,0.4,0.1,14,", 0) == 0);
  CHECK(count_lines(sw.out) == 3);
  CHECK(sw.err.find("grid point 2") != std::string::npos);

  const auto st = run({"stats", scores});
  REQUIRE(st.code == 0);
  CHECK(st.out.rfind("statistic,df,p_value\n", 0) == 0);
  CHECK(st.out.find("method_a,method_b,mean_rank_a,mean_rank_b,p_raw,p_adjusted,code\n") !=
        std::string::npos);
  CHECK(st.out.find("cogsnet,fq,") != std::string::npos);
  CHECK(st.out.find("\nmethod,cogsnet,fq,rc,rnd\n") != std::string::npos);
  CHECK(st.out.find("cogsnet,--,") != std::string::npos);
}

TEST_CASE("cogsnet summary matches the planted sweep point") {
  TempDir dir;
  const auto events = dir.file("events.csv");
  const auto surveys = dir.file("surveys.csv");
  REQUIRE(run({"synth", "--nodes", "30", "--events", "4000", "--events-out", events,
               "--surveys-out", surveys})
              .code == 0);
  const auto ev = run({"--methods", "cogsnet", "evaluate", events, surveys});
  const auto grid = dir.file("grid.csv", "kind,mu,theta,lifetime_days\nexp,0.4,0.1,14\n");
  const auto sw = run({"sweep", events, surveys, "--grid-file", grid});
  const auto mean_of = [](const std::string& text, std::size_t column) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    std::stringstream fields(line);
    std::string f;
    for (std::size_t c = 0; c <= column; ++c) std::getline(fields, f, ',');
    return f;
  };
  CHECK(mean_of(ev.out, 1) == mean_of(sw.out, 4));
}

TEST_CASE("help") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("snapshot") != std::string::npos);
}

TEST_CASE("flags override the config file") {
  TempDir dir;
  const auto config = dir.file("c.ini", "theta=0.5\n");
  const auto events = dir.file("e.csv", "timestamp,sender,receiver,kind,length\n0,A,B,call,1\n");
  CHECK(run({"--config", config, "snapshot", events}).code == cli::kExitConfig);
  const auto r = run({"--config", config, "--theta", "0.2", "snapshot", events});
  CHECK(r.code == 0);
  CHECK(r.out == "source,target,weight\nA,B,0.4\nB,A,0.4\n");
}
