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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cogsnet/core.hpp"
#include "cogsnet/csv.hpp"
#include "cogsnet/error.hpp"
#include "cogsnet/eval.hpp"
#include "cogsnet/ingest.hpp"
#include "cogsnet/stats.hpp"
#include "cogsnet/synthetic.hpp"

namespace cogsnet::cli {

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct ModelFlags {
  std::string forgetting = "exp";
  double mu = 0.4;
  double theta = 0.1;
  double lifetime_days = 14.0;
  double mu_call = kUnset;
  double mu_message = kUnset;
  std::string symmetric = "true";
  std::int64_t dedup_window_s = 10;
  std::uint64_t dedup_length_tolerance = 0;
  std::uint64_t seed = 1;
  std::string methods = "cogsnet,fq,rc,rnd";
  std::string survey_cut_time = "23:59:59";
  std::size_t rc_events = kDefaultRecentEvents;
  std::size_t rnd_draws = 100;
};

// Raised for flag values that break a model constraint; maps to exit 2.
struct UsageError : Error {
  using Error::Error;
};

ModelConfig model_config(const ModelFlags& f,
                         std::optional<ForgettingKind> kind_override = std::nullopt) {
  auto kind = parse_forgetting_kind(f.forgetting);
  if (!kind) throw UsageError("--forgetting must be 'exp' or 'pow'");
  if (kind_override) kind = kind_override;
  ModelConfig config = ModelConfig::from_lifetime(*kind, f.mu, f.theta, f.lifetime_days);
  if (!std::isnan(f.mu_call)) config.mu_by_kind[EventKind::call()] = f.mu_call;
  if (!std::isnan(f.mu_message)) config.mu_by_kind[EventKind::message()] = f.mu_message;
  config.symmetric = f.symmetric == "true";
  config.validate();
  return config;
}

DedupPolicy dedup_policy(const ModelFlags& f) {
  DedupPolicy policy{f.dedup_window_s, f.dedup_length_tolerance};
  policy.validate();
  return policy;
}

std::int64_t survey_cut(const ModelFlags& f) {
  auto seconds = parse_time_of_day(f.survey_cut_time);
  if (!seconds) throw UsageError("--survey-cut-time must be HH:MM[:SS]");
  return *seconds;
}

std::vector<MethodSpec> method_specs(const ModelFlags& f) {
  std::vector<MethodSpec> specs;
  std::stringstream list(f.methods);
  std::string name;
  while (std::getline(list, name, ',')) {
    name = std::string(csv::trim(name));
    if (name.empty()) continue;
    if (name == "cogsnet") {
      specs.push_back(MethodSpec::cogsnet(name, model_config(f)));
    } else if (name == "cogsnet-exp") {
      specs.push_back(MethodSpec::cogsnet(name, model_config(f, ForgettingKind::Exponential)));
    } else if (name == "cogsnet-pow") {
      specs.push_back(MethodSpec::cogsnet(name, model_config(f, ForgettingKind::Power)));
    } else if (name == "fq") {
      specs.push_back(MethodSpec::frequency());
    } else if (name == "rc") {
      if (f.rc_events == 0) throw UsageError("--rc-events must be at least 1");
      specs.push_back(MethodSpec::recency(f.rc_events));
    } else if (name == "rnd") {
      if (f.rnd_draws == 0) throw UsageError("--rnd-draws must be at least 1");
      specs.push_back(MethodSpec::random(f.rnd_draws, f.seed));
    } else {
      throw UsageError("unknown method '" + name +
                       "' (expected cogsnet, cogsnet-exp, cogsnet-pow, fq, rc, rnd)");
    }
  }
  if (specs.empty()) throw UsageError("--methods lists no method");
  for (std::size_t i = 0; i < specs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (specs[i].label == specs[j].label) {
        throw UsageError("method '" + specs[i].label + "' listed twice");
      }
    }
  }
  return specs;
}

void report(std::ostream& err, const std::vector<Diagnostic>& diagnostics,
            const std::string& file) {
  for (const auto& d : diagnostics) {
    err << "warning: " << file << ":" << d.line << ": " << d.message << '\n';
  }
}

std::vector<Event> load_events(const std::string& path, NodeTable& nodes,
                               const DedupPolicy& policy, std::ostream& err) {
  ParsedEvents parsed = parse_events(path, nodes);
  report(err, parsed.diagnostics, path);
  DedupStats stats;
  auto events = dedup_events(parsed.records, policy, &stats);
  if (stats.merged_pairs > 0) {
    err << "info: merged " << stats.merged_pairs << " two-sided recordings";
    if (stats.ambiguous > 0) err << " (" << stats.ambiguous << " ambiguous)";
    err << '\n';
  }
  return events;
}

std::vector<SurveyRecord> load_surveys(const std::string& path, NodeTable& nodes,
                                       std::ostream& err) {
  ParsedSurveys parsed = parse_surveys(path, nodes);
  report(err, parsed.diagnostics, path);
  return std::move(parsed.surveys);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  return out;
}

void add_model_flags(CLI::App& app, ModelFlags& f) {
  app.add_option("--forgetting", f.forgetting, "Forgetting function")
      ->check(CLI::IsMember({"exp", "pow"}))
      ->capture_default_str();
  app.add_option("--mu", f.mu, "Reinforcement peak, 0 < mu <= 1")->capture_default_str();
  app.add_option("--theta", f.theta, "Forgetting threshold, 0 < theta < mu")
      ->capture_default_str();
  app.add_option("--lifetime-days", f.lifetime_days,
                 "Days for an unreinforced trace to decay from mu to theta")
      ->capture_default_str();
  app.add_option("--mu-call", f.mu_call, "Reinforcement peak for call events");
  app.add_option("--mu-message", f.mu_message, "Reinforcement peak for message events");
  app.add_option("--symmetric", f.symmetric, "Reinforce both directions of every event")
      ->check(CLI::IsMember({"true", "false"}))
      ->capture_default_str();
  app.add_option("--dedup-window-s", f.dedup_window_s,
                 "Max seconds between two recordings of one communication")
      ->capture_default_str();
  app.add_option("--dedup-length-tolerance", f.dedup_length_tolerance,
                 "Max length difference between two recordings of one communication")
      ->capture_default_str();
  app.add_option("--seed", f.seed, "Seed for random baselines and synthetic data")
      ->capture_default_str();
  app.add_option("--methods", f.methods,
                 "Comma list of cogsnet, cogsnet-exp, cogsnet-pow, fq, rc, rnd")
      ->capture_default_str();
  app.add_option("--survey-cut-time", f.survey_cut_time,
                 "Time of day (UTC) on the survey date at which models are read")
      ->capture_default_str();
  app.add_option("--rc-events", f.rc_events, "Recent events used by the rc baseline")
      ->capture_default_str();
  app.add_option("--rnd-draws", f.rnd_draws, "Draws averaged by the rnd baseline")
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"CogSNet temporal social network engine"};
  app.name(args.empty() ? "cogsnet" : args.front());
  app.set_config("--config", "", "INI/TOML file with default flag values");
  app.require_subcommand(1);
  app.fallthrough();

  ModelFlags flags;
  add_model_flags(app, flags);

  auto* snapshot_cmd = app.add_subcommand("snapshot", "Print the weighted network at a time");
  std::string snapshot_events, snapshot_at;
  snapshot_cmd->add_option("events", snapshot_events, "Event CSV")->required();
  snapshot_cmd->add_option("--at", snapshot_at,
                           "Cut time: Unix seconds or YYYY-MM-DD[THH:MM[:SS]] (UTC); "
                           "defaults to the last event");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score methods against surveys");
  std::string eval_events, eval_surveys, detail_out, scores_out;
  evaluate_cmd->add_option("events", eval_events, "Event CSV")->required();
  evaluate_cmd->add_option("surveys", eval_surveys, "Survey CSV")->required();
  evaluate_cmd->add_option("--detail-out", detail_out, "Per-survey CSV output path");
  evaluate_cmd->add_option("--scores-out", scores_out,
                           "Score matrix CSV output path (input of `stats`)");

  auto* sweep_cmd = app.add_subcommand("sweep", "Mean Jaccard over a parameter grid");
  std::string sweep_events, sweep_surveys, grid_file;
  sweep_cmd->add_option("events", sweep_events, "Event CSV")->required();
  sweep_cmd->add_option("surveys", sweep_surveys, "Survey CSV")->required();
  sweep_cmd->add_option("--grid-file", grid_file,
                        "CSV kind,mu,theta,lifetime_days (default: reference grid)");

  auto* stats_cmd = app.add_subcommand("stats", "Friedman and Nemenyi tests on a score matrix");
  std::string scores_file;
  stats_cmd->add_option("scores", scores_file, "Score matrix CSV")->required();

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic event log and surveys");
  SyntheticOptions synth;
  std::string bias = "recency", events_out, surveys_out;
  synth_cmd->add_option("--nodes", synth.n_nodes)->capture_default_str();
  synth_cmd->add_option("--events", synth.n_events)->capture_default_str();
  synth_cmd->add_option("--days", synth.duration_days)->capture_default_str();
  synth_cmd->add_option("--bias", bias)
      ->check(CLI::IsMember({"uniform", "recency", "community"}))
      ->capture_default_str();
  synth_cmd->add_option("--participants", synth.n_participants,
                        "Nodes answering surveys (0 = all)")
      ->capture_default_str();
  synth_cmd->add_option("--term-days", synth.term_days)->capture_default_str();
  synth_cmd->add_option("--two-sided-fraction", synth.two_sided_fraction,
                        "Share of events recorded by both parties")
      ->capture_default_str();
  synth_cmd->add_option("--events-out", events_out)->required();
  synth_cmd->add_option("--surveys-out", surveys_out)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  // Flags are validated before any file is touched.
  enum class Stage { Config, Io };
  Stage stage = Stage::Config;
  try {
    if (*snapshot_cmd) {
      const ModelConfig config = model_config(flags);
      const DedupPolicy policy = dedup_policy(flags);
      std::optional<std::int64_t> at;
      if (!snapshot_at.empty()) {
        at = parse_datetime(snapshot_at);
        if (!at) throw UsageError("--at must be Unix seconds or YYYY-MM-DD[THH:MM[:SS]]");
      }
      stage = Stage::Io;
      NodeTable nodes;
      const auto events = load_events(snapshot_events, nodes, policy, err);
      if (!at) at = events.empty() ? 0 : events.back().timestamp;
      Engine engine(config);
      for (const Event& e : events) {
        if (e.timestamp > *at) break;
        engine.process(e);
      }
      const Snapshot snap = engine.snapshot(to_hours(*at));
      out << "source,target,weight\n";
      for (const auto& edge : snap.edges) {
        out << csv::escape(nodes.name(edge.source)) << ','
            << csv::escape(nodes.name(edge.target)) << ','
            << csv::format_double(edge.weight) << '\n';
      }
    } else if (*evaluate_cmd) {
      const auto methods = method_specs(flags);
      const DedupPolicy policy = dedup_policy(flags);
      EvalOptions options{survey_cut(flags)};
      stage = Stage::Io;
      NodeTable nodes;
      const auto events = load_events(eval_events, nodes, policy, err);
      const auto surveys = load_surveys(eval_surveys, nodes, err);
      const EvalReport report = evaluate_all(events, surveys, methods, options);
      const std::size_t empty = report.flagged(EvalFlag::EmptyNominations) / methods.size();
      const std::size_t early = report.flagged(EvalFlag::BeforeFirstEvent) / methods.size();
      if (empty > 0) err << "warning: " << empty << " surveys list no nominations\n";
      if (early > 0) err << "warning: " << early << " surveys precede the first event\n";
      if (!detail_out.empty()) {
        auto file = open_output(detail_out);
        write_detail_csv(file, report, nodes);
      }
      if (!scores_out.empty()) {
        auto file = open_output(scores_out);
        stats::write_score_matrix(file, score_matrix(report, nodes));
      }
      write_summary_csv(out, report);
    } else if (*sweep_cmd) {
      const DedupPolicy policy = dedup_policy(flags);
      SweepOptions options;
      options.eval.survey_cut_seconds = survey_cut(flags);
      options.symmetric = flags.symmetric == "true";
      stage = Stage::Io;
      std::vector<GridPoint> grid;
      if (grid_file.empty()) {
        grid = default_grid();
      } else {
        std::ifstream in(grid_file, std::ios::binary);
        if (!in) throw Error("cannot open " + grid_file + " for reading");
        grid = read_grid_csv(in, grid_file);
      }
      NodeTable nodes;
      const auto events = load_events(sweep_events, nodes, policy, err);
      const auto surveys = load_surveys(sweep_surveys, nodes, err);
      const SweepResult result = sweep(events, surveys, grid, options);
      for (const auto& r : result.rejected) {
        err << "warning: grid point " << r.index + 1 << " (" << to_string(r.point.kind)
            << ", mu=" << r.point.mu << ", theta=" << r.point.theta
            << ", L=" << r.point.lifetime_days << " d) rejected: " << r.reason << '\n';
      }
      write_sweep_csv(out, result.points);
    } else if (*stats_cmd) {
      stage = Stage::Io;
      std::ifstream in(scores_file, std::ios::binary);
      if (!in) throw Error("cannot open " + scores_file + " for reading");
      const stats::ScoreMatrix m = stats::read_score_matrix(in, scores_file);
      const auto friedman = stats::friedman_test(m);
      const auto raw = stats::nemenyi_pairwise(m);
      const auto adjusted = stats::adjust_pairwise(raw);
      const std::size_t k = m.n_methods();

      out << "statistic,df,p_value\n"
          << csv::format_double(friedman.statistic) << ',' << friedman.df << ','
          << csv::format_double(friedman.p_value) << "\n\n";
      out << "method_a,method_b,mean_rank_a,mean_rank_b,p_raw,p_adjusted,code\n";
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
          out << csv::escape(m.methods[a]) << ',' << csv::escape(m.methods[b]) << ','
              << csv::format_double(friedman.mean_ranks[a]) << ','
              << csv::format_double(friedman.mean_ranks[b]) << ','
              << csv::format_double(raw.p[a][b]) << ','
              << csv::format_double(adjusted.p[a][b]) << ','
              << stats::significance_code(adjusted.p[a][b]) << '\n';
        }
      }
      // Adjusted p-values below the diagonal, their codes above it.
      out << "\nmethod";
      for (const auto& name : m.methods) out << ',' << csv::escape(name);
      out << '\n';
      for (std::size_t a = 0; a < k; ++a) {
        out << csv::escape(m.methods[a]);
        for (std::size_t b = 0; b < k; ++b) {
          out << ',';
          if (a == b) {
            out << "--";
          } else if (a > b) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.4f", adjusted.p[a][b]);
            out << buf;
          } else {
            out << stats::significance_code(adjusted.p[a][b]);
          }
        }
        out << '\n';
      }
    } else if (*synth_cmd) {
      synth.planted = model_config(flags);
      synth.seed = flags.seed;
      synth.bias = *parse_synthetic_bias(bias);
      synth.survey_cut_seconds = survey_cut(flags);
      if (synth.n_nodes == 0) throw UsageError("--nodes must be positive");
      if (synth.n_events > 0 && synth.n_nodes < 2) {
        throw UsageError("--nodes must be at least 2 when --events > 0");
      }
      if (!(synth.duration_days > 0)) throw UsageError("--days must be positive");
      if (!(synth.term_days > 0)) throw UsageError("--term-days must be positive");
      if (!(synth.two_sided_fraction >= 0 && synth.two_sided_fraction <= 1)) {
        throw UsageError("--two-sided-fraction must lie in [0, 1]");
      }
      stage = Stage::Io;
      const SyntheticDataset data = generate_synthetic(synth);
      auto events_file = open_output(events_out);
      write_events(events_file, data.records, data.nodes, synth.two_sided_fraction > 0.0);
      auto surveys_file = open_output(surveys_out);
      write_surveys(surveys_file, data.surveys, data.nodes);
      err << "info: wrote " << data.records.size() << " event records and "
          << data.surveys.size() << " surveys\n";
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return stage == Stage::Config ? kExitConfig : kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return stage == Stage::Config ? kExitConfig : kExitIo;
  }
  return kExitOk;
}

}  // namespace cogsnet::cli
