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

#include "cogsnet/eval.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <memory>
#include <ostream>
#include <set>

#include "cogsnet/csv.hpp"
#include "cogsnet/error.hpp"
#include "cogsnet/random.hpp"

namespace cogsnet {

namespace {

std::vector<NodeId> distinct(std::span<const NodeId> ids) {
  std::vector<NodeId> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

double jaccard(std::span<const NodeId> a, std::span<const NodeId> b) {
  const auto sa = distinct(a), sb = distinct(b);
  std::size_t common = 0;
  for (auto i = sa.begin(), j = sb.begin(); i != sa.end() && j != sb.end();) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common, ++i, ++j;
    }
  }
  const std::size_t uni = sa.size() + sb.size() - common;
  return uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
}

std::string_view to_string(EvalFlag flag) {
  switch (flag) {
    case EvalFlag::None:
      return "none";
    case EvalFlag::EmptyNominations:
      return "empty-nominations";
    case EvalFlag::BeforeFirstEvent:
      return "before-first-event";
  }
  return "none";
}

EvalResult evaluate_survey(const TopKProvider& provider, std::string_view method,
                           const SurveyRecord& survey, double cut_time) {
  EvalResult result;
  result.respondent = survey.respondent;
  result.survey_date = survey.survey_date;
  result.method = std::string(method);
  result.k = survey.nominations.size();
  if (result.k == 0) {
    result.flag = EvalFlag::EmptyNominations;
    return result;
  }
  const auto predicted = provider(survey.respondent, cut_time, result.k);
  result.jaccard = jaccard(predicted, survey.nominations);
  return result;
}

MethodSpec MethodSpec::cogsnet(std::string label, ModelConfig model) {
  MethodSpec m;
  m.label = std::move(label);
  m.type = Type::CogSNet;
  m.model = std::move(model);
  return m;
}

MethodSpec MethodSpec::frequency(std::string label) {
  MethodSpec m;
  m.label = std::move(label);
  m.type = Type::Frequency;
  return m;
}

MethodSpec MethodSpec::recency(std::size_t n_recent, std::string label) {
  MethodSpec m;
  m.label = std::move(label);
  m.type = Type::Recency;
  m.recent_events = n_recent;
  return m;
}

MethodSpec MethodSpec::random(std::size_t draws, std::uint64_t seed, std::string label) {
  MethodSpec m;
  m.label = std::move(label);
  m.type = Type::Random;
  m.random_draws = draws;
  m.seed = seed;
  return m;
}

std::int64_t survey_cut_timestamp(const SurveyRecord& survey, const EvalOptions& options) {
  return to_epoch_seconds(survey.survey_date) + options.survey_cut_seconds;
}

std::size_t EvalReport::flagged(EvalFlag flag) const {
  return static_cast<std::size_t>(std::count_if(
      results.begin(), results.end(), [&](const EvalResult& r) { return r.flag == flag; }));
}

EvalReport evaluate_all(std::span<const Event> events,
                        std::span<const SurveyRecord> surveys,
                        std::span<const MethodSpec> methods, const EvalOptions& options) {
  if (methods.empty()) throw ContractError("evaluation needs at least one method");
  std::set<std::string> labels;
  std::size_t window = 1;
  bool needs_history = false;
  for (const auto& m : methods) {
    if (m.label.empty() || !labels.insert(m.label).second) {
      throw ContractError("method labels must be unique and non-empty ('" + m.label + "')");
    }
    if (m.type == MethodSpec::Type::Recency) {
      if (m.recent_events == 0) throw ContractError("recency window must be at least 1");
      window = std::max(window, m.recent_events);
    }
    if (m.type == MethodSpec::Type::Random && m.random_draws == 0) {
      throw ContractError("random baseline needs at least one draw");
    }
    needs_history = needs_history || m.type != MethodSpec::Type::CogSNet;
  }

  std::vector<std::unique_ptr<Engine>> engines(methods.size());
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (methods[i].type == MethodSpec::Type::CogSNet) {
      engines[i] = std::make_unique<Engine>(methods[i].model);
    }
  }
  InteractionHistory history(window);

  std::vector<std::size_t> order(surveys.size());
  std::vector<std::int64_t> cuts(surveys.size());
  for (std::size_t s = 0; s < surveys.size(); ++s) {
    order[s] = s;
    cuts[s] = survey_cut_timestamp(surveys[s], options);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cuts[a] < cuts[b]; });

  EvalReport report;
  for (const auto& m : methods) report.methods.push_back(m.label);
  report.results.resize(surveys.size() * methods.size());

  std::size_t next = 0;
  for (std::size_t s : order) {
    const SurveyRecord& survey = surveys[s];
    const std::int64_t cut = cuts[s];
    for (; next < events.size() && events[next].timestamp <= cut; ++next) {
      for (auto& engine : engines) {
        if (engine) engine->process(events[next]);
      }
      if (needs_history) history.record(events[next]);
    }
    const double t = to_hours(cut);

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      const MethodSpec& m = methods[mi];
      EvalResult result;
      switch (m.type) {
        case MethodSpec::Type::CogSNet: {
          const Engine& engine = *engines[mi];
          result = evaluate_survey(
              [&](NodeId n, double at, std::size_t k) { return engine.top_k(n, at, k); },
              m.label, survey, t);
          break;
        }
        case MethodSpec::Type::Frequency:
          result = evaluate_survey(
              [&](NodeId n, double, std::size_t k) { return history.frequency_top(n, k); },
              m.label, survey, t);
          break;
        case MethodSpec::Type::Recency:
          result = evaluate_survey(
              [&](NodeId n, double, std::size_t k) {
                return history.recency_top(n, k, m.recent_events);
              },
              m.label, survey, t);
          break;
        case MethodSpec::Type::Random: {
          double total = 0.0;
          for (std::size_t d = 0; d < m.random_draws; ++d) {
            const std::uint64_t seed = rng::mix(rng::mix(m.seed, s), d);
            result = evaluate_survey(
                [&](NodeId n, double, std::size_t k) {
                  return history.random_top(n, k, seed);
                },
                m.label, survey, t);
            total += result.jaccard;
          }
          result.jaccard = total / static_cast<double>(m.random_draws);
          break;
        }
      }
      if (result.flag == EvalFlag::None && next == 0) result.flag = EvalFlag::BeforeFirstEvent;
      report.results[s * methods.size() + mi] = std::move(result);
    }
  }

  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    MethodSummary summary{methods[mi].label, 0.0, surveys.size()};
    for (std::size_t s = 0; s < surveys.size(); ++s) {
      summary.mean_jaccard += report.results[s * methods.size() + mi].jaccard;
    }
    if (!surveys.empty()) summary.mean_jaccard /= static_cast<double>(surveys.size());
    report.summaries.push_back(std::move(summary));
  }
  return report;
}

stats::ScoreMatrix score_matrix(const EvalReport& report, const NodeTable& nodes) {
  stats::ScoreMatrix m;
  m.methods = report.methods;
  const std::size_t k = report.methods.size();
  for (std::size_t i = 0; i + k <= report.results.size(); i += k) {
    const EvalResult& first = report.results[i];
    m.blocks.push_back(nodes.name(first.respondent) + "@" +
                       format_iso_date(first.survey_date));
    std::vector<double> row;
    for (std::size_t j = 0; j < k; ++j) row.push_back(report.results[i + j].jaccard);
    m.rows.push_back(std::move(row));
  }
  return m;
}

void write_detail_csv(std::ostream& out, const EvalReport& report, const NodeTable& nodes) {
  out << "respondent,survey_date,method,k,jaccard\n";
  for (const auto& r : report.results) {
    out << csv::escape(nodes.name(r.respondent)) << ',' << format_iso_date(r.survey_date)
        << ',' << csv::escape(r.method) << ',' << r.k << ','
        << csv::format_double(r.jaccard) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const EvalReport& report) {
  out << "method,mean_jaccard,n_surveys\n";
  for (const auto& s : report.summaries) {
    out << csv::escape(s.method) << ',' << csv::format_double(s.mean_jaccard) << ','
        << s.n_surveys << '\n';
  }
}

const SweepPoint* SweepResult::best() const {
  const SweepPoint* best = nullptr;
  for (const auto& p : points) {
    if (best == nullptr || p.mean_jaccard > best->mean_jaccard) best = &p;
  }
  return best;
}

std::span<const double> default_lifetimes_days() {
  static constexpr std::array<double, 35> kLifetimes = {
      1,  2,  3,  4,  5,  6,  7,  8,  9,  10, 11, 12, 13, 14, 15, 16, 17, 18,
      19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 40, 50, 60, 80, 100};
  return kLifetimes;
}

std::vector<GridPoint> default_grid() {
  static constexpr std::array<std::pair<double, double>, 3> kPeakThreshold = {
      {{0.4, 0.1}, {0.8, 0.3}, {0.8, 0.1}}};
  std::vector<GridPoint> grid;
  for (ForgettingKind kind : {ForgettingKind::Exponential, ForgettingKind::Power}) {
    for (const auto& [mu, theta] : kPeakThreshold) {
      for (double days : default_lifetimes_days()) {
        grid.push_back(GridPoint{kind, mu, theta, days});
      }
    }
  }
  return grid;
}

SweepResult sweep(std::span<const Event> events, std::span<const SurveyRecord> surveys,
                  std::span<const GridPoint> grid, const SweepOptions& options) {
  if (grid.empty()) throw ContractError("parameter grid is empty");
  SweepResult result;
  std::vector<MethodSpec> methods;
  std::vector<std::size_t> accepted;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const GridPoint& g = grid[i];
    try {
      ModelConfig config = ModelConfig::from_lifetime(g.kind, g.mu, g.theta, g.lifetime_days);
      config.symmetric = options.symmetric;
      methods.push_back(MethodSpec::cogsnet("grid" + std::to_string(i), std::move(config)));
      accepted.push_back(i);
    } catch (const ConfigError& e) {
      result.rejected.push_back({i, g, e.what()});
    }
  }
  if (methods.empty()) return result;

  const EvalReport report = evaluate_all(events, surveys, methods, options.eval);
  for (std::size_t m = 0; m < accepted.size(); ++m) {
    const GridPoint& g = grid[accepted[m]];
    result.points.push_back(SweepPoint{g.kind, g.mu, g.theta, g.lifetime_days,
                                       report.summaries[m].mean_jaccard,
                                       report.summaries[m].n_surveys});
  }
  return result;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points) {
  out << "kind,mu,theta,lifetime_days,mean_jaccard,n_surveys\n";
  for (const auto& p : points) {
    out << to_string(p.kind) << ',' << csv::format_double(p.mu) << ','
        << csv::format_double(p.theta) << ',' << csv::format_double(p.lifetime_days)
        << ',' << csv::format_double(p.mean_jaccard) << ',' << p.n_surveys << '\n';
  }
}

std::vector<GridPoint> read_grid_csv(std::istream& in, std::string_view source) {
  const std::string src(source);
  std::string line;
  if (!csv::read_line(in, line)) throw ParseError(src, 1, "missing header");
  csv::strip_bom(line);
  if (line != "kind,mu,theta,lifetime_days") {
    throw ParseError(src, 1, "expected header 'kind,mu,theta,lifetime_days'");
  }
  std::vector<GridPoint> grid;
  std::size_t line_no = 1;
  while (csv::read_line(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    auto f = csv::split_line(line);
    if (!f || f->size() != 4) throw ParseError(src, line_no, "expected 4 fields");
    auto kind = parse_forgetting_kind(csv::trim((*f)[0]));
    auto mu = csv::parse_double((*f)[1]);
    auto theta = csv::parse_double((*f)[2]);
    auto days = csv::parse_double((*f)[3]);
    if (!kind) throw ParseError(src, line_no, "kind must be 'exp' or 'pow'");
    if (!mu || !theta || !days) throw ParseError(src, line_no, "non-numeric parameter");
    grid.push_back(GridPoint{*kind, *mu, *theta, *days});
  }
  return grid;
}

}  // namespace cogsnet
