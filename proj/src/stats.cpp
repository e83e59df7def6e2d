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

#include "cogsnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include <boost/math/distributions/chi_squared.hpp>

#include "cogsnet/csv.hpp"
#include "cogsnet/error.hpp"

namespace cogsnet::stats {

void ScoreMatrix::validate() const {
  if (methods.size() < 2) throw ValidationError("score matrix needs at least two methods");
  if (rows.size() < 2) throw ValidationError("score matrix needs at least two blocks");
  if (!blocks.empty() && blocks.size() != rows.size()) {
    throw ValidationError("score matrix has " + std::to_string(blocks.size()) +
                          " block labels for " + std::to_string(rows.size()) + " rows");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != methods.size()) {
      throw ValidationError("score matrix row " + std::to_string(i) + " has " +
                            std::to_string(rows[i].size()) + " cells, expected " +
                            std::to_string(methods.size()));
    }
    for (double v : rows[i]) {
      if (!std::isfinite(v)) {
        throw ValidationError("score matrix row " + std::to_string(i) +
                              " contains a non-finite value");
      }
    }
  }
}

std::vector<double> mid_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) share ranks i+1..j+1.
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t p = i; p <= j; ++p) ranks[order[p]] = rank;
    i = j + 1;
  }
  return ranks;
}

namespace {

// Sum over rows of (t^3 - t) for every group of t tied cells.
double tie_sum(std::span<const double> row) {
  std::vector<double> sorted(row.begin(), row.end());
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    total += t * t * t - t;
    i = j + 1;
  }
  return total;
}

std::vector<double> mean_ranks_of(const ScoreMatrix& m) {
  std::vector<double> sums(m.n_methods(), 0.0);
  for (const auto& row : m.rows) {
    const auto ranks = mid_ranks(row);
    for (std::size_t j = 0; j < ranks.size(); ++j) sums[j] += ranks[j];
  }
  for (double& s : sums) s /= static_cast<double>(m.n_blocks());
  return sums;
}

}  // namespace

double chi_square_sf(double x, double df) {
  if (!(df > 0.0)) throw ContractError("chi-square degrees of freedom must be positive");
  if (!(x > 0.0)) return 1.0;
  boost::math::chi_squared_distribution<double> dist(df);
  return boost::math::cdf(boost::math::complement(dist, x));
}

FriedmanResult friedman_test(const ScoreMatrix& m) {
  m.validate();
  const double n = static_cast<double>(m.n_blocks());
  const double k = static_cast<double>(m.n_methods());

  FriedmanResult result;
  result.df = m.n_methods() - 1;
  result.mean_ranks = mean_ranks_of(m);

  double spread = 0.0;
  const double centre = 0.5 * (k + 1.0);
  for (double r : result.mean_ranks) spread += (r - centre) * (r - centre);
  const double raw = 12.0 * n / (k * (k + 1.0)) * spread;

  double ties = 0.0;
  for (const auto& row : m.rows) ties += tie_sum(row);
  const double correction = 1.0 - ties / (n * k * (k * k - 1.0));
  if (correction <= 1e-12) {
    // Every row is constant: no evidence of any difference.
    result.statistic = 0.0;
    result.p_value = 1.0;
    return result;
  }
  result.statistic = raw / correction;
  result.p_value = chi_square_sf(result.statistic, static_cast<double>(result.df));
  return result;
}

namespace {

double normal_pdf(double z) {
  static const double kInvSqrt2Pi = 0.3989422804014327;
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Integrand of P(Q > q) = k * int phi(z) * [Phi(z)^(k-1) - (Phi(z) - Phi(z-q))^(k-1)] dz,
// written as Phi(z)^(k-1) * (1 - (1 - Phi(z-q)/Phi(z))^(k-1)) to avoid
// cancellation in the upper tail.
double range_tail_integrand(double z, double q, int k) {
  const double upper = normal_cdf(z);
  if (upper <= 0.0) return 0.0;
  const double lower = normal_cdf(z - q);
  const double ratio = std::min(1.0, lower / upper);
  const double excess = -std::expm1(static_cast<double>(k - 1) * std::log1p(-ratio));
  return normal_pdf(z) * std::pow(upper, k - 1) * excess;
}

}  // namespace

double studentized_range_sf(double q, int k) {
  if (k < 2) throw ContractError("studentized range needs k >= 2");
  if (!(q > 0.0)) return 1.0;
  // Composite Simpson on [-12, 12]; phi is below 1e-31 outside, and the
  // integrand is smooth, so 4096 panels keep the error far below 1e-9.
  constexpr double lo = -12.0, hi = 12.0;
  constexpr int panels = 4096;
  const double h = (hi - lo) / panels;
  double sum = range_tail_integrand(lo, q, k) + range_tail_integrand(hi, q, k);
  for (int i = 1; i < panels; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * range_tail_integrand(lo + i * h, q, k);
  }
  const double p = static_cast<double>(k) * sum * h / 3.0;
  return std::clamp(p, 0.0, 1.0);
}

PairwiseMatrix nemenyi_pairwise(const ScoreMatrix& m) {
  m.validate();
  const std::size_t k = m.n_methods();
  const double n = static_cast<double>(m.n_blocks());
  const auto ranks = mean_ranks_of(m);
  const double se = std::sqrt(static_cast<double>(k * (k + 1)) / (6.0 * n));

  PairwiseMatrix out;
  out.methods = m.methods;
  out.p.assign(k, std::vector<double>(k, 1.0));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      const double q = std::abs(ranks[a] - ranks[b]) / se * std::sqrt(2.0);
      const double p = studentized_range_sf(q, static_cast<int>(k));
      out.p[a][b] = out.p[b][a] = p;
    }
  }
  return out;
}

std::vector<double> simes_hochberg_adjust(std::span<const double> pvalues) {
  for (double p : pvalues) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ValidationError("p-values must lie in [0, 1], got " + csv::format_double(p));
    }
  }
  const std::size_t m = pvalues.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  // Largest first.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pvalues[a] > pvalues[b]; });
  std::vector<double> adjusted(m);
  double running = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    // i-th largest p is multiplied by i + 1 (= m - ascending rank + 1).
    const double scaled = static_cast<double>(i + 1) * pvalues[order[i]];
    running = std::min(running, scaled);
    adjusted[order[i]] = std::min(1.0, running);
  }
  return adjusted;
}

PairwiseMatrix adjust_pairwise(const PairwiseMatrix& raw) {
  const std::size_t k = raw.methods.size();
  std::vector<double> flat;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) flat.push_back(raw.p[a][b]);
  }
  const auto adjusted = simes_hochberg_adjust(flat);
  PairwiseMatrix out{raw.methods, std::vector<std::vector<double>>(k, std::vector<double>(k, 1.0))};
  std::size_t i = 0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      out.p[a][b] = out.p[b][a] = adjusted[i++];
    }
  }
  return out;
}

std::string_view significance_code(double p) {
  if (p < 0.00005) return "***";
  if (p < 0.001) return "**";
  if (p < 0.05) return "*";
  return "-";
}

ScoreMatrix read_score_matrix(std::istream& in, std::string_view source) {
  const std::string src(source);
  std::string line;
  if (!csv::read_line(in, line)) throw ParseError(src, 1, "missing header");
  csv::strip_bom(line);
  auto header = csv::split_line(line);
  if (!header || header->size() < 2) {
    throw ParseError(src, 1, "header must be 'block,<method>,...'");
  }
  ScoreMatrix m;
  m.methods.assign(header->begin() + 1, header->end());
  std::size_t line_no = 1;
  while (csv::read_line(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    auto fields = csv::split_line(line);
    if (!fields || fields->size() != header->size()) {
      throw ParseError(src, line_no,
                       "expected " + std::to_string(header->size()) + " fields");
    }
    std::vector<double> row;
    row.reserve(m.methods.size());
    for (std::size_t j = 1; j < fields->size(); ++j) {
      auto v = csv::parse_double((*fields)[j]);
      if (!v) throw ParseError(src, line_no, "non-numeric score '" + (*fields)[j] + "'");
      row.push_back(*v);
    }
    m.blocks.push_back((*fields)[0]);
    m.rows.push_back(std::move(row));
  }
  return m;
}

void write_score_matrix(std::ostream& out, const ScoreMatrix& m) {
  out << "block";
  for (const auto& method : m.methods) out << ',' << csv::escape(method);
  out << '\n';
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    out << csv::escape(i < m.blocks.size() ? m.blocks[i] : std::to_string(i));
    for (double v : m.rows[i]) out << ',' << csv::format_double(v);
    out << '\n';
  }
}

}  // namespace cogsnet::stats
