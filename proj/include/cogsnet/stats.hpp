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

// Rank-based comparison of several methods scored on the same blocks
// (surveys): Friedman omnibus test, Nemenyi pairwise post-hoc test and
// Simes-Hochberg step-up adjustment.

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cogsnet::stats {

struct ScoreMatrix {
  std::vector<std::string> methods;
  // Optional row labels; empty or one per row.
  std::vector<std::string> blocks;
  // rows[block][method]
  std::vector<std::vector<double>> rows;

  std::size_t n_blocks() const { return rows.size(); }
  std::size_t n_methods() const { return methods.size(); }

  // Throws ValidationError unless rectangular with >= 2 rows and >= 2
  // columns of finite values.
  void validate() const;
};

// Ranks 1..n in ascending value order; tied values share their mean rank.
std::vector<double> mid_ranks(std::span<const double> values);

struct FriedmanResult {
  // Chi-square statistic with the tie correction applied.
  double statistic = 0.0;
  std::size_t df = 0;
  double p_value = 1.0;
  std::vector<double> mean_ranks;
};

FriedmanResult friedman_test(const ScoreMatrix& m);

// Symmetric method-by-method matrix with unit diagonal.
struct PairwiseMatrix {
  std::vector<std::string> methods;
  std::vector<std::vector<double>> p;
};

// Nemenyi test: p-value of each mean-rank difference under the
// studentized range distribution with infinite degrees of freedom.
PairwiseMatrix nemenyi_pairwise(const ScoreMatrix& m);

// Hochberg step-up adjustment; output order matches input order.
// Throws ValidationError for values outside [0, 1].
std::vector<double> simes_hochberg_adjust(std::span<const double> pvalues);

// Applies simes_hochberg_adjust across the off-diagonal pairs.
PairwiseMatrix adjust_pairwise(const PairwiseMatrix& raw);

// Upper tail P(Q > q) of the studentized range of k means with infinite
// degrees of freedom (the range of k iid standard normals). Absolute error
// below 1e-9.
double studentized_range_sf(double q, int k);

// Upper tail of the chi-square distribution.
double chi_square_sf(double x, double df);

// "***" p < 0.00005, "**" p < 0.001, "*" p < 0.05, "-" otherwise.
std::string_view significance_code(double p);

// CSV with header `block,<method>,...` and one numeric row per block.
ScoreMatrix read_score_matrix(std::istream& in, std::string_view source = "<stream>");
void write_score_matrix(std::ostream& out, const ScoreMatrix& m);

}  // namespace cogsnet::stats
