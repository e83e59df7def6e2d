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

// Forgetting functions and the conversion between trace lifetime and
// forgetting intensity. All times are in hours.
//
//   exponential:  f(dt) = exp(-lambda * dt)
//   power:        f(dt) = max(1, dt)^(-lambda)
//
// A trace of peak mu is forgotten (drops to theta) after lifetime L:
//   exponential:  L = ln(mu / theta) / lambda
//   power:        L = (mu / theta)^(1 / lambda)

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>

namespace cogsnet {

inline constexpr double kSecondsPerHour = 3600.0;
inline constexpr double kHoursPerDay = 24.0;

enum class ForgettingKind { Exponential, Power };

// "exp" / "pow".
std::string_view to_string(ForgettingKind kind);
std::optional<ForgettingKind> parse_forgetting_kind(std::string_view text);

struct ForgettingSpec {
  ForgettingKind kind = ForgettingKind::Exponential;
  // Per hour. Zero means no decay.
  double lambda = 0.0;
};

struct LifetimeParams {
  double mu = 0.4;
  double theta = 0.1;
  double lifetime_hours = 14 * kHoursPerDay;
};

// Throws ConfigError unless 0 < theta < mu <= 1.
void validate_peak_threshold(double mu, double theta);

namespace detail {

// No argument checking; callers guarantee delta_t >= 0.
inline double decay_factor(const ForgettingSpec& spec, double delta_t) {
  if (spec.kind == ForgettingKind::Exponential) {
    return std::exp(-spec.lambda * delta_t);
  }
  return std::pow(std::max(1.0, delta_t), -spec.lambda);
}

}  // namespace detail

// Decay factor after delta_t hours. Throws ContractError on negative
// delta_t or negative lambda.
double evaluate(const ForgettingSpec& spec, double delta_t);

// Throws ConfigError for invalid (mu, theta), a non-positive lifetime, or a
// power-law lifetime of at most one hour (ln L <= 0).
double lambda_from_lifetime(ForgettingKind kind, const LifetimeParams& params);

// Inverse of lambda_from_lifetime. Throws ConfigError for lambda == 0
// (the trace never decays, so the lifetime is infinite).
double lifetime_from_lambda(ForgettingKind kind, double mu, double theta,
                            double lambda);

}  // namespace cogsnet
