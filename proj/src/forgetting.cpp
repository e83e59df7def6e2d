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

#include "cogsnet/forgetting.hpp"

#include <sstream>

#include "cogsnet/error.hpp"

namespace cogsnet {

std::string_view to_string(ForgettingKind kind) {
  return kind == ForgettingKind::Exponential ? "exp" : "pow";
}

std::optional<ForgettingKind> parse_forgetting_kind(std::string_view text) {
  if (text == "exp" || text == "exponential") return ForgettingKind::Exponential;
  if (text == "pow" || text == "power") return ForgettingKind::Power;
  return std::nullopt;
}

void validate_peak_threshold(double mu, double theta) {
  if (!(mu > 0.0 && mu <= 1.0)) {
    std::ostringstream msg;
    msg << "reinforcement peak must satisfy 0 < mu <= 1 (got mu=" << mu << ")";
    throw ConfigError(msg.str());
  }
  if (!(theta > 0.0 && theta < mu)) {
    std::ostringstream msg;
    msg << "forgetting threshold must satisfy 0 < theta < mu (got theta="
        << theta << ", mu=" << mu << ")";
    throw ConfigError(msg.str());
  }
}

double evaluate(const ForgettingSpec& spec, double delta_t) {
  if (!(delta_t >= 0.0)) {
    throw ContractError("forgetting function evaluated at negative elapsed time " +
                        std::to_string(delta_t));
  }
  if (!(spec.lambda >= 0.0)) {
    throw ContractError("forgetting intensity must be non-negative");
  }
  return detail::decay_factor(spec, delta_t);
}

double lambda_from_lifetime(ForgettingKind kind, const LifetimeParams& params) {
  validate_peak_threshold(params.mu, params.theta);
  const double L = params.lifetime_hours;
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw ConfigError("trace lifetime must be a positive finite number of hours");
  }
  const double log_ratio = std::log(params.mu / params.theta);
  if (kind == ForgettingKind::Exponential) {
    return log_ratio / L;
  }
  if (!(L > 1.0)) {
    throw ConfigError(
        "power forgetting needs a trace lifetime longer than one hour "
        "(got " + std::to_string(L) + " h)");
  }
  return log_ratio / std::log(L);
}

double lifetime_from_lambda(ForgettingKind kind, double mu, double theta,
                            double lambda) {
  validate_peak_threshold(mu, theta);
  if (lambda == 0.0) {
    throw ConfigError("forgetting intensity 0 gives an infinite trace lifetime");
  }
  if (!(lambda > 0.0)) {
    throw ContractError("forgetting intensity must be positive");
  }
  const double ratio = mu / theta;
  if (kind == ForgettingKind::Exponential) {
    return std::log(ratio) / lambda;
  }
  return std::pow(ratio, 1.0 / lambda);
}

}  // namespace cogsnet
