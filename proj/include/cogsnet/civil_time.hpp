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

// UTC calendar helpers. Survey dates are civil dates; event timestamps are
// Unix seconds.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cogsnet {

using Date = std::chrono::year_month_day;

inline constexpr std::int64_t kSecondsPerDay = 86400;
// 23:59:59, the default moment a survey is compared against the model.
inline constexpr std::int64_t kDefaultSurveyCutSeconds = kSecondsPerDay - 1;

// YYYY-MM-DD.
std::optional<Date> parse_iso_date(std::string_view text);
std::string format_iso_date(const Date& date);

// HH:MM or HH:MM:SS, returned as seconds after midnight.
std::optional<std::int64_t> parse_time_of_day(std::string_view text);

// Accepts a bare integer (Unix seconds), YYYY-MM-DD (midnight), or
// YYYY-MM-DD[T| ]HH:MM[:SS][Z].
std::optional<std::int64_t> parse_datetime(std::string_view text);

std::int64_t to_epoch_seconds(const Date& date);
Date date_of(std::int64_t epoch_seconds);

}  // namespace cogsnet
