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

#include "cogsnet/civil_time.hpp"

#include <cstdio>

#include "cogsnet/csv.hpp"

namespace cogsnet {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

std::optional<Date> parse_iso_date(std::string_view text) {
  text = csv::trim(text);
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  const auto y = text.substr(0, 4), m = text.substr(5, 2), d = text.substr(8, 2);
  if (!all_digits(y) || !all_digits(m) || !all_digits(d)) return std::nullopt;
  const Date date{std::chrono::year(static_cast<int>(*csv::parse_int(y))),
                  std::chrono::month(static_cast<unsigned>(*csv::parse_int(m))),
                  std::chrono::day(static_cast<unsigned>(*csv::parse_int(d)))};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_iso_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()),
                static_cast<unsigned>(date.day()));
  return buf;
}

std::optional<std::int64_t> parse_time_of_day(std::string_view text) {
  text = csv::trim(text);
  if (text.size() != 5 && text.size() != 8) return std::nullopt;
  if (text[2] != ':' || (text.size() == 8 && text[5] != ':')) return std::nullopt;
  const auto h = text.substr(0, 2), m = text.substr(3, 2);
  const auto s = text.size() == 8 ? text.substr(6, 2) : std::string_view("00");
  if (!all_digits(h) || !all_digits(m) || !all_digits(s)) return std::nullopt;
  const std::int64_t hh = *csv::parse_int(h), mm = *csv::parse_int(m),
                     ss = *csv::parse_int(s);
  if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;
  return hh * 3600 + mm * 60 + ss;
}

std::optional<std::int64_t> parse_datetime(std::string_view text) {
  text = csv::trim(text);
  if (auto raw = csv::parse_int(text); raw && all_digits(text)) return raw;
  if (text.size() < 10) return std::nullopt;
  auto date = parse_iso_date(text.substr(0, 10));
  if (!date) return std::nullopt;
  std::int64_t seconds = to_epoch_seconds(*date);
  std::string_view rest = text.substr(10);
  if (rest.empty()) return seconds;
  if (rest.front() != 'T' && rest.front() != ' ') return std::nullopt;
  rest.remove_prefix(1);
  if (!rest.empty() && rest.back() == 'Z') rest.remove_suffix(1);
  auto tod = parse_time_of_day(rest);
  if (!tod) return std::nullopt;
  return seconds + *tod;
}

std::int64_t to_epoch_seconds(const Date& date) {
  const std::chrono::sys_days days{date};
  return static_cast<std::int64_t>(days.time_since_epoch().count()) * kSecondsPerDay;
}

Date date_of(std::int64_t epoch_seconds) {
  std::int64_t days = epoch_seconds / kSecondsPerDay;
  if (epoch_seconds % kSecondsPerDay < 0) --days;
  return Date{std::chrono::sys_days{std::chrono::days{days}}};
}

}  // namespace cogsnet
