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

// Minimal RFC 4180 helpers: comma separator, double-quote escaping.

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cogsnet::csv {

// Splits one record. Returns nullopt on an unterminated quoted field.
std::optional<std::vector<std::string>> split_line(std::string_view line);

// Quotes the field if it contains a comma, quote, or line break.
std::string escape(std::string_view field);

// Reads the next physical line, dropping a trailing '\r'. A leading UTF-8
// byte-order mark on the first line is removed by the caller via strip_bom.
bool read_line(std::istream& in, std::string& line);
void strip_bom(std::string& line);

// Shortest decimal representation that round-trips.
std::string format_double(double value);

std::optional<std::int64_t> parse_int(std::string_view text);
std::optional<std::uint64_t> parse_uint(std::string_view text);
std::optional<double> parse_double(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace cogsnet::csv
