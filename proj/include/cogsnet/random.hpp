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

// Platform-independent draws on top of std::mt19937_64 (whose output
// sequence is fixed by the standard, unlike the std distributions).

#include <cmath>
#include <cstdint>
#include <random>

namespace cogsnet::rng {

using Engine = std::mt19937_64;

// High 64 bits of a * b.
inline std::uint64_t mul_high(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t a_lo = a & 0xFFFFFFFFu, a_hi = a >> 32;
  const std::uint64_t b_lo = b & 0xFFFFFFFFu, b_hi = b >> 32;
  const std::uint64_t lo_lo = a_lo * b_lo;
  const std::uint64_t mid1 = a_hi * b_lo + (lo_lo >> 32);
  const std::uint64_t mid2 = a_lo * b_hi + (mid1 & 0xFFFFFFFFu);
  return a_hi * b_hi + (mid1 >> 32) + (mid2 >> 32);
}

// Uniform integer in [0, n) by multiply-shift. n must be positive.
inline std::uint64_t below(Engine& gen, std::uint64_t n) { return mul_high(gen(), n); }

// Uniform double in [0, 1).
inline double unit(Engine& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double exponential(Engine& gen, double mean) {
  return -std::log1p(-unit(gen)) * mean;
}

// splitmix64; derives independent seeds from structured keys.
inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) { return mix(mix(a) ^ b); }

}  // namespace cogsnet::rng
