// Copyright 2026 The qthermo Authors
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

#include <cstdint>
#include <random>
#include <string_view>

namespace qthermo::rng {

/// Recorded in output metadata so sampled results can be traced to the
/// generator that produced them.
inline constexpr std::string_view kAlgorithm = "mt19937_64+splitmix64-substreams";

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Sub-seed for (stream, index) under `seed`. Depends only on its arguments,
/// so results do not depend on evaluation order or thread count.
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) noexcept {
    return mix64(mix64(mix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL)) ^ index);
}

/// Stream tags used by the experiment layer.
namespace stream {
inline constexpr std::uint64_t count_cell = 1;
inline constexpr std::uint64_t tomography_axis = 2;
inline constexpr std::uint64_t resample = 3;
inline constexpr std::uint64_t pipeline_counts = 4;
inline constexpr std::uint64_t pipeline_tomography = 5;
inline constexpr std::uint64_t grid_point = 6;
} // namespace stream

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) { return Engine(seed); }

} // namespace qthermo::rng
