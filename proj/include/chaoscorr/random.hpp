// Copyright 2026 The chaoscorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace chaoscorr {

/// Identifies one member of a seeded ensemble. The random stream of a sample is a pure
/// function of (master_seed, sample_index), so samples can be generated in any order.
struct SampleSeed {
    std::uint64_t master_seed = 0;
    std::uint64_t sample_index = 0;

    friend bool operator==(const SampleSeed &, const SampleSeed &) = default;
};

/// Separates the streams used for different purposes by the same sample.
enum class StreamDomain : std::uint64_t {
    State = 1,
    RandomMatrix = 2,
    Disorder = 3,
    Measurement = 4,
    Subsystem = 5,
    LocalBasis = 6,
    Synthetic = 7,
};

inline constexpr std::uint64_t mix64(std::uint64_t z) {
    // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t stream_key(SampleSeed seed, StreamDomain domain) {
    const auto tag = static_cast<std::uint64_t>(domain);
    return mix64(mix64(seed.master_seed ^ mix64(tag)) ^ mix64(seed.sample_index + (tag << 56)));
}

using Rng = std::mt19937_64;

inline Rng make_stream(SampleSeed seed, StreamDomain domain) {
    return Rng(stream_key(seed, domain));
}

} // namespace chaoscorr
