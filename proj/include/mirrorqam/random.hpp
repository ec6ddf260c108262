// Copyright 2026 The mirrorqam Authors
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

namespace mirrorqam {

/// Every sampling path in the library draws from a 64-bit Mersenne Twister.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw. Spelled
/// out rather than using std::uniform_real_distribution so the mapping from
/// generator output to samples is fixed across standard libraries.
inline double uniform_unit(Rng &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Independent generator for stream `stream` under a master seed. Used to
/// give each chunk of shots its own reproducible stream, so results do not
/// depend on how chunks are scheduled across threads.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

} // namespace mirrorqam
