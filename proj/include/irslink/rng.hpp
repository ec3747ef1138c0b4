// irslink - link-level Monte Carlo simulator for IRS-aided multi-user MIMO downlink
// Copyright (C) 2026 the irslink authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef IRSLINK_RNG_HPP
#define IRSLINK_RNG_HPP

#include <cstdint>
#include <random>

namespace irslink {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed for the independent stream of one (drop, attempt) pair. Every drop
// owns its own stream, so a campaign result does not depend on how drops
// are scheduled across workers. The attempt counter yields a fresh stream
// when a degenerate drop is resampled.
inline std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                        std::uint64_t drop_index,
                                        std::uint64_t attempt = 0)
{
    std::uint64_t s = splitmix64(master_seed);
    s = splitmix64(s ^ (0x9E3779B97F4A7C15ULL * (drop_index + 1)));
    s = splitmix64(s ^ (0xC2B2AE3D27D4EB4FULL * (attempt + 1)));
    return s;
}

} // namespace irslink

#endif
