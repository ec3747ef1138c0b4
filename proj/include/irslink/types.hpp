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

#ifndef IRSLINK_TYPES_HPP
#define IRSLINK_TYPES_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

namespace irslink {

// Thrown when an effective channel collapses to zero and no beamformer or
// power split is defined. The campaign runner catches this and resamples
// the drop from a fresh sub-stream.
struct DegenerateChannelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by the campaign runner itself, e.g. when the degenerate-drop
// fraction exceeds the configured limit.
struct CampaignError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Vec2& a, const Vec2& b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

enum class UserClass { center, edge };

enum class Scheme { tdma, fdma, noma };

inline int scheme_order(Scheme s) { return static_cast<int>(s); }

inline std::string scheme_name(Scheme s)
{
    switch (s) {
    case Scheme::tdma: return "tdma";
    case Scheme::fdma: return "fdma";
    default: return "noma";
    }
}

// Reflection phase mode: continuous phases, a b-bit uniform grid, or
// uniformly random phases.
struct PhaseMode {
    enum class Kind { continuous, discrete, random };

    Kind kind = Kind::continuous;
    int bits = 0; // set only for Kind::discrete

    static PhaseMode continuous() { return {Kind::continuous, 0}; }
    static PhaseMode discrete(int b) { return {Kind::discrete, b}; }
    static PhaseMode random() { return {Kind::random, 0}; }

    bool is_discrete() const { return kind == Kind::discrete; }

    // Canonical ordering: continuous, discrete by ascending bits, random.
    std::tuple<int, int> order_key() const
    {
        switch (kind) {
        case Kind::continuous: return {0, 0};
        case Kind::discrete: return {1, bits};
        default: return {2, 0};
        }
    }

    // Label used for summary keys and CLI mode lists, e.g. "discrete_2".
    std::string label() const
    {
        switch (kind) {
        case Kind::continuous: return "continuous";
        case Kind::discrete: return "discrete_" + std::to_string(bits);
        default: return "random";
        }
    }

    // CSV keeps the bit count in its own column.
    std::string csv_name() const
    {
        switch (kind) {
        case Kind::continuous: return "continuous";
        case Kind::discrete: return "discrete";
        default: return "random";
        }
    }

    friend bool operator==(const PhaseMode& a, const PhaseMode& b)
    {
        return a.kind == b.kind && a.bits == b.bits;
    }
};

} // namespace irslink

#endif
