// Copyright 2026 The xtele Authors
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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace xtele {

/// SplitMix64 finalizer. Used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// A private random stream. Doubles are built from the raw 64-bit output so
/// the sequence does not depend on the standard library's distributions.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(mix64(seed)) {
    }

    /// Stream for sub-task `index` of a run seeded with `seed`.
    static RngStream derive(std::uint64_t seed, std::uint64_t index) {
        return RngStream(mix64(seed) ^ mix64(index + 0x632BE59BD9B4E019ULL));
    }

    std::uint64_t next_u64() {
        return engine_();
    }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0, 1].
    double uniform_open_low() {
        return 1.0 - uniform();
    }

    double exponential() {
        return -std::log(uniform_open_low());
    }

    double angle() {
        return 2.0 * std::numbers::pi * uniform();
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace xtele
