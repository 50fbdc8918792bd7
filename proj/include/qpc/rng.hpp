// Copyright 2026 The qpc-sim Authors
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

#ifndef QPC_RNG_HPP
#define QPC_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <random>

namespace qpc {

/// SplitMix64 finalizer. Used for seed derivation and keyed mixing; it is a
/// bijection on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Explicitly seeded generator owned by a single run.
///
/// All draws are derived from the raw 64-bit engine output with fixed
/// arithmetic (no std distributions), so sequences are identical across
/// standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream for trial `index` of an experiment seeded with
    /// `master`. Depends only on (master, index), never on scheduling.
    static Rng for_trial(std::uint64_t master, std::uint64_t index) {
        return Rng(splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    int bit() { return static_cast<int>(engine_() >> 63); }

    bool bernoulli(double p) { return uniform() < p; }

    /// Uniform integer in [0, n). Rejection sampling keeps it unbiased.
    std::size_t below(std::size_t n) {
        if (n <= 1) {
            return 0;
        }
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return static_cast<std::size_t>(r % bound);
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace qpc

#endif  // QPC_RNG_HPP
