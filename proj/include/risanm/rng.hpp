// SPDX-License-Identifier: Apache-2.0
//
// risanm: RIS-assisted mmWave channel estimation via atomic norm minimization
// Copyright (C) 2026 risanm project contributors
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

#ifndef RISANM_RNG_HPP
#define RISANM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "risanm/types.hpp"

namespace risanm
{

// splitmix64 finalizer, used both for stream derivation and seeding.
inline std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic RNG with its own float/normal derivations so results do not
// depend on the standard library's distribution implementations.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : gen_(mix64(seed)) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform over [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller; one output per pair of uniforms keeps
    // the consumption pattern stateless.
    double normal()
    {
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Circularly symmetric complex normal CN(0,1).
    cxd cnormal()
    {
        const double re = normal();
        const double im = normal();
        return cxd(re, im) * std::numbers::sqrt2 / 2.0;
    }

    // Unit-modulus complex number with uniform phase.
    cxd unit_phase()
    {
        const double ph = 2.0 * std::numbers::pi * uniform();
        return cxd(std::cos(ph), std::sin(ph));
    }

    // Sample k distinct integers from {0, ..., n-1} (partial Fisher-Yates).
    std::vector<int> sample_without_replacement(int n, int k)
    {
        std::vector<int> pool(static_cast<std::size_t>(n));
        for (int i = 0; i < n; i++)
            pool[static_cast<std::size_t>(i)] = i;
        std::vector<int> out(static_cast<std::size_t>(k));
        for (int i = 0; i < k; i++)
        {
            const auto j = i + static_cast<int>(gen_() % static_cast<std::uint64_t>(n - i));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
            out[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(i)];
        }
        return out;
    }

  private:
    std::mt19937_64 gen_;
};

// Derives an independent per-trial stream from the experiment seed and the
// trial coordinates; any parallel schedule sees the same streams.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t arch_index,
                                   std::uint64_t snr_index, std::uint64_t trial_index)
{
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ (0x100000001B3ULL * (arch_index + 1)));
    h = mix64(h ^ (0x1000193ULL * (snr_index + 1)));
    h = mix64(h ^ (trial_index + 1));
    return h;
}

} // namespace risanm

#endif
