// SPDX-License-Identifier: Apache-2.0
//
// aperiodic-mimo: Monte-Carlo MU-MIMO evaluation and aperiodic array synthesis
// Copyright (C) 2026 The aperiodic-mimo authors
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
#ifndef APERIODIC_RANDOM_HPP
#define APERIODIC_RANDOM_HPP

#include <cstdint>
#include <random>

namespace aperiodic
{
    // Independent random-number domains derived from one master seed. Each domain
    // produces its own family of streams so that, e.g., drawing calibration
    // samples never shifts the evaluation realizations.
    enum class SeedDomain : std::uint64_t
    {
        evaluation = 0x6576616cULL,  // "eval"
        calibration = 0x63616c69ULL, // "cali"
        synthesis = 0x73796e74ULL,   // "synt"
    };

    // SplitMix64 finalizer (Steele, Lea, Flood 2014). Bijective on 64 bits.
    constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Seed of the stream owned by (domain, realization, ue):
    //
    //   s0 = splitmix64(master ^ splitmix64(domain))
    //   s1 = splitmix64(s0 ^ splitmix64(realization + 1))
    //   s2 = splitmix64(s1 ^ splitmix64(ue + 1))
    //
    // The result depends only on its arguments, never on scheduling or on how
    // many streams were drawn before, which makes each realization reproducible
    // in isolation.
    constexpr std::uint64_t derive_seed(std::uint64_t master, SeedDomain domain,
                                        std::uint64_t realization, std::uint64_t ue) noexcept
    {
        const std::uint64_t s0 = splitmix64(master ^ splitmix64(static_cast<std::uint64_t>(domain)));
        const std::uint64_t s1 = splitmix64(s0 ^ splitmix64(realization + 1));
        return splitmix64(s1 ^ splitmix64(ue + 1));
    }

    // Master seed for a nested experiment (e.g. the dense reference simulation
    // embedded in synthesis).
    constexpr std::uint64_t derive_master(std::uint64_t master, SeedDomain domain) noexcept
    {
        return splitmix64(master ^ splitmix64(static_cast<std::uint64_t>(domain) << 1));
    }

    // Deterministic stream of doubles. The uniform conversion is done by hand
    // (top 53 bits) because std::uniform_real_distribution is not specified
    // bit-exactly across standard libraries.
    class RandomStream
    {
    public:
        explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

        // U[0, 1)
        double canonical() noexcept
        {
            return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        }

        // U[lo, hi)
        double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * canonical(); }

        std::uint64_t bits() noexcept { return engine_(); }

    private:
        std::mt19937_64 engine_;
    };

} // namespace aperiodic

#endif
