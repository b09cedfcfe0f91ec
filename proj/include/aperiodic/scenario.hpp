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
#ifndef APERIODIC_SCENARIO_HPP
#define APERIODIC_SCENARIO_HPP

#include "errors.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace aperiodic
{
    enum class Link
    {
        downlink,
        uplink,
    };

    inline std::string to_string(Link link) { return link == Link::downlink ? "downlink" : "uplink"; }

    inline constexpr int max_waves_per_ue = 20;

    // One M x K MU-MIMO evaluation setup.
    struct ScenarioConfig
    {
        std::size_t M = 8;
        std::size_t K = 2;
        std::optional<double> aperture; // wavelengths; (M - 1) when unset
        int waves_per_ue = 1;
        double snr_db = 0.0;
        std::size_t realizations = 100000;
        std::uint64_t master_seed = 1;
        Link link = Link::downlink;

        double aperture_lambda() const { return aperture.value_or(static_cast<double>(M) - 1.0); }
        double snr_linear() const { return std::pow(10.0, snr_db / 10.0); }

        // Throws InvalidArgument naming the violated constraint.
        void validate() const
        {
            if (K < 1)
                throw InvalidArgument("K must be >= 1");
            if (M < K)
                throw InvalidArgument("K > M violates M >= K (M=" + std::to_string(M) + ", K=" + std::to_string(K) + ")");
            if (M < 2)
                throw InvalidArgument("M must be >= 2");
            if (waves_per_ue < 1 || waves_per_ue > max_waves_per_ue)
                throw InvalidArgument("waves_per_ue=" + std::to_string(waves_per_ue) + " is out of [1, 20]");
            if (realizations < 1)
                throw InvalidArgument("realizations must be >= 1");
            if (!std::isfinite(snr_db))
                throw InvalidArgument("snr_db must be finite");
            if (aperture && !(*aperture > 0.0 && std::isfinite(*aperture)))
                throw InvalidArgument("aperture must be > 0");
        }
    };

} // namespace aperiodic

#endif
