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
#ifndef APERIODIC_CHANNEL_HPP
#define APERIODIC_CHANNEL_HPP

#include "array.hpp"
#include "errors.hpp"
#include "random.hpp"
#include "scenario.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace aperiodic
{
    using cplx = std::complex<double>;

    inline constexpr double sector_half_width = std::numbers::pi / 3.0; // 120 deg sector

    struct PlaneWave
    {
        double aoa = 0.0;       // rad from broadside, [-pi/3, pi/3]
        double amplitude = 0.0; // [0, 1]
        double phase = 0.0;     // [0, 2 pi)
        double pol_angle = 0.0; // [0, pi)
    };

    struct WaveSet
    {
        std::vector<PlaneWave> waves;
    };

    enum class EnvironmentKind
    {
        rlos,
        intermediate,
        rimp,
    };

    // Number of random plane waves seen by every UE. 1 is random line-of-sight,
    // 10..20 is rich isotropic multipath.
    class Environment
    {
    public:
        explicit Environment(int waves_per_ue) : waves_per_ue_(waves_per_ue)
        {
            if (waves_per_ue < 1 || waves_per_ue > max_waves_per_ue)
                throw InvalidArgument("Environment: waves_per_ue must be in [1, 20], got " + std::to_string(waves_per_ue));
        }

        int waves_per_ue() const noexcept { return waves_per_ue_; }

        EnvironmentKind kind() const noexcept
        {
            if (waves_per_ue_ == 1)
                return EnvironmentKind::rlos;
            return waves_per_ue_ >= 10 ? EnvironmentKind::rimp : EnvironmentKind::intermediate;
        }

        std::string label() const
        {
            switch (kind())
            {
            case EnvironmentKind::rlos:
                return "RLOS";
            case EnvironmentKind::rimp:
                return "RIMP";
            default:
                return "intermediate(" + std::to_string(waves_per_ue_) + ")";
            }
        }

    private:
        int waves_per_ue_;
    };

    // K x M downlink channel (rows: UEs, columns: BS elements).
    struct ChannelMatrix
    {
        Eigen::MatrixXcd entries;

        std::size_t users() const noexcept { return static_cast<std::size_t>(entries.rows()); }
        std::size_t elements() const noexcept { return static_cast<std::size_t>(entries.cols()); }
    };

    inline WaveSet sample_waves(const Environment &env, RandomStream &rng)
    {
        WaveSet set;
        set.waves.resize(static_cast<std::size_t>(env.waves_per_ue()));
        for (auto &w : set.waves)
        {
            w.aoa = rng.uniform(-sector_half_width, sector_half_width);
            w.amplitude = rng.canonical();
            w.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
            w.pol_angle = rng.uniform(0.0, std::numbers::pi);
        }
        return set;
    }

    // h[k][m] = (1/norm) sum_l a_l e^{j phi_l} cos(psi_l) g(theta_l) e^{j 2 pi x_m sin(theta_l)}
    inline ChannelMatrix assemble_channel(const ArrayLayout &layout, std::span<const WaveSet> wavesets, double norm = 1.0)
    {
        if (wavesets.empty())
            throw InvalidArgument("assemble_channel: at least one UE is required");
        if (layout.size() == 0)
            throw InvalidArgument("assemble_channel: empty layout");
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw InvalidArgument("assemble_channel: norm must be > 0");

        const auto K = static_cast<Eigen::Index>(wavesets.size());
        const auto M = static_cast<Eigen::Index>(layout.size());
        const auto x = layout.positions();
        const double scale = 1.0 / norm;

        ChannelMatrix H{Eigen::MatrixXcd::Zero(K, M)};
        for (Eigen::Index k = 0; k < K; ++k)
        {
            for (const auto &w : wavesets[static_cast<std::size_t>(k)].waves)
            {
                const cplx coef = std::polar(scale * w.amplitude * std::cos(w.pol_angle) * huygens_gain(w.aoa), w.phase);
                const double k_x = 2.0 * std::numbers::pi * std::sin(w.aoa);
                for (Eigen::Index m = 0; m < M; ++m)
                    H.entries(k, m) += coef * std::polar(1.0, k_x * x[static_cast<std::size_t>(m)]);
            }
        }
        return H;
    }

    // Draws the K wave sets of one realization; UE k uses the stream derived
    // from (domain, realization, k).
    inline std::vector<WaveSet> sample_realization_waves(const Environment &env, std::size_t K, std::uint64_t master_seed,
                                                         SeedDomain domain, std::uint64_t realization)
    {
        std::vector<WaveSet> sets;
        sets.reserve(K);
        for (std::size_t k = 0; k < K; ++k)
        {
            RandomStream rng(derive_seed(master_seed, domain, realization, k));
            sets.push_back(sample_waves(env, rng));
        }
        return sets;
    }

    inline constexpr std::size_t min_calibration_samples = 1000;

    // c = sqrt(mean ||H0||_F^2 / (K M)) over n_cal raw channels produced by
    // raw_channel(index). Dividing later channels by c makes the ensemble-average
    // per-element channel power 1.
    template <typename RawChannelFn>
    double calibrate_normalization(std::size_t n_cal, RawChannelFn &&raw_channel)
    {
        if (n_cal < min_calibration_samples)
            throw InvalidArgument("calibrate_normalization: n_cal must be >= 1000");
        double acc = 0.0;
        for (std::size_t i = 0; i < n_cal; ++i)
        {
            const ChannelMatrix H0 = raw_channel(i);
            acc += H0.entries.squaredNorm() / static_cast<double>(H0.entries.size());
        }
        const double c = std::sqrt(acc / static_cast<double>(n_cal));
        if (!(c > 0.0) || !std::isfinite(c))
            throw InvalidState("calibrate_normalization: channel ensemble has zero power");
        return c;
    }

    // Scenario form: raw channels come from the calibration seed domain.
    inline double calibrate_normalization(const ScenarioConfig &scenario, const ArrayLayout &layout, std::size_t n_cal)
    {
        const Environment env(scenario.waves_per_ue);
        return calibrate_normalization(n_cal, [&](std::size_t i) {
            const auto sets = sample_realization_waves(env, scenario.K, scenario.master_seed, SeedDomain::calibration, i);
            return assemble_channel(layout, sets, 1.0);
        });
    }

} // namespace aperiodic

#endif
