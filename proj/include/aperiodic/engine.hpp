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
#ifndef APERIODIC_ENGINE_HPP
#define APERIODIC_ENGINE_HPP

#include "array.hpp"
#include "beamform.hpp"
#include "channel.hpp"
#include "errors.hpp"
#include "metrics.hpp"
#include "random.hpp"
#include "scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace aperiodic
{
    struct RunOptions
    {
        unsigned workers = 1;
        // Realizations per merge block. Part of the reproducibility contract:
        // reports are bitwise identical for any worker count, but not across
        // different block sizes.
        std::size_t block_size = 1024;
        std::size_t calibration_samples = 4096;
        double condition_limit = default_condition_limit;
        double max_reject_fraction = 1e-3;
        bool collect_sinr = true;
    };

    struct RealizationRecord
    {
        std::uint64_t index = 0;
        bool rejected = false;
        double condition = 0.0;
        double beta = 0.0;
        std::vector<double> sinr;             // K values
        std::vector<double> excitation_power; // M values, |sum_k sqrt(beta) W[m][k]|^2
    };

    // One Monte-Carlo realization. The random streams are derived from
    // (master_seed, index, ue) only, so the record does not depend on which
    // realizations were evaluated before it.
    inline RealizationRecord run_realization(const ScenarioConfig &scenario, const ArrayLayout &layout, double norm,
                                             std::uint64_t index, const RunOptions &opts = {})
    {
        if (layout.size() < scenario.K)
            throw InvalidArgument("run_realization: layout has fewer elements than users");

        RealizationRecord rec;
        rec.index = index;

        const Environment env(scenario.waves_per_ue);
        const auto sets = sample_realization_waves(env, scenario.K, scenario.master_seed, SeedDomain::evaluation, index);
        const ChannelMatrix H = assemble_channel(layout, sets, norm);

        detail::ZfSolution zf;
        try
        {
            zf = detail::zf_solve(H, opts.condition_limit);
        }
        catch (const SingularChannel &e)
        {
            rec.rejected = true;
            rec.condition = e.condition();
            return rec;
        }
        rec.condition = zf.condition;
        rec.beta = zf.precoder.beta;

        if (opts.collect_sinr)
        {
            const double snr = scenario.snr_linear();
            rec.sinr = scenario.link == Link::downlink ? downlink_sinr(H, zf.precoder, snr)
                                                       : uplink_sinr_from_gram_inverse(zf.gram_inverse, snr);
        }

        // The uplink decoder is the Hermitian transpose of the precoder, so the
        // element power statistics are the same for both links.
        const Eigen::VectorXcd excitation = std::sqrt(zf.precoder.beta) * zf.precoder.W.rowwise().sum();
        rec.excitation_power.resize(static_cast<std::size_t>(excitation.size()));
        for (Eigen::Index m = 0; m < excitation.size(); ++m)
            rec.excitation_power[static_cast<std::size_t>(m)] = std::norm(excitation(m));
        return rec;
    }

    struct SimulationReport
    {
        ScenarioConfig scenario;
        ArrayLayout layout;
        double normalization = 1.0;
        SinrCdf sinr_cdf;
        double sum_rate = 0.0;
        std::vector<double> per_user_rate;
        PowerProfile power_profile;
        PowerSpread power_spread;
        double power_taper_db = 0.0;
        std::uint64_t accepted_count = 0;
        std::uint64_t rejected_count = 0;
        bool valid = true; // rejected fraction within RunOptions::max_reject_fraction

        double rejected_fraction() const
        {
            const auto n = accepted_count + rejected_count;
            return n == 0 ? 0.0 : static_cast<double>(rejected_count) / static_cast<double>(n);
        }
    };

    namespace detail
    {
        struct BlockResult
        {
            StreamingMoments power;
            SumRateAccumulator rate;
            std::uint64_t rejected = 0;
        };

        // Runs fn(worker, block) for every block in [0, n_blocks) on the given number of threads.
        // Exceptions are rethrown on the calling thread.
        template <typename Fn>
        void parallel_blocks(std::size_t n_blocks, unsigned workers, Fn &&fn)
        {
            workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n_blocks, 1))));
            std::atomic<std::size_t> next{0};
            std::exception_ptr failure;
            std::mutex failure_mutex;

            auto work = [&](unsigned worker) {
                try
                {
                    for (std::size_t b = next++; b < n_blocks; b = next++)
                        fn(worker, b);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next = n_blocks;
                }
            };

            if (workers == 1)
            {
                work(0);
            }
            else
            {
                std::vector<std::jthread> pool;
                pool.reserve(workers);
                for (unsigned w = 0; w < workers; ++w)
                    pool.emplace_back(work, w);
            }
            if (failure)
                std::rethrow_exception(failure);
        }
    } // namespace detail

    // Calibrates the channel normalization, evaluates every realization and
    // reduces the partial accumulators in block-index order.
    inline SimulationReport run_simulation(const ScenarioConfig &scenario, const ArrayLayout &layout,
                                           const RunOptions &opts = {})
    {
        scenario.validate();
        if (layout.size() != scenario.M)
            throw InvalidArgument("run_simulation: layout has " + std::to_string(layout.size()) +
                                  " elements, scenario M=" + std::to_string(scenario.M));
        if (opts.block_size == 0)
            throw InvalidArgument("run_simulation: block_size must be > 0");

        SimulationReport report;
        report.scenario = scenario;
        report.layout = layout;
        report.normalization = calibrate_normalization(scenario, layout, opts.calibration_samples);

        const std::size_t N = scenario.realizations;
        const std::size_t n_blocks = (N + opts.block_size - 1) / opts.block_size;
        const unsigned workers = std::max(1u, opts.workers);

        std::vector<detail::BlockResult> blocks(n_blocks);
        // Histogram counts are integers, so per-worker histograms merge exactly
        // in any order.
        std::vector<SinrCdf> worker_cdf(workers);

        detail::parallel_blocks(n_blocks, workers, [&](unsigned worker, std::size_t b) {
            detail::BlockResult res{StreamingMoments(scenario.M), SumRateAccumulator(scenario.K), 0};
            const std::size_t begin = b * opts.block_size;
            const std::size_t end = std::min(N, begin + opts.block_size);
            for (std::size_t i = begin; i < end; ++i)
            {
                const auto rec = run_realization(scenario, layout, report.normalization, i, opts);
                if (rec.rejected)
                {
                    ++res.rejected;
                    continue;
                }
                res.power.push(rec.excitation_power);
                if (opts.collect_sinr)
                {
                    res.rate.push(rec.sinr);
                    for (double s : rec.sinr)
                        worker_cdf[worker].push_linear(s);
                }
            }
            blocks[b] = std::move(res);
        });

        StreamingMoments power(scenario.M);
        SumRateAccumulator rate(scenario.K);
        for (const auto &blk : blocks)
        {
            power.merge(blk.power);
            rate.merge(blk.rate);
            report.rejected_count += blk.rejected;
        }
        for (const auto &cdf : worker_cdf)
            report.sinr_cdf.merge(cdf);

        report.accepted_count = power.count();
        report.power_profile = PowerProfile::from_moments(power);
        if (report.accepted_count >= 2)
        {
            report.power_spread = power_spread(report.power_profile);
            report.power_taper_db = power_taper_db(report.power_profile);
        }
        if (opts.collect_sinr && rate.per_user().count() > 0)
        {
            report.sum_rate = rate.sum_rate();
            report.per_user_rate = rate.per_user().mean();
        }
        report.valid = report.rejected_fraction() <= opts.max_reject_fraction && report.accepted_count > 0;
        return report;
    }

} // namespace aperiodic

#endif
