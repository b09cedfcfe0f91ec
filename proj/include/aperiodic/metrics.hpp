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
#ifndef APERIODIC_METRICS_HPP
#define APERIODIC_METRICS_HPP

#include "beamform.hpp"
#include "errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace aperiodic
{
    // Running mean and sum of squared deviations per component (Welford), with
    // the pairwise combine of Chan, Golub and LeVeque for merging partial streams.
    class StreamingMoments
    {
    public:
        StreamingMoments() = default;
        explicit StreamingMoments(std::size_t dim) : mean_(dim, 0.0), m2_(dim, 0.0) {}

        std::size_t dim() const noexcept { return mean_.size(); }
        std::uint64_t count() const noexcept { return count_; }

        void push(std::span<const double> sample)
        {
            if (sample.size() != dim())
                throw InvalidArgument("StreamingMoments::push: sample has " + std::to_string(sample.size()) +
                                      " components, accumulator has " + std::to_string(dim()));
            ++count_;
            const double n = static_cast<double>(count_);
            for (std::size_t i = 0; i < mean_.size(); ++i)
            {
                const double delta = sample[i] - mean_[i];
                mean_[i] += delta / n;
                m2_[i] += delta * (sample[i] - mean_[i]);
            }
        }

        void merge(const StreamingMoments &other)
        {
            if (other.count_ == 0)
                return;
            if (count_ == 0)
            {
                *this = other;
                return;
            }
            if (other.dim() != dim())
                throw InvalidArgument("StreamingMoments::merge: dimension mismatch");
            const double na = static_cast<double>(count_);
            const double nb = static_cast<double>(other.count_);
            const double n = na + nb;
            for (std::size_t i = 0; i < mean_.size(); ++i)
            {
                const double delta = other.mean_[i] - mean_[i];
                mean_[i] += delta * (nb / n);
                m2_[i] += other.m2_[i] + delta * delta * (na * nb / n);
            }
            count_ += other.count_;
        }

        const std::vector<double> &mean() const noexcept { return mean_; }

        // Unbiased (n - 1) estimator; all zeros while count < 2.
        std::vector<double> variance() const
        {
            std::vector<double> v(dim(), 0.0);
            if (count_ < 2)
                return v;
            const double d = static_cast<double>(count_ - 1);
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = std::max(0.0, m2_[i] / d);
            return v;
        }

        bool variance_defined() const noexcept { return count_ >= 2; }

    private:
        std::uint64_t count_ = 0;
        std::vector<double> mean_;
        std::vector<double> m2_;
    };

    // Per-element statistics of the amplifier output power.
    struct PowerProfile
    {
        std::vector<double> mu;
        std::vector<double> sigma2;
        std::uint64_t count = 0;

        static PowerProfile from_moments(const StreamingMoments &m)
        {
            return PowerProfile{m.mean(), m.variance(), m.count()};
        }
    };

    // Pushes s_m = |sum_k E[m][k]|^2, the per-element power when all users are
    // served simultaneously with excitation matrix E (M x K).
    inline void accumulate_excitation(StreamingMoments &acc, const Eigen::MatrixXcd &excitation)
    {
        if (static_cast<std::size_t>(excitation.rows()) != acc.dim())
            throw InvalidArgument("accumulate_excitation: precoder has " + std::to_string(excitation.rows()) +
                                  " rows, accumulator expects " + std::to_string(acc.dim()));
        const Eigen::VectorXcd row_sum = excitation.rowwise().sum();
        std::vector<double> s(static_cast<std::size_t>(row_sum.size()));
        for (Eigen::Index m = 0; m < row_sum.size(); ++m)
            s[static_cast<std::size_t>(m)] = std::norm(row_sum(m));
        acc.push(s);
    }

    inline void accumulate_excitation(StreamingMoments &acc, const Precoder &P)
    {
        accumulate_excitation(acc, P.W);
    }

    struct PowerSpread
    {
        double db = 0.0;
        bool unbounded = false; // min(mu - sigma2) <= 0, db is +inf
    };

    // PS = max(mu + sigma2) / min(mu - sigma2), in dB.
    inline PowerSpread power_spread(const PowerProfile &profile)
    {
        if (profile.mu.empty() || profile.count == 0)
            throw InvalidState("power_spread: empty power profile");
        if (profile.count < 2)
            throw InvalidState("power_spread: at least 2 samples are required");
        if (profile.sigma2.size() != profile.mu.size())
            throw InvalidState("power_spread: mu/sigma2 length mismatch");

        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < profile.mu.size(); ++m)
        {
            hi = std::max(hi, profile.mu[m] + profile.sigma2[m]);
            lo = std::min(lo, profile.mu[m] - profile.sigma2[m]);
        }
        if (!(lo > 0.0))
            return {std::numeric_limits<double>::infinity(), true};
        return {10.0 * std::log10(hi / lo), false};
    }

    // Max over min of the average element power, in dB.
    inline double power_taper_db(const PowerProfile &profile)
    {
        if (profile.mu.empty())
            throw InvalidState("power_taper_db: empty power profile");
        const auto [lo, hi] = std::minmax_element(profile.mu.begin(), profile.mu.end());
        return 10.0 * std::log10(*hi / *lo);
    }

    // Per-user accumulator of log2(1 + SINR_k).
    class SumRateAccumulator
    {
    public:
        SumRateAccumulator() = default;
        explicit SumRateAccumulator(std::size_t users) : rates_(users), scratch_(users) {}

        void push(std::span<const double> sinr)
        {
            if (sinr.size() != rates_.dim())
                throw InvalidArgument("SumRateAccumulator::push: wrong number of users");
            for (std::size_t k = 0; k < sinr.size(); ++k)
                scratch_[k] = std::log2(1.0 + sinr[k]);
            rates_.push(scratch_);
        }

        void merge(const SumRateAccumulator &other)
        {
            rates_.merge(other.rates_);
            if (scratch_.size() < rates_.dim())
                scratch_.resize(rates_.dim());
        }

        const StreamingMoments &per_user() const noexcept { return rates_; }

        // SR = sum_k E[log2(1 + SINR_k)]
        double sum_rate() const
        {
            if (rates_.count() == 0)
                throw InvalidState("sum_rate: no samples");
            double sr = 0.0;
            for (double r : rates_.mean())
                sr += r;
            return sr;
        }

    private:
        StreamingMoments rates_;
        std::vector<double> scratch_;
    };

    // Ergodic sum rate of a sequence of per-realization SINR vectors.
    inline double sum_rate(std::span<const std::vector<double>> sinr_samples)
    {
        if (sinr_samples.empty())
            throw InvalidState("sum_rate: no samples");
        SumRateAccumulator acc(sinr_samples.front().size());
        for (const auto &s : sinr_samples)
            acc.push(s);
        return acc.sum_rate();
    }

    // Fixed-bin histogram of SINR in dB. Samples outside [lo, hi) are clamped
    // into the edge bins and counted as under/overflow.
    class SinrCdf
    {
    public:
        static constexpr double default_lo_db = -100.0;
        static constexpr double default_hi_db = 60.0;
        static constexpr double default_bin_db = 0.01;

        SinrCdf() : SinrCdf(default_lo_db, default_hi_db, default_bin_db) {}

        SinrCdf(double lo_db, double hi_db, double bin_db) : lo_(lo_db), bin_(bin_db)
        {
            if (!(hi_db > lo_db) || !(bin_db > 0.0))
                throw InvalidArgument("SinrCdf: need hi > lo and bin width > 0");
            counts_.assign(static_cast<std::size_t>(std::llround((hi_db - lo_db) / bin_db)), 0);
        }

        void push_db(double sinr_db)
        {
            if (std::isnan(sinr_db))
                throw InvalidArgument("SinrCdf: NaN sample");
            const double pos = std::floor((sinr_db - lo_) / bin_);
            std::size_t idx;
            if (pos < 0.0)
            {
                idx = 0;
                ++underflow_;
            }
            else if (pos >= static_cast<double>(counts_.size()))
            {
                idx = counts_.size() - 1;
                ++overflow_;
            }
            else
            {
                idx = static_cast<std::size_t>(pos);
            }
            ++counts_[idx];
            ++total_;
        }

        void push_linear(double sinr) { push_db(10.0 * std::log10(sinr)); }

        void merge(const SinrCdf &other)
        {
            if (other.counts_.size() != counts_.size() || other.lo_ != lo_ || other.bin_ != bin_)
                throw InvalidArgument("SinrCdf::merge: binning mismatch");
            for (std::size_t i = 0; i < counts_.size(); ++i)
                counts_[i] += other.counts_[i];
            total_ += other.total_;
            underflow_ += other.underflow_;
            overflow_ += other.overflow_;
        }

        std::uint64_t count() const noexcept { return total_; }
        std::uint64_t underflow() const noexcept { return underflow_; }
        std::uint64_t overflow() const noexcept { return overflow_; }
        std::size_t bins() const noexcept { return counts_.size(); }
        double bin_width() const noexcept { return bin_; }
        double lo() const noexcept { return lo_; }
        double hi() const noexcept { return lo_ + bin_ * static_cast<double>(counts_.size()); }
        double bin_center(std::size_t i) const noexcept { return lo_ + (static_cast<double>(i) + 0.5) * bin_; }
        std::span<const std::uint64_t> counts() const noexcept { return counts_; }

        // Smallest bin center whose cumulative mass reaches p.
        double percentile(double p) const
        {
            if (total_ == 0)
                throw InvalidState("percentile: empty CDF");
            if (!(p > 0.0 && p < 1.0))
                throw InvalidArgument("percentile: p must be in (0, 1)");
            const double target = p * static_cast<double>(total_);
            std::uint64_t cum = 0;
            for (std::size_t i = 0; i < counts_.size(); ++i)
            {
                cum += counts_[i];
                if (static_cast<double>(cum) >= target)
                    return bin_center(i);
            }
            return bin_center(counts_.size() - 1);
        }

        struct Interval
        {
            double lo;
            double hi;
        };

        // Distribution-free interval for the p-quantile from the normal
        // approximation of the binomial order-statistic rank.
        Interval percentile_interval(double p, double z = 1.959964) const
        {
            const double n = static_cast<double>(count());
            const double half = z * std::sqrt(p * (1.0 - p) / n);
            const double eps = 1.0 / (n + 1.0);
            return {percentile(std::clamp(p - half, eps, 1.0 - eps)), percentile(std::clamp(p + half, eps, 1.0 - eps))};
        }

    private:
        double lo_;
        double bin_;
        std::vector<std::uint64_t> counts_;
        std::uint64_t total_ = 0;
        std::uint64_t underflow_ = 0;
        std::uint64_t overflow_ = 0;
    };

    inline constexpr double sinrg_percentile = 0.05;
    inline constexpr std::uint64_t min_sinrg_samples = 1000;

    // 5th-percentile SINR (dB) of the aperiodic array minus that of the regular one.
    inline double sinr_gain(const SinrCdf &aperiodic, const SinrCdf &regular)
    {
        if (aperiodic.count() < min_sinrg_samples || regular.count() < min_sinrg_samples)
            throw InvalidState("sinr_gain: at least 1000 samples per CDF are required");
        return aperiodic.percentile(sinrg_percentile) - regular.percentile(sinrg_percentile);
    }

    // PSC = PS_regular - PS_aperiodic in dB; nullopt if either spread is unbounded.
    inline std::optional<double> psc(double ps_regular_db, double ps_aperiodic_db)
    {
        if (!std::isfinite(ps_regular_db) || !std::isfinite(ps_aperiodic_db))
            return std::nullopt;
        return ps_regular_db - ps_aperiodic_db;
    }

} // namespace aperiodic

#endif
