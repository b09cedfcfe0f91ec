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

#ifndef APERIODIC_SYNTHESIS_HPP
#define APERIODIC_SYNTHESIS_HPP

#include "array.hpp"
#include "engine.hpp"
#include "errors.hpp"
#include "metrics.hpp"
#include "scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace aperiodic
{
    // Piecewise-linear density mu(x) sampled at ascending knots. Repeated knots
    // are allowed and describe a jump (a zero-width segment carries no mass).
    class DensityProfile
    {
    public:
        DensityProfile(std::vector<double> positions, std::vector<double> values)
            : positions_(std::move(positions)), values_(std::move(values))
        {
            if (positions_.size() != values_.size())
                throw InvalidArgument("DensityProfile: positions and values differ in length");
            if (positions_.size() < 2)
                throw InvalidArgument("DensityProfile: at least two knots are required");
            for (std::size_t j = 0; j < positions_.size(); ++j)
            {
                if (!std::isfinite(positions_[j]) || !std::isfinite(values_[j]))
                    throw InvalidArgument("DensityProfile: non-finite knot " + std::to_string(j));
                if (values_[j] < 0.0)
                    throw InvalidArgument("DensityProfile: negative density at knot " + std::to_string(j));
                if (j > 0 && positions_[j] < positions_[j - 1])
                    throw InvalidArgument("DensityProfile: positions must be ascending");
            }
            if (!(positions_.back() > positions_.front()))
                throw InvalidArgument("DensityProfile: zero-length support");
        }

        std::span<const double> positions() const noexcept { return positions_; }
        std::span<const double> values() const noexcept { return values_; }
        double x_min() const noexcept { return positions_.front(); }
        double x_max() const noexcept { return positions_.back(); }

        DensityProfile scaled(double c) const
        {
            auto v = values_;
            for (auto &x : v)
                x *= c;
            return DensityProfile(positions_, std::move(v));
        }

    private:
        std::vector<double> positions_;
        std::vector<double> values_;
    };

    // Exact integral i(x) of a piecewise-linear density: quadratic on each segment.
    class CumulativeDistribution
    {
    public:
        explicit CumulativeDistribution(DensityProfile profile) : profile_(std::move(profile))
        {
            const auto x = profile_.positions();
            const auto mu = profile_.values();
            knots_.assign(x.size(), 0.0);
            for (std::size_t j = 1; j < x.size(); ++j)
                knots_[j] = knots_[j - 1] + 0.5 * (mu[j - 1] + mu[j]) * (x[j] - x[j - 1]);
            if (!(knots_.back() > 0.0))
                throw DegenerateProfile("cumulative_density: density integrates to zero");
        }

        const DensityProfile &profile() const noexcept { return profile_; }
        double total() const noexcept { return knots_.back(); }
        std::span<const double> knot_values() const noexcept { return knots_; }
        double step(std::size_t M) const { return total() / static_cast<double>(M - 1); }

        // i(x); clamps outside the support.
        double operator()(double xq) const
        {
            const auto x = profile_.positions();
            const auto mu = profile_.values();
            if (xq <= x.front())
                return 0.0;
            if (xq >= x.back())
                return total();
            const std::size_t j = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), xq) - x.begin()) - 1;
            const double h = x[j + 1] - x[j];
            const double t = xq - x[j];
            const double slope = (mu[j + 1] - mu[j]) / h;
            return knots_[j] + mu[j] * t + 0.5 * slope * t * t;
        }

        // Smallest x with i(x) = target.
        double inverse(double target) const
        {
            const double I = total();
            if (!(target >= 0.0 && target <= I))
                throw InvalidArgument("invert_cumulative: target " + std::to_string(target) + " outside [0, " +
                                      std::to_string(I) + "]");
            const auto x = profile_.positions();
            const auto mu = profile_.values();
            if (target == 0.0)
                return x.front();

            // First segment whose right-end cumulative reaches the target.
            const auto it = std::lower_bound(knots_.begin() + 1, knots_.end(), target);
            const std::size_t j = static_cast<std::size_t>(it - knots_.begin()) - 1;
            const double h = x[j + 1] - x[j];
            const double r = target - knots_[j];
            if (h <= 0.0 || r <= 0.0)
                return x[j];

            // Solve (d / 2h) t^2 + mu_j t = r in the cancellation-free form.
            const double d = mu[j + 1] - mu[j];
            const double disc = std::max(0.0, mu[j] * mu[j] + 2.0 * d * r / h);
            const double denom = mu[j] + std::sqrt(disc);
            const double t = denom > 0.0 ? 2.0 * r / denom : 0.0;
            return x[j] + std::clamp(t, 0.0, h);
        }

    private:
        DensityProfile profile_;
        std::vector<double> knots_;
    };

    inline CumulativeDistribution cumulative_density(const DensityProfile &profile)
    {
        return CumulativeDistribution(profile);
    }

    inline double invert_cumulative(const CumulativeDistribution &cum, double target)
    {
        return cum.inverse(target);
    }

    inline constexpr double default_min_separation = 0.05; // wavelengths

    struct TaperResult
    {
        ArrayLayout layout;
        std::size_t separations_enforced = 0; // elements moved to respect the minimum spacing
    };

    namespace detail
    {
        // Spreads runs of elements closer than min_sep to exactly min_sep about
        // their centroid, with both endpoints pinned (pool-adjacent merging).
        // Returns the number of elements moved.
        inline std::size_t enforce_min_separation(std::vector<double> &x, double min_sep)
        {
            const std::size_t M = x.size();
            if (M < 2)
                return 0;
            const double lo = x.front();
            const double hi = x.back();
            if (static_cast<double>(M - 1) * min_sep > hi - lo)
                throw InvalidArgument("density_taper: aperture too small for the minimum element separation");

            struct Run
            {
                std::size_t first;
                std::size_t count;
                double sum;
                std::size_t last() const { return first + count - 1; }
            };
            struct Placement
            {
                double start;
                double spacing;
            };
            auto place = [&](const Run &r) -> Placement {
                if (r.first == 0 && r.last() == M - 1)
                    return {lo, (hi - lo) / static_cast<double>(M - 1)};
                const double len = static_cast<double>(r.count - 1) * min_sep;
                double s = r.sum / static_cast<double>(r.count) - 0.5 * len;
                if (r.first == 0)
                    s = lo;
                else if (r.last() == M - 1)
                    s = hi - len;
                return {std::clamp(s, lo, hi - len), min_sep};
            };

            const double tol = 1e-12 * std::max(1.0, hi - lo);
            std::vector<Run> runs;
            for (std::size_t m = 0; m < M; ++m)
            {
                runs.push_back({m, 1, x[m]});
                while (runs.size() >= 2)
                {
                    const Run &a = runs[runs.size() - 2];
                    const Run &b = runs.back();
                    const Placement pa = place(a);
                    const double a_end = pa.start + static_cast<double>(a.count - 1) * pa.spacing;
                    if (place(b).start - a_end >= min_sep - tol)
                        break;
                    const Run merged{a.first, a.count + b.count, a.sum + b.sum};
                    runs.pop_back();
                    runs.back() = merged;
                }
            }

            std::size_t moved = 0;
            for (const auto &r : runs)
            {
                if (r.count == 1)
                    continue;
                const Placement p = place(r);
                for (std::size_t i = 0; i < r.count; ++i)
                {
                    const double v = p.start + static_cast<double>(i) * p.spacing;
                    if (v != x[r.first + i])
                        ++moved;
                    x[r.first + i] = v;
                }
            }
            x.front() = lo;
            x.back() = hi;
            return moved;
        }
    } // namespace detail

    // x_m = i^{-1}(m dI), m = 0..M-1, dI = I / (M - 1). Elements closer than
    // min_separation (only possible around near-zero density) are spread apart.
    inline TaperResult density_taper_detailed(const DensityProfile &profile, std::size_t M,
                                              double min_separation = default_min_separation)
    {
        if (M < 2)
            throw InvalidArgument("density_taper: M must be >= 2");
        const CumulativeDistribution cum(profile);
        const double step = cum.step(M);

        const auto v = profile.values();
        const bool uniform = std::all_of(v.begin(), v.end(), [&](double y) { return y == v.front(); });

        std::vector<double> x(M);
        if (uniform)
        {
            // constant density: the inverse is linear, so build the grid the way
            // regular_layout does and keep the result bit-identical to it
            const double length = profile.x_max() - profile.x_min();
            for (std::size_t m = 0; m < M; ++m)
                x[m] = profile.x_min() + static_cast<double>(m) * length / static_cast<double>(M - 1);
        }
        else
        {
            for (std::size_t m = 0; m < M; ++m)
                x[m] = cum.inverse(std::min(cum.total(), static_cast<double>(m) * step));
        }
        x.front() = profile.x_min();
        x.back() = profile.x_max();

        bool close = false;
        for (std::size_t m = 1; m < M; ++m)
            close = close || x[m] - x[m - 1] < min_separation;

        TaperResult res;
        if (close)
            res.separations_enforced = detail::enforce_min_separation(x, min_separation);
        const double origin = x.front();
        for (auto &v : x)
            v -= origin;
        res.layout = ArrayLayout(std::move(x));
        return res;
    }

    inline ArrayLayout density_taper(const DensityProfile &profile, std::size_t M,
                                     double min_separation = default_min_separation)
    {
        return density_taper_detailed(profile, M, min_separation).layout;
    }

    struct SynthesisOptions
    {
        double oversampling = 8.0; // dense reference elements per wavelength
        std::size_t realizations = 100000;
        double min_separation = default_min_separation;
        RunOptions run;
    };

    inline constexpr std::size_t min_synthesis_realizations = 10000;

    struct SynthesisResult
    {
        ArrayLayout layout;
        ArrayLayout dense_layout;
        PowerProfile dense_power;
        std::uint64_t dense_rejected = 0;
        std::size_t separations_enforced = 0;
        bool low_realizations = false; // fewer than min_synthesis_realizations
    };

    inline ArrayLayout dense_reference_layout(double aperture, double oversampling)
    {
        if (!(oversampling >= 2.0))
            throw InvalidArgument("synthesize_aperiodic: oversampling must be >= 2 elements per wavelength");
        const auto n = static_cast<std::size_t>(std::llround(aperture * oversampling)) + 1;
        return regular_layout(std::max<std::size_t>(n, 2), aperture);
    }

    // Two-step synthesis: simulate a dense regular array in the scenario's
    // environment, then place M elements by density-tapering its average
    // element power. The dense run uses seeds disjoint from evaluation.
    inline SynthesisResult synthesize_aperiodic(const ScenarioConfig &scenario, const SynthesisOptions &opts = {})
    {
        scenario.validate();
        SynthesisResult out;
        out.dense_layout = dense_reference_layout(scenario.aperture_lambda(), opts.oversampling);

        ScenarioConfig dense = scenario;
        dense.M = out.dense_layout.size();
        dense.aperture = scenario.aperture_lambda();
        dense.realizations = opts.realizations;
        dense.master_seed = derive_master(scenario.master_seed, SeedDomain::synthesis);

        RunOptions run = opts.run;
        run.collect_sinr = false;
        const SimulationReport rep = run_simulation(dense, out.dense_layout, run);
        if (!rep.valid)
            throw InvalidState("synthesize_aperiodic: dense reference rejected " + std::to_string(rep.rejected_count) +
                               " realizations");

        out.dense_power = rep.power_profile;
        out.dense_rejected = rep.rejected_count;
        out.low_realizations = opts.realizations < min_synthesis_realizations;

        const auto xs = out.dense_layout.positions();
        const DensityProfile profile(std::vector<double>(xs.begin(), xs.end()), rep.power_profile.mu);
        auto taper = density_taper_detailed(profile, scenario.M, opts.min_separation);
        out.layout = std::move(taper.layout);
        out.separations_enforced = taper.separations_enforced;
        return out;
    }

} // namespace aperiodic

#endif
