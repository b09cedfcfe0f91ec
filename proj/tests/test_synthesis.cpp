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

#include <catch2/catch_amalgamated.hpp>

#include "aperiodic/synthesis.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace aperiodic;
using Catch::Approx;

namespace
{
    DensityProfile linear_ramp(std::size_t n)
    {
        std::vector<double> x(n), v(n);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = v[i] = double(i) / double(n - 1);
        return DensityProfile(x, v);
    }

    DensityProfile random_profile(std::mt19937_64 &gen, double aperture, std::size_t knots)
    {
        std::uniform_real_distribution<double> u(0.05, 3.0);
        std::vector<double> x(knots), v(knots);
        for (std::size_t i = 0; i < knots; ++i)
        {
            x[i] = aperture * double(i) / double(knots - 1);
            v[i] = u(gen);
        }
        return DensityProfile(x, v);
    }
} // namespace

TEST_CASE("cumulative_density closed forms", "[synthesis]")
{
    const DensityProfile flat({0.0, 7.0}, {1.0, 1.0});
    const auto c = cumulative_density(flat);
    CHECK(c.total() == 7.0);
    for (double x = 0.0; x <= 7.0; x += 0.25)
        CHECK(c(x) == Approx(x).margin(1e-15));

    CHECK(cumulative_density(linear_ramp(1001)).total() == Approx(0.5).margin(1e-9));
    CHECK(cumulative_density(flat)(0.0) == 0.0);

    CHECK_THROWS_AS(cumulative_density(DensityProfile({0.0, 1.0, 2.0}, {0.0, 0.0, 0.0})), DegenerateProfile);
    CHECK_THROWS_AS(DensityProfile({0.0, 1.0}, {1.0, -1.0}), InvalidArgument);
    CHECK_THROWS_AS(DensityProfile({0.0, 1.0, 0.5}, {1.0, 1.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(DensityProfile({0.0}, {1.0}), InvalidArgument);
}

TEST_CASE("cumulative_density matches fine-grid quadrature", "[synthesis][oracle]")
{
    std::mt19937_64 gen(12);
    for (int t = 0; t < 10; ++t)
    {
        const auto p = random_profile(gen, 7.0 + t, 17 + t);
        const auto c = cumulative_density(p);
        const std::vector<double> xs(p.positions().begin(), p.positions().end());
        const std::vector<double> ys(p.values().begin(), p.values().end());
        const auto d = oracle::dense_cumulative(xs, ys, 1000001);
        REQUIRE(c.total() == Approx(d.cum.back()).epsilon(1e-8));
        for (std::size_t i = 0; i < d.grid.size(); i += 99991)
            REQUIRE(c(d.grid[i]) == Approx(d.cum[i]).epsilon(1e-8).margin(1e-12));
    }
}

TEST_CASE("invert_cumulative", "[synthesis]")
{
    const auto flat = cumulative_density(DensityProfile({0.0, 7.0}, {1.0, 1.0}));
    CHECK(invert_cumulative(flat, 3.5) == Approx(3.5).margin(1e-14));

    const auto ramp = cumulative_density(DensityProfile({0.0, 1.0}, {0.0, 1.0}));
    CHECK(ramp.total() == 0.5);
    CHECK(invert_cumulative(ramp, 0.25) == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    // mu = 1 on [0,1], 0 on [1,2], 1 on [2,3]: jumps are repeated knots.
    const auto plateau = cumulative_density(DensityProfile({0.0, 1.0, 1.0, 2.0, 2.0, 3.0}, {1.0, 1.0, 0.0, 0.0, 1.0, 1.0}));
    CHECK(plateau.total() == Approx(2.0));
    CHECK(invert_cumulative(plateau, 1.0) == 1.0);
    CHECK(invert_cumulative(plateau, 1.5) == Approx(2.5));
    CHECK(invert_cumulative(plateau, 0.0) == 0.0);
    CHECK(invert_cumulative(plateau, plateau.total()) == Approx(3.0));

    CHECK_THROWS_AS(invert_cumulative(flat, -0.1), InvalidArgument);
    CHECK_THROWS_AS(invert_cumulative(flat, 7.1), InvalidArgument);
}

TEST_CASE("invert_cumulative round-trips to 1e-10 I", "[synthesis][property]")
{
    std::mt19937_64 gen(21);
    for (int t = 0; t < 50; ++t)
    {
        auto p = random_profile(gen, 15.0, 30);
        // zero out a few knots to create near-flat stretches
        std::vector<double> v(p.values().begin(), p.values().end());
        for (int z = 0; z < 3; ++z)
            v[gen() % v.size()] = 0.0;
        const DensityProfile q(std::vector<double>(p.positions().begin(), p.positions().end()), v);
        const auto c = cumulative_density(q);
        std::uniform_real_distribution<double> u(0.0, c.total());
        for (int i = 0; i < 200; ++i)
        {
            const double target = u(gen);
            const double x = invert_cumulative(c, target);
            REQUIRE(std::abs(c(x) - target) <= 1e-10 * c.total());
            // leftmost: nothing just left of x reaches the target
            if (x > 1e-6)
                REQUIRE(c(x - 1e-6) < target);
        }
    }
}

TEST_CASE("density_taper closed forms", "[synthesis]")
{
    const auto uniform = density_taper(DensityProfile({0.0, 3.5, 7.0}, {2.0, 2.0, 2.0}), 8);
    for (std::size_t m = 0; m < 8; ++m)
        CHECK(uniform[m] == Approx(double(m)).margin(1e-14));
    CHECK(uniform == regular_layout(8, 7.0));

    const auto ramp = density_taper(DensityProfile({0.0, 1.0}, {0.0, 1.0}), 3, 0.0);
    CHECK(ramp[0] == 0.0);
    CHECK(ramp[1] == Approx(0.70711).margin(1e-5));
    CHECK(ramp[2] == 1.0);

    CHECK_THROWS_AS(density_taper(DensityProfile({0.0, 1.0}, {1.0, 1.0}), 1), InvalidArgument);
    CHECK_THROWS_AS(density_taper(DensityProfile({0.0, 1.0}, {0.0, 0.0}), 4), DegenerateProfile);
}

TEST_CASE("density_taper matches a dense-scan inversion", "[synthesis][oracle]")
{
    // sampled triangular profile, peak at the centre
    std::vector<double> x(61), v(61);
    for (std::size_t i = 0; i < 61; ++i)
    {
        x[i] = 15.0 * double(i) / 60.0;
        v[i] = 1.0 - std::abs(x[i] - 7.5) / 7.5 + 0.1;
    }
    const auto layout = density_taper(DensityProfile(x, v), 16);
    const auto d = oracle::dense_cumulative(x, v, 1000000);
    const double step = d.cum.back() / 15.0;
    for (std::size_t m = 0; m < 16; ++m)
        CHECK(layout[m] == Approx(oracle::scan_inverse(d, double(m) * step)).margin(1e-6));
}

TEST_CASE("density_taper invariants", "[synthesis][property]")
{
    std::mt19937_64 gen(33);
    for (int t = 0; t < 40; ++t)
    {
        const auto p = random_profile(gen, 7.0 + double(t % 5), 40);
        const std::size_t M = 2 + gen() % 30;
        const auto layout = density_taper(p, M, 0.0);
        REQUIRE(layout[0] == 0.0);
        REQUIRE(layout[M - 1] == p.x_max());

        // scale invariance
        const auto scaled = density_taper(p.scaled(0.37 + double(t)), M, 0.0);
        for (std::size_t m = 0; m < M; ++m)
            REQUIRE(scaled[m] == Approx(layout[m]).margin(1e-12));

        // equal mass between neighbours
        const auto c = cumulative_density(p);
        const double step = c.total() / double(M - 1);
        for (std::size_t m = 1; m < M; ++m)
            REQUIRE(std::abs((c(layout[m]) - c(layout[m - 1])) - step) <= 1e-9 * c.total());
    }
}

TEST_CASE("density_taper puts more elements where the density is higher", "[synthesis]")
{
    const auto centre = density_taper(DensityProfile({0.0, 7.5, 15.0}, {0.2, 2.0, 0.2}), 16);
    const auto edge = density_taper(DensityProfile({0.0, 7.5, 15.0}, {2.0, 0.2, 2.0}), 16);
    CHECK(centre[8] - centre[7] < 1.0);
    CHECK(centre[1] - centre[0] > 1.0);
    CHECK(edge[8] - edge[7] > 1.0);
    CHECK(edge[1] - edge[0] < 1.0);
}

TEST_CASE("density_taper enforces a minimum separation", "[synthesis]")
{
    // almost all the mass in a narrow spike at x = 3
    const DensityProfile spike({0.0, 2.99, 3.0, 3.01, 6.0}, {1e-6, 1e-6, 1000.0, 1e-6, 1e-6});
    const auto res = density_taper_detailed(spike, 8, 0.05);
    CHECK(res.separations_enforced > 0);
    const auto &l = res.layout;
    CHECK(l[0] == 0.0);
    CHECK(l[7] == 6.0);
    for (std::size_t m = 1; m < 8; ++m)
        CHECK(l[m] - l[m - 1] >= 0.05 - 1e-12);

    // without the floor the interior elements would collapse onto the spike
    const auto raw = density_taper(spike, 8, 0.0);
    CHECK(raw[4] - raw[3] < 0.01);

    CHECK_THROWS_AS(density_taper(DensityProfile({0.0, 0.2}, {1.0, 1.0}), 8, 0.05), InvalidArgument);
}

TEST_CASE("dense reference layout sampling", "[synthesis]")
{
    const auto dense = dense_reference_layout(7.0, 8.0);
    CHECK(dense.size() == 57);
    CHECK(dense.aperture() == 7.0);
    CHECK(dense[1] == Approx(0.125));
    CHECK_THROWS_AS(dense_reference_layout(7.0, 1.5), InvalidArgument);
}

TEST_CASE("synthesis of a RIMP scenario approaches the regular layout", "[synthesis][statistical][slow]")
{
    ScenarioConfig sc;
    sc.M = 8;
    sc.K = 2;
    sc.waves_per_ue = 20;
    sc.master_seed = 4242;
    SynthesisOptions opts;
    opts.realizations = 100000;
    const auto res = synthesize_aperiodic(sc, opts);
    REQUIRE(res.layout.size() == 8);
    CHECK_FALSE(res.low_realizations);
    for (std::size_t m = 0; m < 8; ++m)
        CHECK(std::abs(res.layout[m] - double(m)) <= 0.15);

    // mirror symmetry of the dense profile
    const auto &mu = res.dense_power.mu;
    for (std::size_t i = 0; i < mu.size() / 2; ++i)
        CHECK(std::abs(mu[i] - mu[mu.size() - 1 - i]) <= 0.02 * 0.5 * (mu[i] + mu[mu.size() - 1 - i]));
}

TEST_CASE("synthesis flags low realization counts", "[synthesis]")
{
    ScenarioConfig sc;
    sc.M = 4;
    sc.K = 1;
    SynthesisOptions opts;
    opts.realizations = 2000;
    opts.oversampling = 4.0;
    const auto res = synthesize_aperiodic(sc, opts);
    CHECK(res.low_realizations);
    CHECK(res.dense_layout.size() == 13);
    CHECK(res.layout.size() == 4);
    CHECK(res.layout[3] == 3.0);
}
