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

#include "aperiodic/metrics.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace aperiodic;
using Catch::Approx;

TEST_CASE("accumulate_excitation single and two-sample statistics", "[metrics]")
{
    StreamingMoments acc(2);
    accumulate_excitation(acc, Precoder{Eigen::MatrixXcd::Identity(2, 2), 0.5});
    auto prof = PowerProfile::from_moments(acc);
    CHECK(prof.mu == std::vector<double>{1.0, 1.0});
    CHECK(prof.sigma2 == std::vector<double>{0.0, 0.0});
    CHECK_FALSE(acc.variance_defined());

    StreamingMoments two(2);
    Eigen::MatrixXcd E1 = Eigen::MatrixXcd::Zero(2, 1);
    E1.setConstant(1.0);
    Eigen::MatrixXcd E3 = Eigen::MatrixXcd::Zero(2, 1);
    E3.setConstant(std::sqrt(3.0));
    accumulate_excitation(two, E1);
    accumulate_excitation(two, E3);
    prof = PowerProfile::from_moments(two);
    CHECK(prof.mu[0] == Approx(2.0));
    CHECK(prof.mu[1] == Approx(2.0));
    CHECK(prof.sigma2[0] == Approx(2.0));
    CHECK(prof.sigma2[1] == Approx(2.0));

    CHECK_THROWS_AS(accumulate_excitation(two, Eigen::MatrixXcd::Zero(3, 2)), InvalidArgument);
}

TEST_CASE("accumulate_excitation sums the users coherently", "[metrics]")
{
    StreamingMoments acc(1);
    Eigen::MatrixXcd W(1, 2);
    W << cplx(1.0, 0.0), cplx(0.0, 1.0);
    accumulate_excitation(acc, W);
    CHECK(acc.mean()[0] == Approx(2.0)); // |1 + j|^2
}

TEST_CASE("streaming moments match a two-pass batch computation", "[metrics][oracle]")
{
    std::mt19937_64 gen(3);
    std::normal_distribution<double> n(0.0, 1.0);
    const std::size_t M = 8;
    std::vector<std::vector<double>> rows;
    StreamingMoments acc(M);
    for (int i = 0; i < 10000; ++i)
    {
        Eigen::MatrixXcd W(M, 2);
        for (Eigen::Index r = 0; r < W.rows(); ++r)
            for (Eigen::Index c = 0; c < 2; ++c)
                W(r, c) = cplx(n(gen), n(gen)) * (1.0 + 0.2 * double(r));
        accumulate_excitation(acc, W);
        std::vector<double> s(M);
        for (std::size_t m = 0; m < M; ++m)
            s[m] = std::norm(W(Eigen::Index(m), 0) + W(Eigen::Index(m), 1));
        rows.push_back(s);
    }
    std::vector<double> mean, var;
    oracle::two_pass(rows, mean, var);
    const auto v = acc.variance();
    for (std::size_t m = 0; m < M; ++m)
    {
        CHECK(acc.mean()[m] == Approx(mean[m]).epsilon(1e-10));
        CHECK(v[m] == Approx(var[m]).epsilon(1e-10));
    }
}

TEST_CASE("streaming moments merge is order independent", "[metrics][property]")
{
    std::mt19937_64 gen(11);
    std::lognormal_distribution<double> d(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial)
    {
        const std::size_t n = 200 + gen() % 2000;
        std::vector<std::vector<double>> rows(n, std::vector<double>(3));
        for (auto &r : rows)
            for (auto &x : r)
                x = d(gen);

        StreamingMoments whole(3);
        for (const auto &r : rows)
            whole.push(r);

        // random split into up to 5 pieces
        std::vector<std::size_t> cuts{0, n};
        for (int c = 0; c < 4; ++c)
            cuts.push_back(gen() % n);
        std::sort(cuts.begin(), cuts.end());
        std::vector<StreamingMoments> parts;
        for (std::size_t p = 0; p + 1 < cuts.size(); ++p)
        {
            StreamingMoments part(3);
            for (std::size_t i = cuts[p]; i < cuts[p + 1]; ++i)
                part.push(rows[i]);
            parts.push_back(part);
        }
        StreamingMoments fwd(3), rev(3);
        for (const auto &p : parts)
            fwd.merge(p);
        for (auto it = parts.rbegin(); it != parts.rend(); ++it)
            rev.merge(*it);

        REQUIRE(fwd.count() == whole.count());
        REQUIRE(rev.count() == whole.count());
        const auto vw = whole.variance(), vf = fwd.variance(), vr = rev.variance();
        for (std::size_t i = 0; i < 3; ++i)
        {
            REQUIRE(fwd.mean()[i] == Approx(whole.mean()[i]).epsilon(1e-12));
            REQUIRE(rev.mean()[i] == Approx(whole.mean()[i]).epsilon(1e-12));
            REQUIRE(vf[i] == Approx(vw[i]).epsilon(1e-12));
            REQUIRE(vr[i] == Approx(vw[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("power_spread", "[metrics]")
{
    CHECK(power_spread(PowerProfile{{0.3, 0.3, 0.3}, {0.0, 0.0, 0.0}, 10}).db == Approx(0.0).margin(1e-15));
    CHECK(power_spread(PowerProfile{{1.0, 2.0}, {0.0, 0.0}, 10}).db == Approx(10.0 * std::log10(2.0)));
    const auto inf = power_spread(PowerProfile{{1.0, 1.0}, {0.5, 2.0}, 10});
    CHECK(inf.unbounded);
    CHECK(std::isinf(inf.db));
    CHECK_THROWS_AS(power_spread(PowerProfile{}), InvalidState);
    CHECK_THROWS_AS(power_spread(PowerProfile{{1.0}, {0.0}, 1}), InvalidState);
}

TEST_CASE("power_spread is never negative", "[metrics][property]")
{
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> mu(0.5, 2.0), var(0.0, 0.4);
    for (int t = 0; t < 1000; ++t)
    {
        PowerProfile p{std::vector<double>(6), std::vector<double>(6), 100};
        for (std::size_t m = 0; m < 6; ++m)
        {
            p.mu[m] = mu(gen);
            p.sigma2[m] = var(gen);
        }
        const auto ps = power_spread(p);
        REQUIRE((ps.unbounded || ps.db >= 0.0));
    }
}

TEST_CASE("sum_rate", "[metrics]")
{
    std::vector<std::vector<double>> one(5, std::vector<double>{1.0});
    CHECK(sum_rate(one) == Approx(1.0));
    std::vector<std::vector<double>> two(5, std::vector<double>{3.0, 3.0});
    CHECK(sum_rate(two) == Approx(4.0));
    CHECK_THROWS_AS(sum_rate(std::vector<std::vector<double>>{}), InvalidState);
}

TEST_CASE("sum_rate matches a naive batch average and is monotone", "[metrics][oracle][property]")
{
    std::mt19937_64 gen(8);
    std::exponential_distribution<double> d(0.5);
    std::vector<std::vector<double>> samples(5000, std::vector<double>(4));
    for (auto &s : samples)
        for (auto &x : s)
            x = d(gen);
    double naive = 0.0;
    for (std::size_t k = 0; k < 4; ++k)
    {
        double acc = 0.0;
        for (const auto &s : samples)
            acc += std::log2(1.0 + s[k]);
        naive += acc / double(samples.size());
    }
    const double sr = sum_rate(samples);
    CHECK(sr == Approx(naive).epsilon(1e-12));

    auto raised = samples;
    for (auto &s : raised)
        for (auto &x : s)
            x *= 1.0 + std::uniform_real_distribution<double>(0.0, 0.1)(gen);
    CHECK(sum_rate(raised) >= sr);
}

TEST_CASE("SinrCdf percentile", "[metrics]")
{
    SinrCdf point;
    for (int i = 0; i < 100; ++i)
        point.push_db(7.0);
    CHECK(point.percentile(0.05) == Approx(7.0).margin(0.01));

    SinrCdf uni;
    for (int i = 0; i < 100000; ++i)
        uni.push_db(10.0 * (i + 0.5) / 100000.0);
    CHECK(uni.percentile(0.5) == Approx(5.0).margin(0.02));

    CHECK_THROWS_AS(SinrCdf().percentile(0.5), InvalidState);
    CHECK_THROWS_AS(point.percentile(0.0), InvalidArgument);
    CHECK_THROWS_AS(point.percentile(1.0), InvalidArgument);
}

TEST_CASE("SinrCdf percentile of N(0,1) dB samples", "[metrics][statistical]")
{
    std::mt19937_64 gen(1);
    std::normal_distribution<double> n(0.0, 1.0);
    SinrCdf cdf;
    for (int i = 0; i < 100000; ++i)
        cdf.push_db(n(gen));
    CHECK(cdf.percentile(0.05) == Approx(-1.645).margin(0.03));
    const auto ci = cdf.percentile_interval(0.05);
    CHECK(ci.lo <= -1.645 + 0.01);
    CHECK(ci.hi >= -1.645 - 0.01);
}

TEST_CASE("SinrCdf monotone CDF, clamping and merge", "[metrics][property]")
{
    SinrCdf a, b;
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(-150.0, 90.0);
    for (int i = 0; i < 20000; ++i)
        (i % 2 ? a : b).push_db(u(gen));
    a.merge(b);
    CHECK(a.count() == 20000);
    std::uint64_t total = 0;
    for (auto c : a.counts())
        total += c;
    CHECK(total == a.count());
    CHECK(a.underflow() > 0);
    CHECK(a.overflow() > 0);
    double prev = -std::numeric_limits<double>::infinity();
    for (double p = 0.01; p < 1.0; p += 0.01)
    {
        const double q = a.percentile(p);
        REQUIRE(q >= prev);
        prev = q;
    }
    CHECK_THROWS_AS(a.merge(SinrCdf(-40.0, 60.0, 0.01)), InvalidArgument);
}

TEST_CASE("sinr_gain and psc", "[metrics]")
{
    std::mt19937_64 gen(6);
    std::normal_distribution<double> n(3.0, 4.0);
    SinrCdf reg, shifted;
    for (int i = 0; i < 50000; ++i)
    {
        const double v = n(gen);
        reg.push_db(v);
        shifted.push_db(v + 2.0);
    }
    CHECK(sinr_gain(reg, reg) == 0.0);
    CHECK(sinr_gain(shifted, reg) == Approx(2.0).margin(0.01));

    SinrCdf small;
    for (int i = 0; i < 999; ++i)
        small.push_db(1.0);
    CHECK_THROWS_AS(sinr_gain(small, reg), InvalidState);

    CHECK(*psc(4.0, 4.0) == 0.0);
    CHECK(*psc(5.0, 3.0) == Approx(2.0));
    CHECK_FALSE(psc(std::numeric_limits<double>::infinity(), 3.0).has_value());
    CHECK_FALSE(psc(3.0, std::numeric_limits<double>::infinity()).has_value());
}
