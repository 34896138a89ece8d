// SPDX-License-Identifier: Apache-2.0
//
// irspilot: pilot power allocation and link-level simulation for multi-IRS links
// Copyright (C) 2026 The irspilot Authors
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

#include <catch_amalgamated.hpp>

#include "irspilot/capacity.hpp"
#include "irspilot/errors.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace irspilot;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    const double quarter_pi = std::numbers::pi / 4.0;

    // Perfect-CSI average gain written out independently of the library.
    double perfect_gain_oracle(const std::vector<double> &beta2, const std::vector<std::uint32_t> &m)
    {
        double diag = 0, intra = 0, inter = 0;
        for (std::size_t k = 0; k < beta2.size(); ++k)
        {
            diag += m[k] * beta2[k];
            intra += quarter_pi * beta2[k] * m[k] * (m[k] - 1.0);
            for (std::size_t j = 0; j < beta2.size(); ++j)
                if (j != k)
                    inter += quarter_pi * m[k] * std::sqrt(beta2[k]) * m[j] * std::sqrt(beta2[j]);
        }
        return diag + intra + inter;
    }

    ChannelRealization constant_channel(std::vector<std::complex<double>> h)
    {
        ChannelRealization r;
        r.blocks.push_back({0, std::move(h)});
        return r;
    }
}

TEST_CASE("mean alignment closed form")
{
    CHECK_THAT(mean_alignment(4.0, 0.0), WithinRel(std::sqrt(std::numbers::pi) / 2.0 * 2.0, 1e-15));
    CHECK_THAT(mean_alignment(2.0, 2.0), WithinRel(std::sqrt(std::numbers::pi) / 2.0 * std::sqrt(2.0) / std::sqrt(2.0), 1e-15));
    CHECK_THAT(mean_alignment(1.0, 0.25), WithinRel(0.7926654595212022, 1e-12));
    CHECK_THROWS_AS(mean_alignment(0.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(mean_alignment(1.0, -1.0), InvalidArgument);
}

TEST_CASE("expected gain: perfect-CSI limit and components")
{
    const std::vector<double> beta2{3e-9, 5e-10, 1e-9};
    const std::vector<std::uint32_t> m{100, 40, 7};
    const auto g = expected_gain_perfect_csi(beta2, m);
    CHECK_THAT(g.total, WithinRel(perfect_gain_oracle(beta2, m), 1e-13));
    CHECK(g.total == g.diagonal + g.intra + g.inter);

    // Huge pilot power approaches the perfect-CSI value.
    const auto near = expected_gain(beta2, m, std::vector<double>(3, 1e6), 1e-14);
    CHECK_THAT(near.total, WithinRel(g.total, 1e-9));

    // One element: no cross terms, so pilot power does not matter.
    const std::vector<double> b1{2e-9};
    const std::vector<std::uint32_t> m1{1};
    CHECK(expected_gain(b1, m1, std::vector<double>{1e-9}, 1e-14).total == 2e-9);
    CHECK(expected_gain(b1, m1, std::vector<double>{1.0}, 1e-14).total == 2e-9);

    const auto rnd = expected_gain_random_phase(beta2, m);
    CHECK_THAT(rnd.total, WithinRel(100 * 3e-9 + 40 * 5e-10 + 7 * 1e-9, 1e-14));
}

TEST_CASE("expected gain is non-decreasing in every pilot power")
{
    const std::vector<double> beta2{3e-9, 5e-10};
    const std::vector<std::uint32_t> m{30, 50};
    for (std::size_t k = 0; k < 2; ++k)
    {
        double prev = 0.0;
        for (double dbm = -60; dbm <= 30; dbm += 2.5)
        {
            std::vector<double> p{1e-5, 1e-5};
            p[k] = std::pow(10.0, (dbm - 30) / 10);
            const double g = expected_gain(beta2, m, p, 1e-14).total;
            CHECK(g >= prev);
            prev = g;
        }
    }
}

TEST_CASE("instantaneous rate")
{
    PhaseConfiguration ones;
    ones.phases = {{{1, 0}, {1, 0}, {1, 0}}};
    CHECK(instantaneous_rate(constant_channel({0, 0, 0}), ones, 10.0, 1e-12) == 0.0);

    // Equal magnitudes c with perfect phases: log2(1 + q M^2 c^2 / sigma^2).
    const double c = 2e-6;
    const auto truth = constant_channel({std::polar(c, 0.3), std::polar(c, -2.0), std::polar(c, 1.1), std::polar(c, 3.0)});
    const auto perfect = perfect_phases(truth);
    CHECK_THAT(instantaneous_rate(truth, perfect, 10.0, 1e-12),
               WithinRel(std::log2(1.0 + 10.0 * 16 * c * c / 1e-12), 1e-12));

    const auto random = random_phases(truth, 4, 0);
    CHECK(instantaneous_rate(truth, random, 10.0, 1e-12) <= instantaneous_rate(truth, perfect, 10.0, 1e-12));
}

TEST_CASE("rate bound, regime approximations and the quadratic law")
{
    CHECK(ergodic_capacity_bound(0.0, 10.0, 1e-12) == 0.0);
    CHECK_THAT(high_snr_rate(1e-10, 10.0, 1e-12), WithinRel(std::log2(1000.0), 1e-14));
    CHECK_THAT(low_snr_rate(1e-16, 10.0, 1e-12), WithinRel(1e-3 / std::log(2.0), 1e-12));
    CHECK_THROWS_AS(ergodic_capacity_bound(-1.0, 10.0, 1e-12), InvalidArgument);

    // Ten times the elements gives close to a hundred times the perfect-CSI gain.
    const std::vector<double> b{1e-9};
    const double ratio = expected_gain_perfect_csi(b, std::vector<std::uint32_t>{1000}).total /
                         expected_gain_perfect_csi(b, std::vector<std::uint32_t>{100}).total;
    CHECK_THAT(ratio, WithinRel(100.0, 0.02));
}

TEST_CASE("closed-form gain matches the simulated pipeline")
{
    // Two IRSs at moderate and poor pilot SNR, 2e4 trials.
    const std::vector<double> beta2{4e-12, 1e-12};
    const std::vector<std::uint32_t> m{20, 10};
    const std::vector<double> p{2e-3, 5e-3};
    const double sigma = 1e-14;
    LinkStatistics st{beta2, {1.0, 1.0}, beta2};
    std::vector<IrsSpec> irs{{{0, 0, 0}, 20}, {{0, 0, 0}, 10}};
    PilotAllocation alloc{p, m, (20 * 2e-3 + 10 * 5e-3) / 30.0, Strategy::custom};

    const int n = 20000;
    double sum = 0, sum2 = 0;
    for (int t = 0; t < n; ++t)
    {
        const auto truth = sample_channels(st, irs, 77, t);
        const double g = combined_gain(truth, configure_phases(estimate_ls(truth, alloc, sigma, 77, t)));
        sum += g;
        sum2 += g * g;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    const double closed = expected_gain(beta2, m, p, sigma).total;
    CHECK(std::abs(mean - closed) < std::max(0.02 * closed, 3.0 * se));
}
