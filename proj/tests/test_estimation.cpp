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

#include "irspilot/estimation.hpp"
#include "irspilot/errors.hpp"
#include "irspilot/log.hpp"

#include <cmath>
#include <numbers>
#include <string>

using namespace irspilot;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    ChannelRealization truth_of(std::uint32_t n, double beta2, std::uint64_t seed = 1)
    {
        LinkStatistics st{{beta2}, {1.0}, {beta2}};
        std::vector<IrsSpec> irs{{{0, 0, 0}, n}};
        return sample_channels(st, irs, seed);
    }

    PilotAllocation single(double p, std::uint32_t m)
    {
        return {{p}, {m}, p, Strategy::identical};
    }

    double empirical_mse(const ChannelRealization &truth, const EstimationResult &est)
    {
        double sum = 0.0;
        const auto &h = truth.blocks[0].h;
        for (std::size_t m = 0; m < h.size(); ++m)
            sum += std::norm(est.estimates[0].h[m] - h[m]);
        return sum / static_cast<double>(h.size());
    }
}

TEST_CASE("vanishing pilot noise recovers the channel")
{
    // p = 10^12 sigma^2 on a unit-variance channel.
    const double sigma = 1e-14;
    const auto truth = truth_of(1000, 1.0);
    const auto est = estimate_ls(truth, single(1e12 * sigma, 1000), sigma, 2);
    double err = 0.0, ref = 0.0;
    for (std::size_t m = 0; m < 1000; ++m)
    {
        err += std::norm(est.estimates[0].h[m] - truth.blocks[0].h[m]);
        ref += std::norm(truth.blocks[0].h[m]);
    }
    CHECK(std::sqrt(err / ref) < 1e-5);
}

TEST_CASE("LS error variance is sigma^2 / p and halves when p doubles")
{
    const std::uint32_t n = 1000000;
    const double sigma = 1e-14, p = 1e-4;
    const auto truth = truth_of(n, 1e-9);
    const auto est = estimate_ls(truth, single(p, n), sigma, 4);
    REQUIRE(est.error_variance[0] == sigma / p);
    const double mse = empirical_mse(truth, est);
    CHECK_THAT(mse, WithinRel(sigma / p, 0.01));

    const auto est2 = estimate_ls(truth, single(2 * p, n), sigma, 4);
    CHECK_THAT(empirical_mse(truth, est2) / mse, WithinRel(0.5, 0.01));
}

TEST_CASE("estimation is deterministic and its noise is independent of the channel seed")
{
    const auto t1 = truth_of(64, 1e-9, 1);
    const auto t2 = truth_of(64, 1e-9, 2);
    const auto a = estimate_ls(t1, single(1e-5, 64), 1e-14, 7);
    const auto b = estimate_ls(t1, single(1e-5, 64), 1e-14, 7);
    CHECK(a.estimates[0].h == b.estimates[0].h);
    // Same estimation seed, different channels: identical noise.
    const auto c = estimate_ls(t2, single(1e-5, 64), 1e-14, 7);
    for (std::size_t m = 0; m < 64; ++m)
        CHECK(std::abs((a.estimates[0].h[m] - t1.blocks[0].h[m]) - (c.estimates[0].h[m] - t2.blocks[0].h[m])) <
              1e-18);
    CHECK_THROWS_AS(estimate_ls(t1, single(1e-5, 64), 0.0, 1), InvalidArgument);
}

TEST_CASE("phase configuration")
{
    EstimationResult est;
    est.estimates = {{0, {{3.0, 4.0}, {0.0, 0.0}, {-1e-300, 2e-300}}}};
    est.error_variance = {1.0};

    std::string logged;
    set_log_sink([&](LogLevel, std::string_view msg) { logged = msg; });
    const auto cfg = configure_phases(est);
    set_log_sink({});

    CHECK_THAT(cfg.phases[0][0].real(), WithinAbs(0.6, 1e-15));
    CHECK_THAT(cfg.phases[0][0].imag(), WithinAbs(-0.8, 1e-15));
    CHECK(cfg.phases[0][1] == std::complex<double>(1.0, 0.0));
    CHECK(cfg.degenerate == 1);
    CHECK(logged.find("zero channel estimate") != std::string::npos);
    for (const auto &phi : cfg.phases[0])
        CHECK(std::abs(std::abs(phi) - 1.0) < 1e-12);

    EstimationResult bad;
    bad.estimates = {{0, {{NAN, 0.0}}}};
    CHECK_THROWS_AS(configure_phases(bad), InvalidArgument);
}

TEST_CASE("perfect CSI phases make every term real and non-negative")
{
    const auto truth = truth_of(2000, 3e-9);
    const auto cfg = perfect_phases(truth);
    for (std::size_t m = 0; m < 2000; ++m)
    {
        const auto z = cfg.phases[0][m] * truth.blocks[0].h[m];
        CHECK(z.real() >= 0.0);
        CHECK(std::abs(z.imag()) <= 1e-12 * std::abs(z));
        CHECK(std::abs(std::abs(cfg.phases[0][m]) - 1.0) < 1e-12);
    }
}

TEST_CASE("alignment expectation matches sqrt(pi) beta^2 / (2 sqrt(beta^2 + delta^2))")
{
    const double beta2 = 1.0, delta2 = 0.25;
    const std::uint32_t n = 1000000;
    const auto truth = truth_of(n, beta2, 21);
    const auto est = estimate_ls(truth, single(1.0 / delta2, n), 1.0, 22);
    const auto cfg = configure_phases(est);
    double re = 0, re2 = 0, im = 0, im2 = 0;
    for (std::uint32_t m = 0; m < n; ++m)
    {
        const auto z = cfg.phases[0][m] * truth.blocks[0].h[m];
        re += z.real();
        re2 += z.real() * z.real();
        im += z.imag();
        im2 += z.imag() * z.imag();
    }
    re /= n;
    im /= n;
    const double se_re = std::sqrt((re2 / n - re * re) / n);
    const double se_im = std::sqrt((im2 / n - im * im) / n);
    const double expected = std::sqrt(std::numbers::pi) * beta2 / (2.0 * std::sqrt(beta2 + delta2));
    CHECK(std::abs(re - expected) < 3.0 * se_re);
    CHECK(std::abs(im) < 3.0 * se_im);
}

TEST_CASE("pilot overhead and allocation invariants")
{
    std::vector<IrsSpec> irs{{{0, 0, 0}, 100}, {{0, 0, 0}, 28}};
    CHECK(pilot_overhead(irs) == 128);

    PilotAllocation ok{{2.0, 0.5}, {1, 2}, 1.0, Strategy::custom};
    CHECK_NOTHROW(ok.validate());
    auto bad = ok;
    bad.power = {2.0, 0.6};
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = ok;
    bad.power = {3.0, 0.0};
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);

    CHECK(parse_strategy("exact-numeric") == Strategy::exact);
    CHECK(parse_strategy("simplified") == Strategy::simplified);
    CHECK_FALSE(parse_strategy("best").has_value());
}
