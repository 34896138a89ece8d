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
#include "irspilot/montecarlo.hpp"
#include "irspilot/units.hpp"

#include <cmath>
#include <cstring>

using namespace irspilot;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    ScenarioConfig two_irs(std::uint32_t m1 = 100, std::uint32_t m2 = 100, double pilot_dbm = -13.0)
    {
        ScenarioConfig s;
        s.irs_list = {{{50, 10, 10}, m1}, {{50, -10, 10}, m2}};
        s.avg_pilot_power = dbm_to_watts(pilot_dbm);
        s.user_leg = UserLegDistance::horizontal;
        return s;
    }

    bool same_bits(double a, double b)
    {
        return std::memcmp(&a, &b, sizeof a) == 0;
    }
}

TEST_CASE("masks")
{
    CHECK(mask_to_string(parse_mask("101")) == "101");
    CHECK(active_indices(parse_mask("0110")) == std::vector<std::uint16_t>{1, 2});
    CHECK(mask_to_string(all_on(3)) == "111");
    CHECK_THROWS_AS(parse_mask(""), InvalidArgument);
    CHECK_THROWS_AS(parse_mask("1a"), InvalidArgument);
    CHECK(parse_scheme("perfect-csi") == Scheme::perfect_csi);
    CHECK(parse_scheme("exact-numeric") == Scheme::exact);
    CHECK_FALSE(parse_scheme("nope").has_value());
}

TEST_CASE("masked budget keeps the total pilot energy")
{
    const auto s = two_irs(1000, 100);
    const auto stats = link_statistics(s, {48, 0, 0});
    const auto pr = masked_problem(s, stats, parse_mask("01"));
    REQUIRE(pr.num_irs() == 1);
    CHECK_THAT(pr.budget * 100, WithinRel(s.avg_pilot_power * 1100, 1e-14));
    CHECK(pr.elements[0] == 100);
    CHECK_THAT(pr.beta[0], WithinRel(std::sqrt(stats.beta2[1]), 1e-15));
    CHECK_THROWS_AS(masked_problem(s, stats, parse_mask("00")), InvalidArgument);
    CHECK_THROWS_AS(masked_problem(s, stats, parse_mask("1")), InvalidArgument);
}

TEST_CASE("run_trial reproduces the pipeline by hand")
{
    ScenarioConfig s;
    s.irs_list = {{{50, 0, 10}, 64}};
    s.avg_pilot_power = 1e3; // estimation noise is negligible
    const Position3D user{50, 10, 0};
    const auto alloc = allocate_for(s, user, Strategy::identical, all_on(1));

    const auto stats = link_statistics(s, user);
    const auto truth = sample_channels(stats, s.irs_list, 3, 9);
    const double expected = instantaneous_rate(truth, perfect_phases(truth), s.downlink_power, s.noise_user);

    const auto out = run_trial(s, user, alloc, all_on(1), 3, 9);
    CHECK_THAT(out.rate, WithinRel(expected, 1e-5));
    CHECK(same_bits(out.rate, run_trial(s, user, alloc, all_on(1), 3, 9).rate));
    CHECK(run_trial(s, user, alloc, all_on(1), 3, 9, Scheme::perfect_csi).rate == expected);

    CHECK_THROWS_AS(run_trial(s, user, alloc, IrsMask{false}, 3, 9), InvalidArgument);
}

TEST_CASE("masked-off IRSs are excluded and do not disturb the others")
{
    const auto s = two_irs();
    const Position3D user{48, 4, 0};
    PilotAllocation unused;
    const auto only_second = run_trial(s, user, unused, parse_mask("01"), 11, 2, Scheme::perfect_csi);

    const auto stats = link_statistics(s, user);
    const std::vector<std::uint16_t> idx{1};
    const auto truth = sample_channels_subset(stats, s.irs_list, idx, 11, 2, s.rician_bs_irs, s.rician_irs_user);
    double amplitude = 0.0;
    for (const auto &h : truth.blocks[0].h)
        amplitude += std::abs(h);
    CHECK_THAT(only_second.gain, WithinRel(amplitude * amplitude, 1e-12));
}

TEST_CASE("ergodic rate: single trial flag, Jensen ordering, closed-form agreement")
{
    const auto s = two_irs();
    const Position3D user{48, -6, 0};
    const auto alloc = allocate_for(s, user, Strategy::simplified, all_on(2));

    const auto one = ergodic_rate(s, user, alloc, all_on(2), 1, 5);
    CHECK(one.single_trial);
    CHECK(one.std_error == 0.0);
    CHECK(one.n_trials == 1);

    const auto r = ergodic_rate(s, user, alloc, all_on(2), 10000, 5, Scheme::simplified);
    CHECK_FALSE(r.single_trial);
    CHECK(r.mean_rate <= r.closed_form_bound);
    CHECK(r.mean_rate >= 0.0);
    CHECK(std::abs(r.mean_gain - r.closed_form_gain) <= 3.0 * r.gain_std_error);
    const auto stats = link_statistics(s, user);
    CHECK_THAT(r.closed_form_gain,
               WithinRel(expected_gain(stats, s.irs_list, alloc, s.noise_bs).total, 1e-14));

    const auto perfect = ergodic_rate(s, user, alloc, all_on(2), 2000, 5, Scheme::perfect_csi);
    const auto random = ergodic_rate(s, user, alloc, all_on(2), 2000, 5, Scheme::random_phase);
    CHECK(random.mean_rate < r.mean_rate);
    CHECK(r.mean_rate < perfect.mean_rate);
    CHECK(std::abs(random.mean_gain - random.closed_form_gain) <= 3.0 * random.gain_std_error);
    CHECK(std::abs(perfect.mean_gain - perfect.closed_form_gain) <= 3.0 * perfect.gain_std_error);

    CHECK_THROWS_AS(ergodic_rate(s, user, alloc, all_on(2), 0, 5), InvalidArgument);
}

TEST_CASE("ergodic rate does not depend on the thread count")
{
    const auto s = two_irs(200, 50);
    const Position3D user{48, 3, 0};
    const auto alloc = allocate_for(s, user, Strategy::exact, all_on(2));
    const auto a = ergodic_rate(s, user, alloc, all_on(2), 3001, 17, Scheme::exact, 1);
    for (unsigned threads : {2u, 3u, 8u})
    {
        const auto b = ergodic_rate(s, user, alloc, all_on(2), 3001, 17, Scheme::exact, threads);
        CHECK(same_bits(a.mean_rate, b.mean_rate));
        CHECK(same_bits(a.std_error, b.std_error));
        CHECK(same_bits(a.mean_gain, b.mean_gain));
    }
}

TEST_CASE("a large nearby IRS alone comes close to both IRSs")
{
    const auto s = two_irs(1000, 100);
    const Position3D user{48, 10, 0};
    const auto both = allocate_for(s, user, Strategy::identical, all_on(2));
    const auto first = allocate_for(s, user, Strategy::identical, parse_mask("10"));
    const auto r_both = ergodic_rate(s, user, both, all_on(2), 2000, 3);
    const auto r_first = ergodic_rate(s, user, first, parse_mask("10"), 2000, 3);
    CHECK(std::abs(r_both.mean_rate - r_first.mean_rate) < 0.5);
}

TEST_CASE("IRS selection sweep ordering")
{
    const auto s = two_irs(1000, 100);
    const std::vector<Position3D> users{{48, -10, 0}, {48, 10, 0}};
    const std::vector<Scheme> schemes{Scheme::identical, Scheme::perfect_csi};
    const std::vector<IrsMask> masks{parse_mask("11"), parse_mask("10"), parse_mask("01")};
    const auto rows = irs_selection_sweep(s, users, schemes, masks, 50, 4);
    REQUIRE(rows.size() == 12);
    CHECK(rows[0].user == users[0]);
    CHECK(rows[0].scheme == Scheme::identical);
    CHECK(mask_to_string(rows[1].mask) == "10");
    CHECK(rows[3].scheme == Scheme::perfect_csi);
    CHECK_FALSE(rows[3].allocation.has_value());
    CHECK(rows[6].user == users[1]);

    // An all-on sweep is just ergodic_rate per position.
    const auto single = irs_selection_sweep(s, {users[1]}, {Scheme::identical}, {all_on(2)}, 50, 4);
    const auto direct = ergodic_rate(s, users[1], allocate_for(s, users[1], Strategy::identical, all_on(2)),
                                     all_on(2), 50, 4);
    CHECK(same_bits(single[0].report.mean_rate, direct.mean_rate));
    CHECK_THROWS_AS(irs_selection_sweep(s, {}, schemes, masks, 5, 1), InvalidArgument);
}

TEST_CASE("helpers")
{
    CHECK(compensated_sum({1.0, 1e100, 1.0, -1e100}) == 2.0);
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits)
        CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i)
                                 { if (i == 7) throw InvalidArgument("boom"); }),
                    InvalidArgument);
}
