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

#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "irspilot/rng.hpp"

namespace irspilot
{
    // Meters. z is the height above ground.
    struct Position3D
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;

        bool operator==(const Position3D &) const = default;
    };

    double distance(const Position3D &a, const Position3D &b);
    double horizontal_distance(const Position3D &a, const Position3D &b);

    struct IrsSpec
    {
        Position3D position;
        std::uint32_t num_elements = 1;

        bool operator==(const IrsSpec &) const = default;
    };

    // How the IRS-user leg length is measured. BS-IRS legs are always 3-D.
    enum class UserLegDistance
    {
        euclidean,  // full 3-D distance, including the height difference
        horizontal  // ground-plane projection only
    };

    // Full description of one deployment. Linear units throughout:
    // powers in watts, gains as ratios.
    struct ScenarioConfig
    {
        Position3D bs_position{0.0, 0.0, 10.0};
        std::vector<IrsSpec> irs_list;

        double downlink_power = 10.0;    // q
        double avg_pilot_power = 1e-3;   // p
        double noise_bs = 1e-14;         // sigma_z^2
        double noise_user = 1e-12;       // sigma_n^2
        double ref_path_loss = 0.01;     // C0 at 1 m
        double exponent_bs_irs = 2.2;    // alpha_bi
        double exponent_irs_user = 2.8;  // alpha_iu
        double rician_bs_irs = std::numeric_limits<double>::infinity(); // K_bi
        double rician_irs_user = 0.0;    // K_iu
        UserLegDistance user_leg = UserLegDistance::euclidean;

        bool operator==(const ScenarioConfig &) const = default;

        std::size_t num_irs() const { return irs_list.size(); }
        std::size_t total_elements() const;

        // Throws InvalidArgument naming the first violated invariant.
        void validate() const;
    };

    // Per-IRS cascaded-channel variance beta_k^2 (linear power gain).
    struct LinkStatistics
    {
        std::vector<double> beta2;

        // Components kept for the Rician sampler; beta2 = bs_leg * user_leg.
        std::vector<double> bs_leg_gain;
        std::vector<double> user_leg_gain;
    };

    // One draw of the cascaded coefficients h_{k,m} of some subset of IRSs.
    struct IrsChannel
    {
        std::uint16_t irs = 0; // global IRS index; also the RNG stream id
        std::vector<std::complex<double>> h;
    };

    struct ChannelRealization
    {
        std::vector<IrsChannel> blocks;
        std::uint64_t master_seed = 0;
        std::uint64_t trial = 0;

        bool operator==(const ChannelRealization &other) const;
    };

    // C0 * d^-alpha. Throws DomainError when d < 1 m or alpha <= 0.
    double path_loss(double distance_m, double exponent, double c0);

    // beta_k^2 = PL(|bs - irs_k|, alpha_bi) * PL(|irs_k - user|, alpha_iu)
    LinkStatistics link_statistics(const ScenarioConfig &scenario, const Position3D &user);

    // Draws h_{k,m} for every IRS with cascaded variance beta_k^2. With K_bi = inf and
    // K_iu = 0 this is exactly h ~ CN(0, beta_k^2); finite Rician factors add
    // deterministic unit-phase LoS parts on the corresponding leg.
    ChannelRealization sample_channels(const LinkStatistics &stats, std::span<const IrsSpec> irs_list,
                                       std::uint64_t seed, std::uint64_t trial = 0,
                                       double rician_bs_irs = std::numeric_limits<double>::infinity(),
                                       double rician_irs_user = 0.0);

    // Same as sample_channels but only for the listed global IRS indices.
    ChannelRealization sample_channels_subset(const LinkStatistics &stats, std::span<const IrsSpec> irs_list,
                                              std::span<const std::uint16_t> active, std::uint64_t seed,
                                              std::uint64_t trial, double rician_bs_irs, double rician_irs_user);
}
