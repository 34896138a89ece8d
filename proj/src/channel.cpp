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

#include "irspilot/channel.hpp"
#include "irspilot/errors.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace irspilot
{
    double distance(const Position3D &a, const Position3D &b)
    {
        return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
    }

    double horizontal_distance(const Position3D &a, const Position3D &b)
    {
        return std::hypot(a.x - b.x, a.y - b.y);
    }

    std::size_t ScenarioConfig::total_elements() const
    {
        return std::accumulate(irs_list.begin(), irs_list.end(), std::size_t{0},
                               [](std::size_t acc, const IrsSpec &irs) { return acc + irs.num_elements; });
    }

    namespace
    {
        void check_position(const Position3D &p, const std::string &what)
        {
            if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
                throw InvalidArgument(what + ": coordinates must be finite");
            if (p.z < 0.0)
                throw InvalidArgument(what + ": height must be >= 0");
        }

        void check_positive(double v, const char *what)
        {
            if (!(v > 0.0) || !std::isfinite(v))
                throw InvalidArgument(std::string(what) + " must be positive and finite");
        }
    }

    void ScenarioConfig::validate() const
    {
        check_position(bs_position, "bs_position");
        if (irs_list.empty())
            throw InvalidArgument("scenario needs at least one IRS");
        if (irs_list.size() > 0xFFFF)
            throw InvalidArgument("too many IRSs");
        for (std::size_t k = 0; k < irs_list.size(); ++k)
        {
            check_position(irs_list[k].position, "irs " + std::to_string(k + 1));
            if (irs_list[k].num_elements < 1)
                throw InvalidArgument("irs " + std::to_string(k + 1) + ": needs at least one element");
        }
        check_positive(downlink_power, "downlink_power");
        check_positive(avg_pilot_power, "avg_pilot_power");
        check_positive(noise_bs, "noise_bs");
        check_positive(noise_user, "noise_user");
        if (!(ref_path_loss > 0.0 && ref_path_loss <= 1.0))
            throw InvalidArgument("ref_path_loss must lie in (0, 1]");
        if (!(exponent_bs_irs >= 2.0) || !std::isfinite(exponent_bs_irs))
            throw InvalidArgument("exponent_bs_irs must be >= 2");
        if (!(exponent_irs_user >= 2.0) || !std::isfinite(exponent_irs_user))
            throw InvalidArgument("exponent_irs_user must be >= 2");
        if (!(rician_bs_irs >= 0.0))
            throw InvalidArgument("rician_bs_irs must be >= 0 (or inf)");
        if (!(rician_irs_user >= 0.0))
            throw InvalidArgument("rician_irs_user must be >= 0 (or inf)");
    }

    bool ChannelRealization::operator==(const ChannelRealization &other) const
    {
        if (master_seed != other.master_seed || trial != other.trial || blocks.size() != other.blocks.size())
            return false;
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if (blocks[i].irs != other.blocks[i].irs || blocks[i].h != other.blocks[i].h)
                return false;
        return true;
    }

    double path_loss(double distance_m, double exponent, double c0)
    {
        if (!(distance_m >= 1.0))
            throw DomainError("path loss model is only valid at or beyond the 1 m reference distance (got " +
                              std::to_string(distance_m) + " m)");
        if (!(exponent > 0.0))
            throw DomainError("path loss exponent must be positive");
        return c0 * std::pow(distance_m, -exponent);
    }

    LinkStatistics link_statistics(const ScenarioConfig &scenario, const Position3D &user)
    {
        if (!std::isfinite(user.x) || !std::isfinite(user.y) || !std::isfinite(user.z))
            throw InvalidArgument("user position must be finite");

        LinkStatistics stats;
        const std::size_t K = scenario.irs_list.size();
        stats.beta2.reserve(K);
        stats.bs_leg_gain.reserve(K);
        stats.user_leg_gain.reserve(K);
        for (const auto &irs : scenario.irs_list)
        {
            const double d_bi = distance(scenario.bs_position, irs.position);
            const double d_iu = scenario.user_leg == UserLegDistance::euclidean
                                    ? distance(irs.position, user)
                                    : horizontal_distance(irs.position, user);
            if (d_bi == 0.0 || d_iu == 0.0)
                throw DomainError("zero distance between the IRS and another node");
            const double bs_leg = path_loss(d_bi, scenario.exponent_bs_irs, scenario.ref_path_loss);
            const double user_leg = path_loss(d_iu, scenario.exponent_irs_user, scenario.ref_path_loss);
            stats.bs_leg_gain.push_back(bs_leg);
            stats.user_leg_gain.push_back(user_leg);
            stats.beta2.push_back(bs_leg * user_leg);
        }
        return stats;
    }

    namespace
    {
        // One leg with Rician factor `rician` and mean power `gain`. The LoS part has a
        // deterministic unit phase; the NLoS part is drawn from `stream`.
        std::complex<double> rician_leg(double gain, double rician, RandomStream *stream)
        {
            if (std::isinf(rician))
                return {std::sqrt(gain), 0.0};
            const double los = std::sqrt(gain * rician / (rician + 1.0));
            return std::complex<double>(los, 0.0) + stream->complex_normal(gain / (rician + 1.0));
        }

        IrsChannel sample_irs(const LinkStatistics &stats, std::size_t k, std::uint32_t num_elements,
                              std::uint64_t seed, std::uint64_t trial, double k_bi, double k_iu)
        {
            IrsChannel block;
            block.irs = static_cast<std::uint16_t>(k);
            block.h.resize(num_elements);

            RandomStream user_stream({seed, trial, block.irs, StreamPurpose::channel_user_leg});
            if (std::isinf(k_bi) && k_iu == 0.0)
            {
                // u deterministic, v Rayleigh: h = u v* ~ CN(0, beta^2).
                const double u = std::sqrt(stats.bs_leg_gain[k]);
                for (auto &h : block.h)
                    h = u * std::conj(user_stream.complex_normal(stats.user_leg_gain[k]));
                return block;
            }

            RandomStream bs_stream({seed, trial, block.irs, StreamPurpose::channel_bs_leg});
            for (auto &h : block.h)
            {
                const auto u = rician_leg(stats.bs_leg_gain[k], k_bi, &bs_stream);
                const auto v = rician_leg(stats.user_leg_gain[k], k_iu, &user_stream);
                h = u * std::conj(v);
            }
            return block;
        }

        void check_stats(const LinkStatistics &stats, std::size_t K)
        {
            if (stats.beta2.size() != K || stats.bs_leg_gain.size() != K || stats.user_leg_gain.size() != K)
                throw InvalidArgument("link statistics do not match the IRS list");
            for (double b : stats.beta2)
                if (!(b > 0.0) || !std::isfinite(b))
                    throw InvalidArgument("cascaded variances must be positive and finite");
        }
    }

    ChannelRealization sample_channels(const LinkStatistics &stats, std::span<const IrsSpec> irs_list,
                                       std::uint64_t seed, std::uint64_t trial, double rician_bs_irs,
                                       double rician_irs_user)
    {
        std::vector<std::uint16_t> all(irs_list.size());
        std::iota(all.begin(), all.end(), std::uint16_t{0});
        return sample_channels_subset(stats, irs_list, all, seed, trial, rician_bs_irs, rician_irs_user);
    }

    ChannelRealization sample_channels_subset(const LinkStatistics &stats, std::span<const IrsSpec> irs_list,
                                              std::span<const std::uint16_t> active, std::uint64_t seed,
                                              std::uint64_t trial, double rician_bs_irs, double rician_irs_user)
    {
        check_stats(stats, irs_list.size());
        ChannelRealization out;
        out.master_seed = seed;
        out.trial = trial;
        out.blocks.reserve(active.size());
        for (auto k : active)
        {
            if (k >= irs_list.size())
                throw InvalidArgument("active IRS index out of range");
            out.blocks.push_back(sample_irs(stats, k, irs_list[k].num_elements, seed, trial, rician_bs_irs,
                                            rician_irs_user));
        }
        return out;
    }
}
