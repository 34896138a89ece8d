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

#include "irspilot/capacity.hpp"
#include "irspilot/errors.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace irspilot
{
    double mean_alignment(double beta2, double delta2)
    {
        if (!(beta2 > 0.0) || !(delta2 >= 0.0))
            throw InvalidArgument("mean_alignment needs beta2 > 0 and delta2 >= 0");
        return std::sqrt(std::numbers::pi) * beta2 / (2.0 * std::sqrt(beta2 + delta2));
    }

    namespace
    {
        void check_lengths(std::size_t a, std::size_t b, std::size_t c)
        {
            if (a != b || a != c)
                throw InvalidArgument("per-IRS inputs have different lengths");
            if (a == 0)
                throw InvalidArgument("at least one IRS is required");
        }

        // The three sums given per-IRS alignment means (identical for every element of an IRS).
        GainBreakdown assemble(std::span<const double> beta2, std::span<const std::uint32_t> elements,
                               const std::vector<double> &alignment)
        {
            GainBreakdown g;
            const std::size_t K = beta2.size();
            for (std::size_t k = 0; k < K; ++k)
            {
                const double M = elements[k];
                g.diagonal += M * beta2[k];
                g.intra += M * (M - 1.0) * alignment[k] * alignment[k];
                for (std::size_t j = 0; j < K; ++j)
                    if (j != k)
                        g.inter += M * alignment[k] * static_cast<double>(elements[j]) * alignment[j];
            }
            g.total = g.diagonal + g.intra + g.inter;
            return g;
        }
    }

    GainBreakdown expected_gain(std::span<const double> beta2, std::span<const std::uint32_t> elements,
                                std::span<const double> pilot_power, double sigma_z2)
    {
        check_lengths(beta2.size(), elements.size(), pilot_power.size());
        if (!(sigma_z2 > 0.0))
            throw InvalidArgument("sigma_z^2 must be positive");
        std::vector<double> alignment(beta2.size());
        for (std::size_t k = 0; k < beta2.size(); ++k)
        {
            if (!(pilot_power[k] > 0.0))
                throw InvalidArgument("pilot powers must be positive");
            alignment[k] = mean_alignment(beta2[k], sigma_z2 / pilot_power[k]);
        }
        return assemble(beta2, elements, alignment);
    }

    GainBreakdown expected_gain(const LinkStatistics &stats, std::span<const IrsSpec> irs_list,
                                const PilotAllocation &allocation, double sigma_z2)
    {
        std::vector<std::uint32_t> elements;
        for (const auto &irs : irs_list)
            elements.push_back(irs.num_elements);
        return expected_gain(stats.beta2, elements, allocation.power, sigma_z2);
    }

    GainBreakdown expected_gain_perfect_csi(std::span<const double> beta2, std::span<const std::uint32_t> elements)
    {
        check_lengths(beta2.size(), elements.size(), beta2.size());
        std::vector<double> alignment(beta2.size());
        for (std::size_t k = 0; k < beta2.size(); ++k)
            alignment[k] = mean_alignment(beta2[k], 0.0);
        return assemble(beta2, elements, alignment);
    }

    GainBreakdown expected_gain_random_phase(std::span<const double> beta2, std::span<const std::uint32_t> elements)
    {
        check_lengths(beta2.size(), elements.size(), beta2.size());
        GainBreakdown g;
        for (std::size_t k = 0; k < beta2.size(); ++k)
            g.diagonal += static_cast<double>(elements[k]) * beta2[k];
        g.total = g.diagonal;
        return g;
    }

    double combined_gain(const ChannelRealization &truth, const PhaseConfiguration &phases)
    {
        if (phases.phases.size() != truth.blocks.size())
            throw InvalidArgument("phase configuration does not match the channel realization");
        std::complex<double> sum{0.0, 0.0};
        for (std::size_t i = 0; i < truth.blocks.size(); ++i)
        {
            const auto &h = truth.blocks[i].h;
            const auto &phi = phases.phases[i];
            if (phi.size() != h.size())
                throw InvalidArgument("phase configuration does not match the channel realization");
            for (std::size_t m = 0; m < h.size(); ++m)
                sum += phi[m] * h[m];
        }
        return std::norm(sum);
    }

    double instantaneous_rate(const ChannelRealization &truth, const PhaseConfiguration &phases, double q,
                              double sigma_n2)
    {
        return ergodic_capacity_bound(combined_gain(truth, phases), q, sigma_n2);
    }

    double ergodic_capacity_bound(double gain, double q, double sigma_n2)
    {
        if (!(gain >= 0.0))
            throw InvalidArgument("channel gain must be non-negative");
        if (!(q > 0.0) || !(sigma_n2 > 0.0))
            throw InvalidArgument("q and sigma_n^2 must be positive");
        return std::log2(1.0 + q * gain / sigma_n2);
    }

    double high_snr_rate(double gain, double q, double sigma_n2)
    {
        return std::log2(q * gain / sigma_n2);
    }

    double low_snr_rate(double gain, double q, double sigma_n2)
    {
        return q * gain / sigma_n2 / std::numbers::ln2;
    }
}
