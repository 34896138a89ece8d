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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "irspilot/channel.hpp"

namespace irspilot
{
    enum class Strategy
    {
        identical,
        refined,
        simplified,
        exact,
        custom
    };

    std::string_view to_string(Strategy s);
    std::optional<Strategy> parse_strategy(std::string_view name);

    // Per-IRS pilot powers. Every element of IRS k is sounded with power[k] (the
    // within-IRS powers of an optimal allocation are equal, so only K values are kept).
    struct PilotAllocation
    {
        std::vector<double> power;           // p_k, watts
        std::vector<std::uint32_t> elements; // M_k of the IRS each entry belongs to
        double budget = 0.0;                 // average power p per pilot slot, watts
        Strategy strategy = Strategy::custom;

        // Throws InvalidArgument unless p_k > 0 and sum M_k p_k = (sum M_k) p within 1e-9.
        void validate() const;

        double total_energy() const; // sum_k M_k p_k
    };

    // ON/OFF protocol: one slot per reflecting element.
    std::size_t pilot_overhead(std::span<const IrsSpec> irs_list);

    struct EstimationResult
    {
        std::vector<IrsChannel> estimates; // h_hat = h + eps, same layout as the truth
        std::vector<double> error_variance; // delta_k^2 = sigma_z^2 / p_k per block
    };

    // Least-squares estimates of the cascaded coefficients. The pilot symbol and the
    // sounding reflection coefficient cancel in the LS estimate, so the error model
    // eps ~ CN(0, sigma_z^2 / p_k) is drawn directly. Noise comes from its own stream
    // per IRS, independent of the channel draw. allocation.power[i] sounds truth.blocks[i].
    EstimationResult estimate_ls(const ChannelRealization &truth, const PilotAllocation &allocation,
                                 double sigma_z2, std::uint64_t seed, std::uint64_t trial = 0);

    struct PhaseConfiguration
    {
        std::vector<std::vector<std::complex<double>>> phases; // |phi| = 1 for every element
        std::size_t degenerate = 0; // estimates that were exactly zero
    };

    // phi = conj(h_hat) / |h_hat|; a zero estimate gets phi = 1 and a warning.
    PhaseConfiguration configure_phases(const EstimationResult &est);

    // Phases aligned to the true channel (perfect CSI reference).
    PhaseConfiguration perfect_phases(const ChannelRealization &truth);

    // Uniformly random phases (no-CSI reference), one stream per IRS.
    PhaseConfiguration random_phases(const ChannelRealization &truth, std::uint64_t seed, std::uint64_t trial);
}
