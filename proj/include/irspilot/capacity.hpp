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

#include <cstdint>
#include <span>

#include "irspilot/channel.hpp"
#include "irspilot/estimation.hpp"

namespace irspilot
{
    // Average channel gain E{|sum_k sum_m phi_hat h|^2} split into its three sums.
    struct GainBreakdown
    {
        double diagonal = 0.0; // sum_k M_k beta_k^2
        double intra = 0.0;    // element pairs within one IRS
        double inter = 0.0;    // element pairs across different IRSs
        double total = 0.0;
    };

    // E{Re{(h* + eps*) h / |h + eps|}} for h ~ CN(0, beta2), eps ~ CN(0, delta2):
    // sqrt(pi) beta2 / (2 sqrt(beta2 + delta2)). The imaginary part has zero mean.
    double mean_alignment(double beta2, double delta2);

    // Closed-form average gain with LS estimates at per-IRS pilot powers
    // (delta_k^2 = sigma_z2 / p_k). All spans are indexed by IRS.
    GainBreakdown expected_gain(std::span<const double> beta2, std::span<const std::uint32_t> elements,
                                std::span<const double> pilot_power, double sigma_z2);

    GainBreakdown expected_gain(const LinkStatistics &stats, std::span<const IrsSpec> irs_list,
                                const PilotAllocation &allocation, double sigma_z2);

    // Error-free estimates: sum M beta^2 + pi/4 sum beta^2 M(M-1) + pi/4 sum_k M_k beta_k sum_{j!=k} M_j beta_j.
    GainBreakdown expected_gain_perfect_csi(std::span<const double> beta2, std::span<const std::uint32_t> elements);

    // Independent uniform phases: only the diagonal survives.
    GainBreakdown expected_gain_random_phase(std::span<const double> beta2, std::span<const std::uint32_t> elements);

    // |sum_k sum_m phi_{k,m} h_{k,m}|^2
    double combined_gain(const ChannelRealization &truth, const PhaseConfiguration &phases);

    // log2(1 + (q / sigma_n2) |sum phi h|^2)
    double instantaneous_rate(const ChannelRealization &truth, const PhaseConfiguration &phases, double q,
                              double sigma_n2);

    // Jensen upper bound on the ergodic rate, log2(1 + q gain / sigma_n2).
    double ergodic_capacity_bound(double gain, double q, double sigma_n2);

    // Regime approximations of E{R}: log2(E{SNR}) at high SNR, E{SNR}/ln 2 at low SNR.
    double high_snr_rate(double gain, double q, double sigma_n2);
    double low_snr_rate(double gain, double q, double sigma_n2);
}
