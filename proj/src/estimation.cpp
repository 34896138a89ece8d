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

#include "irspilot/estimation.hpp"
#include "irspilot/errors.hpp"
#include "irspilot/log.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace irspilot
{
    std::string_view to_string(Strategy s)
    {
        switch (s)
        {
        case Strategy::identical:
            return "identical";
        case Strategy::refined:
            return "refined";
        case Strategy::simplified:
            return "simplified";
        case Strategy::exact:
            return "exact";
        case Strategy::custom:
            return "custom";
        }
        return "custom";
    }

    std::optional<Strategy> parse_strategy(std::string_view name)
    {
        for (auto s : {Strategy::identical, Strategy::refined, Strategy::simplified, Strategy::exact, Strategy::custom})
            if (name == to_string(s))
                return s;
        if (name == "exact-numeric")
            return Strategy::exact;
        return std::nullopt;
    }

    double PilotAllocation::total_energy() const
    {
        double total = 0.0;
        for (std::size_t k = 0; k < power.size(); ++k)
            total += static_cast<double>(elements[k]) * power[k];
        return total;
    }

    void PilotAllocation::validate() const
    {
        if (power.empty())
            throw InvalidArgument("pilot allocation is empty");
        if (power.size() != elements.size())
            throw InvalidArgument("pilot allocation: powers and element counts differ in length");
        if (!(budget > 0.0) || !std::isfinite(budget))
            throw InvalidArgument("pilot allocation: budget must be positive");
        double slots = 0.0;
        for (std::size_t k = 0; k < power.size(); ++k)
        {
            if (!(power[k] > 0.0) || !std::isfinite(power[k]))
                throw InvalidArgument("pilot allocation: p_" + std::to_string(k + 1) + " must be positive");
            if (elements[k] < 1)
                throw InvalidArgument("pilot allocation: element counts must be >= 1");
            slots += elements[k];
        }
        const double target = slots * budget;
        if (std::abs(total_energy() - target) > 1e-9 * target)
            throw InvalidArgument("pilot allocation violates the average power budget");
    }

    std::size_t pilot_overhead(std::span<const IrsSpec> irs_list)
    {
        return std::accumulate(irs_list.begin(), irs_list.end(), std::size_t{0},
                               [](std::size_t acc, const IrsSpec &irs) { return acc + irs.num_elements; });
    }

    EstimationResult estimate_ls(const ChannelRealization &truth, const PilotAllocation &allocation,
                                 double sigma_z2, std::uint64_t seed, std::uint64_t trial)
    {
        if (allocation.power.size() != truth.blocks.size())
            throw InvalidArgument("pilot allocation does not cover the sounded IRSs");
        if (!(sigma_z2 > 0.0))
            throw InvalidArgument("sigma_z^2 must be positive");

        EstimationResult out;
        out.estimates.reserve(truth.blocks.size());
        out.error_variance.reserve(truth.blocks.size());
        for (std::size_t i = 0; i < truth.blocks.size(); ++i)
        {
            const auto &block = truth.blocks[i];
            if (!(allocation.power[i] > 0.0))
                throw InvalidArgument("pilot powers must be positive");
            const double delta2 = sigma_z2 / allocation.power[i];

            RandomStream noise({seed, trial, block.irs, StreamPurpose::estimation_noise});
            IrsChannel est{block.irs, {}};
            est.h.resize(block.h.size());
            for (std::size_t m = 0; m < block.h.size(); ++m)
                est.h[m] = block.h[m] + noise.complex_normal(delta2);
            out.estimates.push_back(std::move(est));
            out.error_variance.push_back(delta2);
        }
        return out;
    }

    namespace
    {
        std::complex<double> align(std::complex<double> estimate, std::size_t &degenerate)
        {
            const double magnitude = std::abs(estimate);
            if (magnitude == 0.0)
            {
                ++degenerate;
                return {1.0, 0.0};
            }
            const auto phi = std::conj(estimate) / magnitude;
            // Renormalize so |phi| = 1 holds to the last bit rounding allows.
            return phi / std::abs(phi);
        }
    }

    PhaseConfiguration configure_phases(const EstimationResult &est)
    {
        PhaseConfiguration cfg;
        cfg.phases.reserve(est.estimates.size());
        for (const auto &block : est.estimates)
        {
            std::vector<std::complex<double>> phases(block.h.size());
            for (std::size_t m = 0; m < block.h.size(); ++m)
            {
                if (!std::isfinite(block.h[m].real()) || !std::isfinite(block.h[m].imag()))
                    throw InvalidArgument("channel estimate is not finite");
                phases[m] = align(block.h[m], cfg.degenerate);
            }
            cfg.phases.push_back(std::move(phases));
        }
        if (cfg.degenerate > 0)
            log_message(LogLevel::warning, std::to_string(cfg.degenerate) +
                                               " zero channel estimate(s); reflection coefficient set to 1");
        return cfg;
    }

    PhaseConfiguration perfect_phases(const ChannelRealization &truth)
    {
        PhaseConfiguration cfg;
        for (const auto &block : truth.blocks)
        {
            std::vector<std::complex<double>> phases(block.h.size());
            for (std::size_t m = 0; m < block.h.size(); ++m)
                phases[m] = align(block.h[m], cfg.degenerate);
            cfg.phases.push_back(std::move(phases));
        }
        return cfg;
    }

    PhaseConfiguration random_phases(const ChannelRealization &truth, std::uint64_t seed, std::uint64_t trial)
    {
        PhaseConfiguration cfg;
        for (const auto &block : truth.blocks)
        {
            RandomStream stream({seed, trial, block.irs, StreamPurpose::random_phase});
            std::vector<std::complex<double>> phases(block.h.size());
            for (auto &phi : phases)
                phi = stream.unit_phase();
            cfg.phases.push_back(std::move(phases));
        }
        return cfg;
    }
}
