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
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irspilot/allocation.hpp"
#include "irspilot/channel.hpp"
#include "irspilot/estimation.hpp"

namespace irspilot
{
    // On/off state per IRS, indexed like ScenarioConfig::irs_list.
    using IrsMask = std::vector<bool>;

    IrsMask all_on(std::size_t num_irs);
    std::string mask_to_string(const IrsMask &mask); // "110" = IRS 1 and 2 on
    IrsMask parse_mask(std::string_view bits);       // throws InvalidArgument
    std::vector<std::uint16_t> active_indices(const IrsMask &mask);

    // How the reflection phases of a trial are chosen.
    enum class Scheme
    {
        identical,
        refined,
        simplified,
        exact,
        perfect_csi, // phases from the true channel, no pilots involved
        random_phase // uniform phases, no CSI
    };

    std::string_view to_string(Scheme s);
    std::optional<Scheme> parse_scheme(std::string_view name);
    bool uses_pilots(Scheme s);
    std::optional<Strategy> strategy_of(Scheme s);

    // Allocation problem over the active IRSs. Switching IRSs off keeps the total pilot
    // energy (sum_k M_k) p of the full deployment, so the active elements share it:
    // the active average is p * N_all / N_active.
    AllocationProblem masked_problem(const ScenarioConfig &scenario, const LinkStatistics &stats,
                                     const IrsMask &mask, double min_snr_gamma = 10.0);

    // Pilot allocation for the active IRSs, one entry per active IRS in index order.
    PilotAllocation allocate_for(const ScenarioConfig &scenario, const Position3D &user, Strategy strategy,
                                 const IrsMask &mask, double min_snr_gamma = 10.0);

    struct TrialOutcome
    {
        double rate = 0.0; // bits/s/Hz
        double gain = 0.0; // |sum phi h|^2
    };

    // One end-to-end draw: sample the active IRSs, estimate, configure phases, evaluate
    // the rate. Inactive IRSs are excluded from the sum entirely. Throws on an empty mask.
    TrialOutcome run_trial(const ScenarioConfig &scenario, const Position3D &user, const PilotAllocation &allocation,
                           const IrsMask &mask, std::uint64_t master_seed, std::uint64_t trial = 0,
                           Scheme scheme = Scheme::identical);

    struct RateReport
    {
        double mean_rate = 0.0;
        double std_error = 0.0;
        std::uint64_t n_trials = 0;
        bool single_trial = false; // std_error is undefined and reported as 0
        double closed_form_bound = 0.0;
        double closed_form_gain = 0.0;
        double mean_gain = 0.0;
        double gain_std_error = 0.0;
        Scheme scheme = Scheme::identical;
        IrsMask mask;
    };

    // Mean and standard error over trials 0..n_trials-1 of master_seed. Trials run on
    // `threads` workers (0 = hardware concurrency); the reduction order is fixed by the
    // trial index, so the report does not depend on the thread count.
    RateReport ergodic_rate(const ScenarioConfig &scenario, const Position3D &user, const PilotAllocation &allocation,
                            const IrsMask &mask, std::uint64_t n_trials, std::uint64_t master_seed,
                            Scheme scheme = Scheme::identical, unsigned threads = 0);

    struct SelectionRow
    {
        Position3D user;
        Scheme scheme = Scheme::identical;
        IrsMask mask;
        std::optional<PilotAllocation> allocation; // empty for schemes without pilots
        RateReport report;
    };

    // Cartesian evaluation ordered by user, then scheme, then mask.
    std::vector<SelectionRow> irs_selection_sweep(const ScenarioConfig &scenario,
                                                  const std::vector<Position3D> &users,
                                                  const std::vector<Scheme> &schemes,
                                                  const std::vector<IrsMask> &masks, std::uint64_t n_trials,
                                                  std::uint64_t master_seed, double min_snr_gamma = 10.0,
                                                  unsigned threads = 0);

    // Runs fn(i) for i in [0, n) on up to `threads` workers in contiguous blocks.
    void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &fn);

    // Neumaier-compensated sum in index order.
    double compensated_sum(const std::vector<double> &values);
}
