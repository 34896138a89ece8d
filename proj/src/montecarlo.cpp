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

#include "irspilot/montecarlo.hpp"
#include "irspilot/capacity.hpp"
#include "irspilot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace irspilot
{
    IrsMask all_on(std::size_t num_irs)
    {
        return IrsMask(num_irs, true);
    }

    std::string mask_to_string(const IrsMask &mask)
    {
        std::string s;
        for (bool on : mask)
            s += on ? '1' : '0';
        return s;
    }

    IrsMask parse_mask(std::string_view bits)
    {
        if (bits.empty())
            throw InvalidArgument("empty IRS mask");
        IrsMask mask;
        for (char c : bits)
        {
            if (c != '0' && c != '1')
                throw InvalidArgument("IRS mask must be a string of 0 and 1, got '" + std::string(bits) + "'");
            mask.push_back(c == '1');
        }
        return mask;
    }

    std::vector<std::uint16_t> active_indices(const IrsMask &mask)
    {
        std::vector<std::uint16_t> out;
        for (std::size_t k = 0; k < mask.size(); ++k)
            if (mask[k])
                out.push_back(static_cast<std::uint16_t>(k));
        return out;
    }

    std::string_view to_string(Scheme s)
    {
        switch (s)
        {
        case Scheme::identical:
            return "identical";
        case Scheme::refined:
            return "refined";
        case Scheme::simplified:
            return "simplified";
        case Scheme::exact:
            return "exact";
        case Scheme::perfect_csi:
            return "perfect-csi";
        case Scheme::random_phase:
            return "random-phase";
        }
        return "identical";
    }

    std::optional<Scheme> parse_scheme(std::string_view name)
    {
        for (auto s : {Scheme::identical, Scheme::refined, Scheme::simplified, Scheme::exact, Scheme::perfect_csi,
                       Scheme::random_phase})
            if (name == to_string(s))
                return s;
        if (name == "exact-numeric")
            return Scheme::exact;
        return std::nullopt;
    }

    bool uses_pilots(Scheme s)
    {
        return s != Scheme::perfect_csi && s != Scheme::random_phase;
    }

    std::optional<Strategy> strategy_of(Scheme s)
    {
        switch (s)
        {
        case Scheme::identical:
            return Strategy::identical;
        case Scheme::refined:
            return Strategy::refined;
        case Scheme::simplified:
            return Strategy::simplified;
        case Scheme::exact:
            return Strategy::exact;
        default:
            return std::nullopt;
        }
    }

    namespace
    {
        void check_mask(const ScenarioConfig &scenario, const IrsMask &mask)
        {
            if (mask.size() != scenario.num_irs())
                throw InvalidArgument("IRS mask has " + std::to_string(mask.size()) + " entries for " +
                                      std::to_string(scenario.num_irs()) + " IRSs");
            if (std::none_of(mask.begin(), mask.end(), [](bool b) { return b; }))
                throw InvalidArgument("IRS mask selects no IRS");
        }
    }

    AllocationProblem masked_problem(const ScenarioConfig &scenario, const LinkStatistics &stats,
                                     const IrsMask &mask, double min_snr_gamma)
    {
        check_mask(scenario, mask);
        AllocationProblem problem;
        std::size_t active_elements = 0;
        for (std::size_t k = 0; k < mask.size(); ++k)
        {
            if (!mask[k])
                continue;
            problem.beta.push_back(std::sqrt(stats.beta2[k]));
            problem.elements.push_back(scenario.irs_list[k].num_elements);
            active_elements += scenario.irs_list[k].num_elements;
        }
        problem.budget = scenario.avg_pilot_power * static_cast<double>(scenario.total_elements()) /
                         static_cast<double>(active_elements);
        problem.sigma_z2 = scenario.noise_bs;
        problem.min_snr_gamma = min_snr_gamma;
        problem.validate();
        return problem;
    }

    PilotAllocation allocate_for(const ScenarioConfig &scenario, const Position3D &user, Strategy strategy,
                                 const IrsMask &mask, double min_snr_gamma)
    {
        scenario.validate();
        const auto stats = link_statistics(scenario, user);
        return allocate(strategy, masked_problem(scenario, stats, mask, min_snr_gamma));
    }

    namespace
    {
        TrialOutcome trial_with_stats(const ScenarioConfig &scenario, const LinkStatistics &stats,
                                      const PilotAllocation *allocation, const std::vector<std::uint16_t> &active,
                                      std::uint64_t master_seed, std::uint64_t trial, Scheme scheme)
        {
            const auto truth = sample_channels_subset(stats, scenario.irs_list, active, master_seed, trial,
                                                      scenario.rician_bs_irs, scenario.rician_irs_user);
            PhaseConfiguration phases;
            switch (scheme)
            {
            case Scheme::perfect_csi:
                phases = perfect_phases(truth);
                break;
            case Scheme::random_phase:
                phases = random_phases(truth, master_seed, trial);
                break;
            default:
                phases = configure_phases(estimate_ls(truth, *allocation, scenario.noise_bs, master_seed, trial));
                break;
            }
            TrialOutcome out;
            out.gain = combined_gain(truth, phases);
            out.rate = ergodic_capacity_bound(out.gain, scenario.downlink_power, scenario.noise_user);
            return out;
        }

        void check_allocation(const PilotAllocation &allocation, std::size_t active)
        {
            if (allocation.power.size() != active)
                throw InvalidArgument("pilot allocation has " + std::to_string(allocation.power.size()) +
                                      " entries for " + std::to_string(active) + " active IRSs");
            allocation.validate();
        }

        void mean_and_error(const std::vector<double> &values, double &mean, double &std_error)
        {
            const double n = static_cast<double>(values.size());
            mean = compensated_sum(values) / n;
            if (values.size() < 2)
            {
                std_error = 0.0;
                return;
            }
            std::vector<double> sq(values.size());
            for (std::size_t i = 0; i < values.size(); ++i)
                sq[i] = (values[i] - mean) * (values[i] - mean);
            std_error = std::sqrt(compensated_sum(sq) / (n - 1.0) / n);
        }
    }

    TrialOutcome run_trial(const ScenarioConfig &scenario, const Position3D &user, const PilotAllocation &allocation,
                           const IrsMask &mask, std::uint64_t master_seed, std::uint64_t trial, Scheme scheme)
    {
        scenario.validate();
        check_mask(scenario, mask);
        const auto active = active_indices(mask);
        if (uses_pilots(scheme))
            check_allocation(allocation, active.size());
        const auto stats = link_statistics(scenario, user);
        return trial_with_stats(scenario, stats, &allocation, active, master_seed, trial, scheme);
    }

    RateReport ergodic_rate(const ScenarioConfig &scenario, const Position3D &user, const PilotAllocation &allocation,
                            const IrsMask &mask, std::uint64_t n_trials, std::uint64_t master_seed, Scheme scheme,
                            unsigned threads)
    {
        scenario.validate();
        check_mask(scenario, mask);
        if (n_trials < 1)
            throw InvalidArgument("n_trials must be at least 1");
        const auto active = active_indices(mask);
        if (uses_pilots(scheme))
            check_allocation(allocation, active.size());
        const auto stats = link_statistics(scenario, user);

        std::vector<double> rates(n_trials), gains(n_trials);
        parallel_for(n_trials, threads, [&](std::size_t t)
                     {
                         const auto o = trial_with_stats(scenario, stats, &allocation, active, master_seed, t, scheme);
                         rates[t] = o.rate;
                         gains[t] = o.gain; });

        RateReport r;
        r.n_trials = n_trials;
        r.single_trial = n_trials == 1;
        r.scheme = scheme;
        r.mask = mask;
        mean_and_error(rates, r.mean_rate, r.std_error);
        mean_and_error(gains, r.mean_gain, r.gain_std_error);

        std::vector<double> beta2;
        std::vector<std::uint32_t> elements;
        for (auto k : active)
        {
            beta2.push_back(stats.beta2[k]);
            elements.push_back(scenario.irs_list[k].num_elements);
        }
        GainBreakdown g;
        if (scheme == Scheme::perfect_csi)
            g = expected_gain_perfect_csi(beta2, elements);
        else if (scheme == Scheme::random_phase)
            g = expected_gain_random_phase(beta2, elements);
        else
            g = expected_gain(beta2, elements, allocation.power, scenario.noise_bs);
        r.closed_form_gain = g.total;
        r.closed_form_bound = ergodic_capacity_bound(g.total, scenario.downlink_power, scenario.noise_user);
        return r;
    }

    std::vector<SelectionRow> irs_selection_sweep(const ScenarioConfig &scenario,
                                                  const std::vector<Position3D> &users,
                                                  const std::vector<Scheme> &schemes,
                                                  const std::vector<IrsMask> &masks, std::uint64_t n_trials,
                                                  std::uint64_t master_seed, double min_snr_gamma, unsigned threads)
    {
        if (users.empty() || schemes.empty() || masks.empty())
            throw InvalidArgument("IRS selection sweep needs users, schemes and masks");
        std::vector<SelectionRow> rows;
        for (const auto &user : users)
            for (auto scheme : schemes)
                for (const auto &mask : masks)
                {
                    SelectionRow row;
                    row.user = user;
                    row.scheme = scheme;
                    row.mask = mask;
                    PilotAllocation alloc;
                    if (auto strategy = strategy_of(scheme))
                    {
                        alloc = allocate_for(scenario, user, *strategy, mask, min_snr_gamma);
                        row.allocation = alloc;
                    }
                    row.report = ergodic_rate(scenario, user, alloc, mask, n_trials, master_seed, scheme, threads);
                    rows.push_back(std::move(row));
                }
        return rows;
    }

    void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &fn)
    {
        if (threads == 0)
            threads = std::max(1u, std::thread::hardware_concurrency());
        threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
        if (threads <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }

        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w)
        {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(n, begin + chunk);
            if (begin >= end)
                break;
            pool.emplace_back([&, begin, end]
                              {
                                  try
                                  {
                                      for (std::size_t i = begin; i < end; ++i)
                                          fn(i);
                                  }
                                  catch (...)
                                  {
                                      std::lock_guard lock(failure_mutex);
                                      if (!failure)
                                          failure = std::current_exception();
                                  } });
        }
        for (auto &t : pool)
            t.join();
        if (failure)
            std::rethrow_exception(failure);
    }

    double compensated_sum(const std::vector<double> &values)
    {
        double sum = 0.0, c = 0.0;
        for (double v : values)
        {
            const double t = sum + v;
            if (std::abs(sum) >= std::abs(v))
                c += (sum - t) + v;
            else
                c += (v - t) + sum;
            sum = t;
        }
        return sum + c;
    }
}
