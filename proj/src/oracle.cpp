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

#include "irspilot/oracle.hpp"
#include "irspilot/errors.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace irspilot
{
    namespace
    {
        constexpr std::size_t max_free_variables = 6;
        constexpr double max_grid_points = 2e7;

        // Number of compositions of n into v positive parts, C(n-1, v-1).
        double composition_count(std::size_t n, std::size_t v)
        {
            if (n < v)
                return 0.0;
            double c = 1.0;
            for (std::size_t i = 1; i < v; ++i)
                c = c * static_cast<double>(n - i) / static_cast<double>(i);
            return c;
        }
    }

    OracleResult brute_force_oracle(const AllocationProblem &problem, double grid_step, OracleMode mode)
    {
        problem.validate();
        if (!(grid_step > 0.0) || grid_step >= 1.0)
            throw InvalidArgument("grid step must lie in (0, 1)");

        const std::size_t K = problem.num_irs();
        const std::size_t N = problem.total_elements();
        const double energy = problem.total_energy();

        std::size_t V = 0;
        if (mode == OracleMode::per_element)
        {
            if (N > max_free_variables)
                throw Intractable("per-element search needs sum M_k <= 6 (got " + std::to_string(N) +
                                  "); use per-IRS mode, which applies the within-IRS equality first");
            V = N;
        }
        else
        {
            if (K > max_free_variables)
                throw Intractable("per-IRS search supports at most 6 IRSs (got " + std::to_string(K) + ")");
            V = K;
        }

        const auto n = static_cast<std::size_t>(std::llround(1.0 / grid_step));
        if (n < V)
            throw InvalidArgument("grid step too coarse: every variable needs a positive share");
        if (composition_count(n, V) > max_grid_points)
            throw Intractable("grid has more than 2e7 points; increase the grid step");

        // Shares t_i of the total energy; t sums to 1.
        auto powers_of = [&](const std::vector<double> &t)
        {
            std::vector<double> p(V);
            for (std::size_t i = 0; i < V; ++i)
                p[i] = mode == OracleMode::per_element ? t[i] * energy : t[i] * energy / problem.elements[i];
            return p;
        };
        auto evaluate = [&](const std::vector<double> &t)
        {
            const auto p = powers_of(t);
            return mode == OracleMode::per_element ? objective_phi(p, problem) : objective_phi_per_irs(p, problem);
        };

        std::vector<std::size_t> parts(V, 0);
        std::vector<double> t(V);
        std::vector<double> best_t;
        double best = -std::numeric_limits<double>::infinity();

        // Lexicographic enumeration: the first part varies slowest.
        std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t i, std::size_t left)
        {
            if (i + 1 == V)
            {
                parts[i] = left;
                for (std::size_t j = 0; j < V; ++j)
                    t[j] = static_cast<double>(parts[j]) / static_cast<double>(n);
                const double value = evaluate(t);
                if (value > best)
                {
                    best = value;
                    best_t = t;
                }
                return;
            }
            const std::size_t reserve = V - i - 1;
            for (std::size_t part = 1; part + reserve <= left; ++part)
            {
                parts[i] = part;
                walk(i + 1, left - part);
            }
        };
        walk(0, n);

        // Pairwise pattern search: move h of energy share from j to i while it helps.
        double h = grid_step;
        int moves = 0;
        while (h >= 1e-12 && moves < 200000)
        {
            bool improved = false;
            for (std::size_t i = 0; i < V; ++i)
                for (std::size_t j = 0; j < V; ++j)
                {
                    if (i == j || best_t[j] - h <= 0.0)
                        continue;
                    auto trial = best_t;
                    trial[i] += h;
                    trial[j] -= h;
                    const double value = evaluate(trial);
                    ++moves;
                    if (value > best)
                    {
                        best = value;
                        best_t = std::move(trial);
                        improved = true;
                    }
                }
            if (!improved)
                h *= 0.5;
        }

        double sum = 0.0;
        for (double s : best_t)
            sum += s;
        for (auto &s : best_t)
            s /= sum;

        OracleResult out;
        out.mode = mode;
        const auto p = powers_of(best_t);
        if (mode == OracleMode::per_element)
        {
            out.per_element_power = p;
            out.objective = objective_phi(p, problem);
        }
        else
        {
            out.per_irs_power = p;
            out.per_element_power = expand_per_element(p, problem);
            out.objective = objective_phi_per_irs(p, problem);
        }
        return out;
    }
}
