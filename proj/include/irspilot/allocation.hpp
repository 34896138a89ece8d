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
#include <vector>

#include "irspilot/channel.hpp"
#include "irspilot/estimation.hpp"

namespace irspilot
{
    // Pilot power allocation across K IRSs under the average-power budget
    //   sum_k M_k p_k = (sum_k M_k) p.
    //
    // The objective is the pilot-dependent part of the average channel gain,
    //   phi(P) = sum_k beta_k^4 sum_m a_{k,m} sum_{m'!=m} a_{k,m'}
    //          + sum_k sum_m beta_k^2 a_{k,m} sum_{j!=k} sum_n beta_j^2 a_{j,n},
    // with a = 1 / sqrt(beta^2 + sigma_z^2 / p). Maximizing phi maximizes the
    // closed-form ergodic rate bound.
    struct AllocationProblem
    {
        std::vector<double> beta;            // amplitude beta_k = sqrt(beta_k^2)
        std::vector<std::uint32_t> elements; // M_k
        double budget = 0.0;                 // average pilot power p, watts
        double sigma_z2 = 0.0;               // BS noise power, watts
        double min_snr_gamma = 10.0;         // moderate-SNR validity threshold on p beta_k^2 / sigma_z^2

        void validate() const;

        std::size_t num_irs() const { return beta.size(); }
        std::size_t total_elements() const;
        double total_energy() const { return static_cast<double>(total_elements()) * budget; }

        static AllocationProblem from_link(const LinkStatistics &stats, std::span<const IrsSpec> irs_list,
                                           double budget, double sigma_z2, double min_snr_gamma = 10.0);
    };

    // phi evaluated element by element, as a literal double sum over all element
    // pairs. `per_element_powers` lists IRS 1's M_1 powers first, then IRS 2's, ...
    double objective_phi(std::span<const double> per_element_powers, const AllocationProblem &problem);

    // phi for equal powers inside each IRS:
    //   sum_k M_k (M_k - 1) beta_k^4 a_k^2 + sum_k M_k beta_k^2 a_k sum_{j!=k} M_j beta_j^2 a_j.
    double objective_phi_per_irs(std::span<const double> per_irs_powers, const AllocationProblem &problem);

    std::vector<double> expand_per_element(std::span<const double> per_irs_powers, const AllocationProblem &problem);

    // p_k = p.
    PilotAllocation allocate_identical(const AllocationProblem &problem);

    // Inverse square-root law: p_k = (sum_j M_j) p / (sqrt(beta_k) sum_j M_j / sqrt(beta_j)).
    PilotAllocation allocate_simplified(const AllocationProblem &problem);

    // p_k proportional to sqrt((1/beta_k) sum_j beta_j M_j - 1), normalized to the budget.
    // Throws DegenerateAllocation carrying k when a radicand is not positive.
    PilotAllocation allocate_refined(const AllocationProblem &problem);

    struct ExactOptions
    {
        double tolerance = 1e-10; // relative stationarity residual
        int max_iterations = 500; // fixed-point sweeps over the cross-IRS terms
    };

    struct StationarySolution
    {
        PilotAllocation allocation;
        double multiplier = 0.0; // lambda of the per-element stationarity condition
        double residual = 0.0;   // max_k |G_k - lambda| / lambda
        int iterations = 0;
    };

    // Solves the K stationarity equations
    //   G_k(p) = sigma^2 beta_k^2 / (p_k^2 (beta_k^2 + sigma^2/p_k)^{3/2}) sum_j beta_j^2 M_j / sqrt(beta_j^2 + sigma^2/p_j)
    //          - sigma^2 beta_k^4 / (p_k^2 (beta_k^2 + sigma^2/p_k)^2) = lambda
    // together with the budget. Outer bisection on lambda; per-IRS safeguarded Newton
    // for p_k with the cross-IRS sum frozen; fixed-point sweeps over the frozen sums.
    // Starts from the identical allocation. Throws NoConvergence with the final residual.
    StationarySolution solve_stationarity(const AllocationProblem &problem, const ExactOptions &options = {});

    PilotAllocation allocate_exact(const AllocationProblem &problem, double tolerance = 1e-10,
                                   int max_iterations = 500);

    // G_k at the given per-IRS powers (the left side of the stationarity equations).
    std::vector<double> stationarity_gradient(const AllocationProblem &problem, std::span<const double> powers);

    // Relative spread of G_k around their M-weighted mean; zero at a stationary point.
    double stationarity_residual(const AllocationProblem &problem, std::span<const double> powers);

    PilotAllocation allocate(Strategy strategy, const AllocationProblem &problem);

    // True when p_k beta_k^2 / sigma_z^2 >= gamma for every IRS, i.e. the regime in
    // which the refined and simplified closed forms are derived.
    bool in_moderate_snr_regime(const AllocationProblem &problem, const PilotAllocation &allocation);

    struct PaprReport
    {
        double papr_linear = 1.0; // max_k p_k / p
        double papr_db = 0.0;
        double upper_bound_linear = 1.0; // sqrt(beta_max / beta_min)
        double upper_bound_db = 0.0;
    };

    PaprReport papr(const PilotAllocation &allocation, const AllocationProblem &problem);
}
