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

#include <vector>

#include "irspilot/allocation.hpp"

namespace irspilot
{
    enum class OracleMode
    {
        per_element, // one free power per reflecting element; sum M_k <= 6
        per_irs      // one free power per IRS (equal within an IRS); K <= 6
    };

    struct OracleResult
    {
        std::vector<double> per_element_power; // always filled, IRS 1 first
        std::vector<double> per_irs_power;     // filled in per_irs mode
        double objective = 0.0;
        OracleMode mode = OracleMode::per_irs;
    };

    // Exhaustive maximization of phi over the energy simplex. Every grid point splits
    // the total pilot energy into V strictly positive shares that are multiples of
    // grid_step (V = number of free variables). Ties go to the lexicographically
    // smallest share vector. The best grid point is then polished by a pairwise
    // pattern search that moves energy between variables.
    //
    // Throws Intractable when the grid would be too large, naming per-IRS mode
    // when the per-element search was asked for on a big problem.
    OracleResult brute_force_oracle(const AllocationProblem &problem, double grid_step,
                                    OracleMode mode = OracleMode::per_irs);
}
