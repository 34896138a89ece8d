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

#include "irspilot/units.hpp"

#include <cmath>
#include <limits>

namespace irspilot
{
    double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
    double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }
    double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

    namespace
    {
        template <class Forward, class Inverse>
        double exact_preimage(double target, Forward forward, Inverse inverse)
        {
            const double guess = inverse(target);
            if (!std::isfinite(guess) || forward(guess) == target)
                return guess;

            // Walk outwards one ulp at a time; log/pow round trips are within a few ulps.
            double up = guess, down = guess;
            for (int i = 0; i < 64; ++i)
            {
                up = std::nextafter(up, std::numeric_limits<double>::infinity());
                if (forward(up) == target)
                    return up;
                down = std::nextafter(down, -std::numeric_limits<double>::infinity());
                if (forward(down) == target)
                    return down;
            }
            return guess;
        }
    }

    double dbm_for_exact_watts(double watts)
    {
        return exact_preimage(watts, dbm_to_watts, watts_to_dbm);
    }

    double db_for_exact_linear(double linear)
    {
        return exact_preimage(linear, db_to_linear, linear_to_db);
    }
}
