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

// Log-domain conversions. Everything inside the library is linear (watts,
// linear gains); these are used only when reading or writing files and flags.

namespace irspilot
{
    // p_W = 10^((p_dBm - 30) / 10)
    double dbm_to_watts(double dbm);
    double watts_to_dbm(double watts);

    double db_to_linear(double db);
    double linear_to_db(double linear);

    // A dBm value that maps back to exactly `watts` under dbm_to_watts, so that
    // emitted files reload bit-identically. Falls back to watts_to_dbm when no
    // neighbouring double round-trips.
    double dbm_for_exact_watts(double watts);
    double db_for_exact_linear(double linear);
}
