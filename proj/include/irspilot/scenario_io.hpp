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

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "irspilot/channel.hpp"

// Scenario files are plain "key = value" lines; '#' starts a comment. Example:
//
//   bs = 0 0 10
//   irs = 50 10 10 100          # x y z M, one line per IRS in order
//   irs = 50 -10 10 100
//   downlink_power_dbm = 40
//   pilot_power_dbm = -13
//   noise_bs_dbm = -110
//   noise_user_dbm = -90
//   ref_path_loss_db = -20
//   exponent_bs_irs = 2.2
//   exponent_irs_user = 2.8
//   rician_bs_irs = inf
//   rician_irs_user = 0
//   user_leg_distance = 3d      # or horizontal
//
// Powers may also be given in watts with a _w suffix (pilot_power_w = 1e-3) and the
// reference path loss linearly as ref_path_loss. Missing keys keep their defaults.

namespace irspilot
{
    struct KeyValue
    {
        std::string key;
        std::string value;
        std::size_t line = 0;
    };

    // Splits text into key/value pairs. Throws ParseError on lines without '='.
    std::vector<KeyValue> parse_key_values(std::string_view text);

    // Applies one scenario key. Returns false when the key is not a scenario key.
    bool apply_scenario_key(ScenarioConfig &scenario, const KeyValue &kv);

    // Parses a complete scenario; unknown keys are errors. Validates the result.
    ScenarioConfig parse_scenario(std::string_view text);

    // Canonical text form; parse_scenario(emit_scenario(s)) == s bit for bit.
    std::string emit_scenario(const ScenarioConfig &scenario);

    ScenarioConfig load_scenario(const std::filesystem::path &path);
    void save_scenario(const std::filesystem::path &path, const ScenarioConfig &scenario);

    std::string read_text_file(const std::filesystem::path &path);
    void write_text_file(const std::filesystem::path &path, std::string_view text);

    // Shortest decimal text that reads back as the same double; "inf" for infinity.
    std::string format_double(double value);

    // Strict number parsing for file values. `line` is used in error messages.
    double parse_number(std::string_view text, std::size_t line);
    std::vector<double> parse_numbers(std::string_view text, std::size_t line);
    Position3D parse_position(std::string_view text, std::size_t line);
    std::string format_position(const Position3D &p);
}
