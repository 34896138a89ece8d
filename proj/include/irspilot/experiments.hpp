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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irspilot/channel.hpp"
#include "irspilot/montecarlo.hpp"

namespace irspilot
{
    enum class SweepVariable
    {
        user_x,    // user x coordinate, meters
        user_y,    // user y coordinate, meters
        elements,  // M of every IRS
        irs_count, // first K IRSs of the list are deployed
        pilot_dbm  // average pilot power p, dBm
    };

    std::string_view to_string(SweepVariable v);
    std::optional<SweepVariable> parse_sweep_variable(std::string_view name);

    // One curve family inside an experiment: overrides applied before the sweep.
    struct Variant
    {
        std::string label;
        std::optional<std::uint32_t> elements; // M of every IRS
        std::optional<double> pilot_power;     // p, watts

        bool operator==(const Variant &) const = default;
    };

    struct ExperimentSpec
    {
        std::string name = "custom";
        ScenarioConfig scenario;
        Position3D user{0.0, 0.0, 0.0};
        SweepVariable sweep = SweepVariable::user_y;
        double sweep_start = 0.0;
        double sweep_stop = 0.0;
        double sweep_step = 1.0;
        std::vector<Scheme> schemes;
        std::vector<IrsMask> masks;   // empty: all IRSs on
        std::vector<Variant> variants; // empty: the scenario as given
        std::optional<std::uint32_t> total_elements; // irs_count sweeps: M_k = total / K
        std::uint64_t n_trials = 1000;
        std::uint64_t master_seed = 1;
        double min_snr_gamma = 10.0;
        std::string output_path;

        unsigned threads = 0; // execution detail, not part of the file format

        bool operator==(const ExperimentSpec &other) const;

        // Throws InvalidArgument naming the first problem.
        void validate() const;

        std::vector<double> sweep_values() const;
    };

    const std::vector<std::string> &builtin_experiment_names();

    // Built-in preset (fig4, fig6, fig7, fig8,
    // fig9, fig10, fig12, fig13). Random IRS placements come from master_seed.
    ExperimentSpec builtin_experiment(std::string_view name, std::uint64_t master_seed = 1);

    // Scenario for one sweep point of one variant (before masking).
    ScenarioConfig scenario_at(const ExperimentSpec &spec, const Variant &variant, double sweep_value,
                               Position3D &user);

    // Uniform point in a disc (polar sampling, r = R sqrt(u)).
    Position3D sample_in_disc(RandomStream &stream, const Position3D &centre, double radius, double height);

    struct ResultRow
    {
        double sweep = 0.0;
        std::string strategy; // scheme, or scheme/variant when the spec has variants
        std::string mask;
        double mean_rate = 0.0;
        double std_error = 0.0;
        double bound = 0.0;
        std::optional<double> papr_db;            // empty for schemes without pilots
        std::vector<std::optional<double>> power; // p_k in watts; empty when IRS k is off or absent
    };

    inline constexpr std::string_view csv_schema_version = "1";

    // sweep,strategy,mask,mean_rate,std_err,bound,papr_db,p_1..p_K
    std::string csv_header(std::size_t num_power_columns);
    std::string format_csv(const std::vector<ResultRow> &rows, std::size_t num_power_columns);

    // Largest IRS count any sweep point of the spec deploys.
    std::size_t max_irs_count(const ExperimentSpec &spec);

    // Evaluates every (sweep value, variant, scheme, mask) in that nesting order. When
    // output_path is set, writes the CSV and <output_path>.manifest.json.
    std::vector<ResultRow> run_experiment(const ExperimentSpec &spec);

    // Experiment files: scenario keys plus
    //   name, user = x y z, sweep = user_x|user_y|elements|irs_count|pilot_dbm,
    //   sweep_start, sweep_stop, sweep_step, schemes = a b ..., masks = 11 10 ...,
    //   variant = LABEL [elements=M] [pilot_power_dbm=P | pilot_power_w=W] (repeatable),
    //   total_elements, n_trials, seed, gamma, out.
    ExperimentSpec parse_experiment(std::string_view text);
    std::string emit_experiment(const ExperimentSpec &spec);
    ExperimentSpec load_experiment(const std::filesystem::path &path);

    std::string manifest_json(const ExperimentSpec &spec, std::size_t row_count);
}
