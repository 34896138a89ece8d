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

#include "irspilot/experiments.hpp"
#include "irspilot/allocation.hpp"
#include "irspilot/errors.hpp"
#include "irspilot/scenario_io.hpp"
#include "irspilot/units.hpp"
#include "irspilot/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace irspilot
{
    std::string_view to_string(SweepVariable v)
    {
        switch (v)
        {
        case SweepVariable::user_x:
            return "user_x";
        case SweepVariable::user_y:
            return "user_y";
        case SweepVariable::elements:
            return "elements";
        case SweepVariable::irs_count:
            return "irs_count";
        case SweepVariable::pilot_dbm:
            return "pilot_dbm";
        }
        return "user_y";
    }

    std::optional<SweepVariable> parse_sweep_variable(std::string_view name)
    {
        for (auto v : {SweepVariable::user_x, SweepVariable::user_y, SweepVariable::elements,
                       SweepVariable::irs_count, SweepVariable::pilot_dbm})
            if (name == to_string(v))
                return v;
        return std::nullopt;
    }

    bool ExperimentSpec::operator==(const ExperimentSpec &o) const
    {
        return name == o.name && scenario == o.scenario && user == o.user && sweep == o.sweep &&
               sweep_start == o.sweep_start && sweep_stop == o.sweep_stop && sweep_step == o.sweep_step &&
               schemes == o.schemes && masks == o.masks && variants == o.variants &&
               total_elements == o.total_elements && n_trials == o.n_trials && master_seed == o.master_seed &&
               min_snr_gamma == o.min_snr_gamma && output_path == o.output_path;
    }

    std::vector<double> ExperimentSpec::sweep_values() const
    {
        if (!(sweep_step > 0.0) || !(sweep_stop >= sweep_start))
            throw InvalidArgument("sweep range must be non-empty with a positive step");
        const auto count = static_cast<std::size_t>(std::floor((sweep_stop - sweep_start) / sweep_step + 1e-9)) + 1;
        std::vector<double> out(count);
        for (std::size_t i = 0; i < count; ++i)
            out[i] = sweep_start + static_cast<double>(i) * sweep_step;
        return out;
    }

    namespace
    {
        bool valid_label(const std::string &s)
        {
            return !s.empty() && std::none_of(s.begin(), s.end(), [](char c)
                                              { return c == ' ' || c == '\t' || c == ',' || c == '"' || c == '#' || c == '/' || c == '='; });
        }
    }

    void ExperimentSpec::validate() const
    {
        scenario.validate();
        if (!valid_label(name))
            throw InvalidArgument("experiment name must be non-empty without spaces, commas, quotes or slashes");
        (void)sweep_values();
        if (schemes.empty())
            throw InvalidArgument("experiment needs at least one scheme");
        if (n_trials < 1)
            throw InvalidArgument("n_trials must be at least 1");
        if (!(min_snr_gamma > 0.0))
            throw InvalidArgument("gamma must be positive");
        if (sweep == SweepVariable::irs_count)
        {
            if (!masks.empty())
                throw InvalidArgument("masks cannot be combined with an IRS-count sweep");
            for (double v : sweep_values())
                if (v != std::floor(v) || v < 1.0 || v > static_cast<double>(scenario.num_irs()))
                    throw InvalidArgument("IRS-count sweep values must be integers between 1 and the number of listed IRSs");
                else if (total_elements && *total_elements % static_cast<std::uint32_t>(v) != 0)
                    throw InvalidArgument("total_elements " + std::to_string(*total_elements) +
                                          " is not divisible by K = " + std::to_string(static_cast<int>(v)));
        }
        else if (total_elements)
            throw InvalidArgument("total_elements only applies to an IRS-count sweep");
        if (sweep == SweepVariable::elements)
            for (double v : sweep_values())
                if (v != std::floor(v) || v < 1.0)
                    throw InvalidArgument("element-count sweep values must be positive integers");
        for (const auto &m : masks)
        {
            if (m.size() != scenario.num_irs())
                throw InvalidArgument("mask '" + mask_to_string(m) + "' does not match the IRS count");
            if (std::none_of(m.begin(), m.end(), [](bool b) { return b; }))
                throw InvalidArgument("mask selects no IRS");
        }
        std::set<std::string> labels;
        for (const auto &v : variants)
        {
            if (!valid_label(v.label))
                throw InvalidArgument("variant label '" + v.label + "' is empty or contains reserved characters");
            if (!labels.insert(v.label).second)
                throw InvalidArgument("duplicate variant label '" + v.label + "'");
            if (v.elements && *v.elements < 1)
                throw InvalidArgument("variant element count must be positive");
            if (v.pilot_power && !(*v.pilot_power > 0.0))
                throw InvalidArgument("variant pilot power must be positive");
        }
    }

    Position3D sample_in_disc(RandomStream &stream, const Position3D &centre, double radius, double height)
    {
        const double r = radius * std::sqrt(stream.uniform());
        const double theta = 2.0 * std::numbers::pi * stream.uniform();
        return {centre.x + r * std::cos(theta), centre.y + r * std::sin(theta), height};
    }

    const std::vector<std::string> &builtin_experiment_names()
    {
        static const std::vector<std::string> names{"fig4", "fig6", "fig7", "fig8", "fig9", "fig10", "fig12", "fig13"};
        return names;
    }

    namespace
    {
        ScenarioConfig reference_scenario()
        {
            ScenarioConfig s;
            s.bs_position = {0.0, 0.0, 10.0};
            s.downlink_power = dbm_to_watts(40.0);
            s.avg_pilot_power = dbm_to_watts(0.0);
            s.noise_bs = dbm_to_watts(-110.0);
            s.noise_user = dbm_to_watts(-90.0);
            s.ref_path_loss = db_to_linear(-20.0);
            s.exponent_bs_irs = 2.2;
            s.exponent_irs_user = 2.8;
            return s;
        }

        Variant pilot_variant(std::string label, double dbm, std::optional<std::uint32_t> elements = std::nullopt)
        {
            return {std::move(label), elements, dbm_to_watts(dbm)};
        }

        // Two IRSs at (50, +-10, 10) facing a user walking along x = 48.
        ExperimentSpec two_irs(std::string name, std::uint32_t m1, std::uint32_t m2)
        {
            ExperimentSpec spec;
            spec.name = std::move(name);
            spec.scenario = reference_scenario();
            spec.scenario.irs_list = {{{50.0, 10.0, 10.0}, m1}, {{50.0, -10.0, 10.0}, m2}};
            spec.scenario.user_leg = UserLegDistance::horizontal;
            spec.scenario.avg_pilot_power = dbm_to_watts(-13.0);
            spec.user = {48.0, 0.0, 0.0};
            spec.sweep = SweepVariable::user_y;
            spec.sweep_start = -16.0;
            spec.sweep_stop = 16.0;
            spec.sweep_step = 2.0;
            spec.schemes = {Scheme::identical, Scheme::simplified, Scheme::exact};
            spec.variants = {pilot_variant("p-13dBm", -13.0), pilot_variant("p-23dBm", -23.0)};
            return spec;
        }

        // K <= 6 IRSs of equal size dropped uniformly in a 20 m disc around the user.
        ExperimentSpec random_disc(std::string name, std::uint64_t master_seed)
        {
            ExperimentSpec spec;
            spec.name = std::move(name);
            spec.scenario = reference_scenario();
            spec.user = {50.0, 0.0, 0.0};
            RandomStream stream({master_seed, 0, 0, StreamPurpose::placement});
            for (int k = 0; k < 6; ++k)
                spec.scenario.irs_list.push_back({sample_in_disc(stream, spec.user, 20.0, 10.0), 1000});
            spec.sweep = SweepVariable::irs_count;
            spec.sweep_start = 1.0;
            spec.sweep_stop = 6.0;
            spec.sweep_step = 1.0;
            spec.schemes = {Scheme::identical, Scheme::exact};
            spec.variants = {pilot_variant("p0dBm", 0.0), pilot_variant("p30dBm", 30.0)};
            return spec;
        }
    }

    ExperimentSpec builtin_experiment(std::string_view name, std::uint64_t master_seed)
    {
        ExperimentSpec spec;
        if (name == "fig4")
        {
            spec.name = "fig4";
            spec.scenario = reference_scenario();
            spec.scenario.irs_list = {{{50.0, 0.0, 10.0}, 100}};
            spec.user = {50.0, 0.0, 0.0};
            spec.sweep = SweepVariable::user_y;
            spec.sweep_start = 4.0;
            spec.sweep_stop = 26.0;
            spec.sweep_step = 2.0;
            spec.schemes = {Scheme::identical};
            spec.variants = {pilot_variant("M100_p0dBm", 0.0, 100), pilot_variant("M100_p30dBm", 30.0, 100),
                             pilot_variant("M1000_p0dBm", 0.0, 1000), pilot_variant("M1000_p30dBm", 30.0, 1000)};
        }
        else if (name == "fig6" || name == "fig7")
            spec = two_irs(std::string(name), 100, 100);
        else if (name == "fig8" || name == "fig9")
            spec = two_irs(std::string(name), 1000, 100);
        else if (name == "fig10")
        {
            spec = two_irs("fig10", 1000, 100);
            spec.variants.clear();
            spec.masks = {parse_mask("11"), parse_mask("10"), parse_mask("01")};
        }
        else if (name == "fig12")
            spec = random_disc("fig12", master_seed);
        else if (name == "fig13")
        {
            spec = random_disc("fig13", master_seed);
            spec.total_elements = 1440;
        }
        else
            throw InvalidArgument("unknown experiment '" + std::string(name) +
                                  "' (expected fig4, fig6, fig7, fig8, fig9, fig10, fig12 or fig13)");
        spec.master_seed = master_seed;
        spec.n_trials = 1000;
        spec.output_path = std::string(name) + ".csv";
        spec.validate();
        return spec;
    }

    ScenarioConfig scenario_at(const ExperimentSpec &spec, const Variant &variant, double value, Position3D &user)
    {
        ScenarioConfig s = spec.scenario;
        user = spec.user;
        if (variant.elements)
            for (auto &irs : s.irs_list)
                irs.num_elements = *variant.elements;
        if (variant.pilot_power)
            s.avg_pilot_power = *variant.pilot_power;

        switch (spec.sweep)
        {
        case SweepVariable::user_x:
            user.x = value;
            break;
        case SweepVariable::user_y:
            user.y = value;
            break;
        case SweepVariable::elements:
            for (auto &irs : s.irs_list)
                irs.num_elements = static_cast<std::uint32_t>(value);
            break;
        case SweepVariable::pilot_dbm:
            s.avg_pilot_power = dbm_to_watts(value);
            break;
        case SweepVariable::irs_count:
        {
            const auto K = static_cast<std::size_t>(value);
            s.irs_list.resize(K);
            if (spec.total_elements)
            {
                if (*spec.total_elements % K != 0)
                    throw InvalidArgument("total_elements " + std::to_string(*spec.total_elements) +
                                          " is not divisible by K = " + std::to_string(K));
                for (auto &irs : s.irs_list)
                    irs.num_elements = *spec.total_elements / static_cast<std::uint32_t>(K);
            }
            break;
        }
        }
        s.validate();
        return s;
    }

    std::size_t max_irs_count(const ExperimentSpec &spec)
    {
        if (spec.sweep != SweepVariable::irs_count)
            return spec.scenario.num_irs();
        const auto values = spec.sweep_values();
        return static_cast<std::size_t>(*std::max_element(values.begin(), values.end()));
    }

    std::string csv_header(std::size_t num_power_columns)
    {
        std::string h = "sweep,strategy,mask,mean_rate,std_err,bound,papr_db";
        for (std::size_t k = 1; k <= num_power_columns; ++k)
            h += ",p_" + std::to_string(k);
        return h;
    }

    std::string format_csv(const std::vector<ResultRow> &rows, std::size_t num_power_columns)
    {
        std::string out = csv_header(num_power_columns) + "\n";
        for (const auto &r : rows)
        {
            out += format_double(r.sweep) + "," + r.strategy + "," + r.mask + "," + format_double(r.mean_rate) + "," +
                   format_double(r.std_error) + "," + format_double(r.bound) + ",";
            if (r.papr_db)
                out += format_double(*r.papr_db);
            for (std::size_t k = 0; k < num_power_columns; ++k)
            {
                out += ",";
                if (k < r.power.size() && r.power[k])
                    out += format_double(*r.power[k]);
            }
            out += "\n";
        }
        return out;
    }

    std::vector<ResultRow> run_experiment(const ExperimentSpec &spec)
    {
        spec.validate();
        const std::size_t columns = max_irs_count(spec);
        const std::vector<Variant> variants = spec.variants.empty() ? std::vector<Variant>{Variant{}} : spec.variants;

        std::vector<ResultRow> rows;
        for (double value : spec.sweep_values())
            for (const auto &variant : variants)
            {
                Position3D user;
                const ScenarioConfig s = scenario_at(spec, variant, value, user);
                const auto stats = link_statistics(s, user);
                const std::vector<IrsMask> masks = spec.masks.empty() ? std::vector<IrsMask>{all_on(s.num_irs())} : spec.masks;

                for (auto scheme : spec.schemes)
                    for (const auto &mask : masks)
                    {
                        ResultRow row;
                        row.sweep = value;
                        row.strategy = std::string(to_string(scheme));
                        if (!variant.label.empty())
                            row.strategy += "/" + variant.label;
                        row.mask = mask_to_string(mask);
                        row.power.assign(columns, std::nullopt);

                        PilotAllocation alloc;
                        if (auto strategy = strategy_of(scheme))
                        {
                            const auto problem = masked_problem(s, stats, mask, spec.min_snr_gamma);
                            alloc = allocate(*strategy, problem);
                            row.papr_db = papr(alloc, problem).papr_db;
                            const auto active = active_indices(mask);
                            for (std::size_t i = 0; i < active.size(); ++i)
                                row.power[active[i]] = alloc.power[i];
                        }
                        const auto report = ergodic_rate(s, user, alloc, mask, spec.n_trials, spec.master_seed,
                                                         scheme, spec.threads);
                        row.mean_rate = report.mean_rate;
                        row.std_error = report.std_error;
                        row.bound = report.closed_form_bound;
                        rows.push_back(std::move(row));
                    }
            }

        if (!spec.output_path.empty())
        {
            write_text_file(spec.output_path, format_csv(rows, columns));
            write_text_file(spec.output_path + ".manifest.json", manifest_json(spec, rows.size()));
        }
        return rows;
    }

    std::string manifest_json(const ExperimentSpec &spec, std::size_t row_count)
    {
        nlohmann::json j;
        j["tool"] = "irspilot";
        j["version"] = version_string;
        j["csv_schema"] = csv_schema_version;
        j["columns"] = csv_header(max_irs_count(spec));
        j["experiment"] = spec.name;
        j["master_seed"] = spec.master_seed;
        j["n_trials"] = spec.n_trials;
        j["rows"] = row_count;
        j["spec"] = emit_experiment(spec);
        return j.dump(2) + "\n";
    }

    std::string emit_experiment(const ExperimentSpec &spec)
    {
        std::ostringstream os;
        os << "name = " << spec.name << '\n';
        os << emit_scenario(spec.scenario);
        os << "user = " << format_position(spec.user) << '\n';
        os << "sweep = " << to_string(spec.sweep) << '\n';
        os << "sweep_start = " << format_double(spec.sweep_start) << '\n';
        os << "sweep_stop = " << format_double(spec.sweep_stop) << '\n';
        os << "sweep_step = " << format_double(spec.sweep_step) << '\n';
        os << "schemes =";
        for (auto s : spec.schemes)
            os << ' ' << to_string(s);
        os << '\n';
        if (!spec.masks.empty())
        {
            os << "masks =";
            for (const auto &m : spec.masks)
                os << ' ' << mask_to_string(m);
            os << '\n';
        }
        for (const auto &v : spec.variants)
        {
            os << "variant = " << v.label;
            if (v.elements)
                os << " elements=" << std::to_string(*v.elements);
            if (v.pilot_power)
            {
                const double dbm = dbm_for_exact_watts(*v.pilot_power);
                if (dbm_to_watts(dbm) == *v.pilot_power)
                    os << " pilot_power_dbm=" << format_double(dbm);
                else
                    os << " pilot_power_w=" << format_double(*v.pilot_power);
            }
            os << '\n';
        }
        if (spec.total_elements)
            os << "total_elements = " << std::to_string(*spec.total_elements) << '\n';
        os << "n_trials = " << std::to_string(spec.n_trials) << '\n';
        os << "seed = " << std::to_string(spec.master_seed) << '\n';
        os << "gamma = " << format_double(spec.min_snr_gamma) << '\n';
        if (!spec.output_path.empty())
            os << "out = " << spec.output_path << '\n';
        return os.str();
    }

    namespace
    {
        std::uint64_t parse_unsigned(const std::string &text, std::size_t line)
        {
            std::uint64_t v = 0;
            const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
            if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
                throw ParseError("expected a non-negative integer, got '" + text + "'", line);
            return v;
        }

        std::vector<std::string> split_words(const std::string &text)
        {
            std::istringstream is(text);
            std::vector<std::string> out;
            for (std::string w; is >> w;)
                out.push_back(w);
            return out;
        }

        Variant parse_variant(const std::string &text, std::size_t line)
        {
            const auto words = split_words(text);
            Variant v;
            v.label = words.at(0);
            for (std::size_t i = 1; i < words.size(); ++i)
            {
                const auto eq = words[i].find('=');
                if (eq == std::string::npos)
                    throw ParseError("variant options are key=value, got '" + words[i] + "'", line);
                const auto key = words[i].substr(0, eq);
                const auto value = words[i].substr(eq + 1);
                if (key == "elements")
                    v.elements = static_cast<std::uint32_t>(parse_unsigned(value, line));
                else if (key == "pilot_power_dbm")
                    v.pilot_power = dbm_to_watts(parse_number(value, line));
                else if (key == "pilot_power_w")
                    v.pilot_power = parse_number(value, line);
                else
                    throw ParseError("unknown variant option '" + key + "'", line);
            }
            return v;
        }
    }

    ExperimentSpec parse_experiment(std::string_view text)
    {
        ExperimentSpec spec;
        spec.schemes.clear();
        bool have_sweep = false;
        for (const auto &kv : parse_key_values(text))
        {
            if (apply_scenario_key(spec.scenario, kv))
                continue;
            const auto &k = kv.key;
            if (k == "name")
                spec.name = kv.value;
            else if (k == "user")
                spec.user = parse_position(kv.value, kv.line);
            else if (k == "sweep")
            {
                auto v = parse_sweep_variable(kv.value);
                if (!v)
                    throw ParseError("unknown sweep variable '" + kv.value + "'", kv.line);
                spec.sweep = *v;
                have_sweep = true;
            }
            else if (k == "sweep_start")
                spec.sweep_start = parse_number(kv.value, kv.line);
            else if (k == "sweep_stop")
                spec.sweep_stop = parse_number(kv.value, kv.line);
            else if (k == "sweep_step")
                spec.sweep_step = parse_number(kv.value, kv.line);
            else if (k == "schemes" || k == "strategies")
            {
                for (const auto &w : split_words(kv.value))
                {
                    auto s = parse_scheme(w);
                    if (!s)
                        throw ParseError("unknown scheme '" + w + "'", kv.line);
                    spec.schemes.push_back(*s);
                }
            }
            else if (k == "masks")
            {
                try
                {
                    for (const auto &w : split_words(kv.value))
                        spec.masks.push_back(parse_mask(w));
                }
                catch (const InvalidArgument &e)
                {
                    throw ParseError(e.what(), kv.line);
                }
            }
            else if (k == "variant")
                spec.variants.push_back(parse_variant(kv.value, kv.line));
            else if (k == "total_elements")
                spec.total_elements = static_cast<std::uint32_t>(parse_unsigned(kv.value, kv.line));
            else if (k == "n_trials")
                spec.n_trials = parse_unsigned(kv.value, kv.line);
            else if (k == "seed")
                spec.master_seed = parse_unsigned(kv.value, kv.line);
            else if (k == "gamma")
                spec.min_snr_gamma = parse_number(kv.value, kv.line);
            else if (k == "out")
                spec.output_path = kv.value;
            else
                throw ParseError("unknown experiment key '" + k + "'", kv.line);
        }
        if (!have_sweep)
            throw ParseError("experiment file needs a 'sweep' key", 0);
        try
        {
            spec.validate();
        }
        catch (const InvalidArgument &e)
        {
            throw ParseError(e.what(), 0);
        }
        return spec;
    }

    ExperimentSpec load_experiment(const std::filesystem::path &path)
    {
        return parse_experiment(read_text_file(path));
    }
}
