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

#include "irspilot/scenario_io.hpp"
#include "irspilot/errors.hpp"
#include "irspilot/units.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace irspilot
{
    namespace
    {
        std::string_view trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r");
            if (first == std::string_view::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r");
            return s.substr(first, last - first + 1);
        }
    }

    std::vector<KeyValue> parse_key_values(std::string_view text)
    {
        std::vector<KeyValue> out;
        std::size_t line_no = 0;
        while (!text.empty())
        {
            ++line_no;
            const auto eol = text.find('\n');
            std::string_view line = text.substr(0, eol);
            text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ParseError("expected 'key = value'", line_no);
            KeyValue kv{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), line_no};
            if (kv.key.empty())
                throw ParseError("missing key", line_no);
            if (kv.value.empty())
                throw ParseError("missing value for '" + kv.key + "'", line_no);
            out.push_back(std::move(kv));
        }
        return out;
    }

    std::string format_double(double value)
    {
        if (std::isinf(value))
            return value > 0 ? "inf" : "-inf";
        if (value == 0.0)
            return "0";
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, value);
        return std::string(buf, res.ptr);
    }

    double parse_number(std::string_view text, std::size_t line)
    {
        text = trim(text);
        if (text == "inf" || text == "+inf")
            return std::numeric_limits<double>::infinity();
        if (text == "-inf")
            return -std::numeric_limits<double>::infinity();
        if (!text.empty() && text.front() == '+')
            text.remove_prefix(1);
        double value = 0.0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
        if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || text.empty())
            throw ParseError("not a number: '" + std::string(text) + "'", line);
        return value;
    }

    std::vector<double> parse_numbers(std::string_view text, std::size_t line)
    {
        std::vector<double> out;
        std::size_t i = 0;
        while (i < text.size())
        {
            while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ','))
                ++i;
            std::size_t j = i;
            while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != ',')
                ++j;
            if (j > i)
                out.push_back(parse_number(text.substr(i, j - i), line));
            i = j;
        }
        return out;
    }

    Position3D parse_position(std::string_view text, std::size_t line)
    {
        const auto v = parse_numbers(text, line);
        if (v.size() != 3)
            throw ParseError("expected three coordinates 'x y z'", line);
        return {v[0], v[1], v[2]};
    }

    std::string format_position(const Position3D &p)
    {
        return format_double(p.x) + " " + format_double(p.y) + " " + format_double(p.z);
    }

    namespace
    {
        struct PowerKey
        {
            std::string_view stem;
            double ScenarioConfig::*field;
        };

        constexpr PowerKey power_keys[] = {
            {"downlink_power", &ScenarioConfig::downlink_power},
            {"pilot_power", &ScenarioConfig::avg_pilot_power},
            {"noise_bs", &ScenarioConfig::noise_bs},
            {"noise_user", &ScenarioConfig::noise_user},
        };

        std::uint32_t parse_count(double v, std::size_t line)
        {
            if (!(v >= 1.0) || v != std::floor(v) || v > 4294967295.0)
                throw ParseError("element count must be a positive integer", line);
            return static_cast<std::uint32_t>(v);
        }
    }

    bool apply_scenario_key(ScenarioConfig &s, const KeyValue &kv)
    {
        const auto &key = kv.key;
        const auto line = kv.line;
        for (const auto &pk : power_keys)
        {
            if (key == std::string(pk.stem) + "_dbm")
            {
                s.*pk.field = dbm_to_watts(parse_number(kv.value, line));
                return true;
            }
            if (key == std::string(pk.stem) + "_w")
            {
                s.*pk.field = parse_number(kv.value, line);
                return true;
            }
        }
        if (key == "bs")
            s.bs_position = parse_position(kv.value, line);
        else if (key == "irs")
        {
            const auto v = parse_numbers(kv.value, line);
            if (v.size() != 4)
                throw ParseError("expected 'irs = x y z M'", line);
            s.irs_list.push_back({{v[0], v[1], v[2]}, parse_count(v[3], line)});
        }
        else if (key == "ref_path_loss_db")
            s.ref_path_loss = db_to_linear(parse_number(kv.value, line));
        else if (key == "ref_path_loss")
            s.ref_path_loss = parse_number(kv.value, line);
        else if (key == "exponent_bs_irs")
            s.exponent_bs_irs = parse_number(kv.value, line);
        else if (key == "exponent_irs_user")
            s.exponent_irs_user = parse_number(kv.value, line);
        else if (key == "rician_bs_irs")
            s.rician_bs_irs = parse_number(kv.value, line);
        else if (key == "rician_irs_user")
            s.rician_irs_user = parse_number(kv.value, line);
        else if (key == "user_leg_distance")
        {
            if (kv.value == "3d")
                s.user_leg = UserLegDistance::euclidean;
            else if (kv.value == "horizontal")
                s.user_leg = UserLegDistance::horizontal;
            else
                throw ParseError("user_leg_distance must be '3d' or 'horizontal'", line);
        }
        else
            return false;
        return true;
    }

    ScenarioConfig parse_scenario(std::string_view text)
    {
        ScenarioConfig s;
        for (const auto &kv : parse_key_values(text))
            if (!apply_scenario_key(s, kv))
                throw ParseError("unknown scenario key '" + kv.key + "'", kv.line);
        try
        {
            s.validate();
        }
        catch (const InvalidArgument &e)
        {
            throw ParseError(e.what(), 0);
        }
        return s;
    }

    namespace
    {
        void emit_power(std::ostringstream &os, std::string_view stem, double watts)
        {
            const double dbm = dbm_for_exact_watts(watts);
            if (dbm_to_watts(dbm) == watts)
                os << stem << "_dbm = " << format_double(dbm) << '\n';
            else
                os << stem << "_w = " << format_double(watts) << '\n';
        }
    }

    std::string emit_scenario(const ScenarioConfig &s)
    {
        std::ostringstream os;
        os << "bs = " << format_position(s.bs_position) << '\n';
        for (const auto &irs : s.irs_list)
            os << "irs = " << format_position(irs.position) << ' ' << std::to_string(irs.num_elements) << '\n';
        for (const auto &pk : power_keys)
            emit_power(os, pk.stem, s.*pk.field);
        const double db = db_for_exact_linear(s.ref_path_loss);
        if (db_to_linear(db) == s.ref_path_loss)
            os << "ref_path_loss_db = " << format_double(db) << '\n';
        else
            os << "ref_path_loss = " << format_double(s.ref_path_loss) << '\n';
        os << "exponent_bs_irs = " << format_double(s.exponent_bs_irs) << '\n';
        os << "exponent_irs_user = " << format_double(s.exponent_irs_user) << '\n';
        os << "rician_bs_irs = " << format_double(s.rician_bs_irs) << '\n';
        os << "rician_irs_user = " << format_double(s.rician_irs_user) << '\n';
        os << "user_leg_distance = " << (s.user_leg == UserLegDistance::horizontal ? "horizontal" : "3d") << '\n';
        return os.str();
    }

    std::string read_text_file(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot open '" + path.string() + "' for reading");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void write_text_file(const std::filesystem::path &path, std::string_view text)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open '" + path.string() + "' for writing");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out)
            throw IoError("failed writing '" + path.string() + "'");
    }

    ScenarioConfig load_scenario(const std::filesystem::path &path)
    {
        return parse_scenario(read_text_file(path));
    }

    void save_scenario(const std::filesystem::path &path, const ScenarioConfig &scenario)
    {
        write_text_file(path, emit_scenario(scenario));
    }
}
