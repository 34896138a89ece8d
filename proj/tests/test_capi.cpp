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

#include <catch_amalgamated.hpp>

#include "irspilot/irspilot.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    const char *two_irs_text = "irs = 50 10 10 100\n"
                               "irs = 50 -10 10 100\n"
                               "pilot_power_dbm = -13\n"
                               "user_leg_distance = horizontal\n";

    struct Scenario
    {
        irspilot_scenario *ptr = nullptr;
        explicit Scenario(const char *text) { REQUIRE(irspilot_scenario_parse(text, &ptr) == IRSPILOT_OK); }
        ~Scenario() { irspilot_scenario_free(ptr); }
    };

    std::string fetch(irspilot_status (*fn)(const irspilot_experiment *, char *, size_t, size_t *),
                      const irspilot_experiment *e)
    {
        size_t needed = 0;
        REQUIRE(fn(e, nullptr, 0, &needed) == IRSPILOT_ERR_BUFFER_TOO_SMALL);
        std::string s(needed, '\0');
        REQUIRE(fn(e, s.data(), s.size(), &needed) == IRSPILOT_OK);
        s.resize(needed - 1);
        return s;
    }
}

TEST_CASE("version and status names")
{
    CHECK(std::strlen(irspilot_version()) > 0);
    CHECK(std::string(irspilot_status_name(IRSPILOT_ERR_PARSE)) == "parse error");
}

TEST_CASE("scenario handle")
{
    Scenario s(two_irs_text);
    CHECK(irspilot_scenario_num_irs(s.ptr) == 2);

    size_t needed = 0;
    CHECK(irspilot_scenario_emit(s.ptr, nullptr, 0, &needed) == IRSPILOT_ERR_BUFFER_TOO_SMALL);
    std::vector<char> buf(needed);
    CHECK(irspilot_scenario_emit(s.ptr, buf.data(), 3, &needed) == IRSPILOT_ERR_BUFFER_TOO_SMALL);
    REQUIRE(irspilot_scenario_emit(s.ptr, buf.data(), buf.size(), &needed) == IRSPILOT_OK);
    CHECK(std::strlen(buf.data()) + 1 == needed);
    Scenario again(buf.data());
    CHECK(irspilot_scenario_num_irs(again.ptr) == 2);

    // beta^2 by hand: C0 d_bi^-2.2 * C0 d_iu^-2.8, user leg measured on the ground plane.
    const double user[3] = {48, 0, 0};
    double beta2[2];
    REQUIRE(irspilot_link_statistics(s.ptr, user, beta2, 2) == IRSPILOT_OK);
    const double d_bi = std::sqrt(50.0 * 50.0 + 10.0 * 10.0);
    const double d_iu = std::sqrt(2.0 * 2.0 + 10.0 * 10.0);
    CHECK_THAT(beta2[0], WithinRel(0.01 * std::pow(d_bi, -2.2) * 0.01 * std::pow(d_iu, -2.8), 1e-12));
    CHECK_THAT(beta2[1], WithinRel(beta2[0], 1e-12));
    CHECK(irspilot_link_statistics(s.ptr, user, beta2, 1) == IRSPILOT_ERR_BUFFER_TOO_SMALL);

    irspilot_scenario *bad = nullptr;
    CHECK(irspilot_scenario_parse("irs = 1 2\n", &bad) == IRSPILOT_ERR_PARSE);
    CHECK(bad == nullptr);
    CHECK_THAT(std::string(irspilot_last_error()), ContainsSubstring("line 1"));
    CHECK(irspilot_scenario_load("/nonexistent/x.scn", &bad) == IRSPILOT_ERR_IO);
    CHECK(irspilot_scenario_parse(nullptr, &bad) == IRSPILOT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("allocation through the C interface")
{
    const double beta[2] = {1e-5, 1e-5};
    const uint32_t elements[2] = {100, 100};
    double power[2];
    irspilot_allocation_info info{};
    REQUIRE(irspilot_allocate(beta, elements, 2, 1e-3, 1e-14, 10, "simplified", power, &info) == IRSPILOT_OK);
    CHECK_THAT(power[0], WithinRel(1e-3, 1e-12));
    CHECK_THAT(power[1], WithinRel(1e-3, 1e-12));
    CHECK_THAT(info.papr.papr_db, WithinAbs(0.0, 1e-9));
    CHECK(info.moderate_snr == 1);

    // Unequal amplitudes: p_k proportional to beta_k^-1/2 under the budget.
    const double uneven[2] = {4e-5, 1e-5};
    REQUIRE(irspilot_allocate(uneven, elements, 2, 1e-3, 1e-14, 10, "simplified", power, nullptr) == IRSPILOT_OK);
    CHECK_THAT(power[1] / power[0], WithinRel(2.0, 1e-12));
    CHECK_THAT(power[0] + power[1], WithinRel(2e-3, 1e-12));

    CHECK(irspilot_allocate(beta, elements, 2, 1e-3, 1e-14, 10, "bogus", power, nullptr) ==
          IRSPILOT_ERR_INVALID_ARGUMENT);
    CHECK(irspilot_allocate(beta, elements, 0, 1e-3, 1e-14, 10, "identical", power, nullptr) ==
          IRSPILOT_ERR_INVALID_ARGUMENT);
    const double tiny[2] = {1.0, 1e-17};
    const uint32_t ones[2] = {1, 1};
    CHECK(irspilot_allocate(tiny, ones, 2, 1e-3, 1e-14, 10, "refined", power, nullptr) == IRSPILOT_ERR_DEGENERATE);

    Scenario s(two_irs_text);
    const double user[3] = {48, 0, 0};
    size_t count = 0;
    REQUIRE(irspilot_allocate_scenario(s.ptr, user, "exact", "01", 10, power, 2, &count, &info) == IRSPILOT_OK);
    CHECK(count == 1);
    // The lone IRS inherits the whole pilot energy of both.
    CHECK_THAT(power[0], WithinRel(2.0 * std::pow(10.0, -1.3) * 1e-3, 1e-12));
}

TEST_CASE("capacity and simulation")
{
    Scenario s(two_irs_text);
    const double user[3] = {48, 4, 0};
    irspilot_capacity cap{};
    REQUIRE(irspilot_capacity_eval(s.ptr, user, "simplified", nullptr, 10, &cap) == IRSPILOT_OK);
    CHECK_THAT(cap.total_gain, WithinRel(cap.diagonal + cap.intra + cap.inter, 1e-14));
    CHECK_THAT(cap.bound, WithinRel(std::log2(1.0 + 10.0 * cap.total_gain / 1e-12), 1e-12));

    irspilot_capacity random{};
    REQUIRE(irspilot_capacity_eval(s.ptr, user, "random-phase", nullptr, 10, &random) == IRSPILOT_OK);
    CHECK(random.intra == 0.0);
    CHECK(random.inter == 0.0);

    irspilot_rate_report a{}, b{};
    REQUIRE(irspilot_simulate(s.ptr, user, "simplified", nullptr, 500, 7, 1, 10, &a) == IRSPILOT_OK);
    REQUIRE(irspilot_simulate(s.ptr, user, "simplified", nullptr, 500, 7, 4, 10, &b) == IRSPILOT_OK);
    CHECK(a.mean_rate == b.mean_rate);
    CHECK(a.n_trials == 500);
    CHECK(a.mean_rate <= a.closed_form_bound);
    CHECK(irspilot_simulate(s.ptr, user, "simplified", "00", 5, 7, 1, 10, &a) == IRSPILOT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("experiments through the C interface")
{
    irspilot_experiment *e = nullptr;
    REQUIRE(irspilot_experiment_builtin("fig4", 3, &e) == IRSPILOT_OK);
    REQUIRE(irspilot_experiment_set_trials(e, 10) == IRSPILOT_OK);
    REQUIRE(irspilot_experiment_set_output(e, nullptr) == IRSPILOT_OK);
    size_t rows = 0;
    REQUIRE(irspilot_experiment_run(e, &rows) == IRSPILOT_OK);
    CHECK(rows == 48);
    const auto csv = fetch(irspilot_experiment_csv, e);
    CHECK(csv.starts_with("sweep,strategy,mask,mean_rate,std_err,bound,papr_db,p_1\n"));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 49);

    double user[3];
    REQUIRE(irspilot_experiment_user(e, user) == IRSPILOT_OK);
    CHECK(user[0] == 50.0);
    irspilot_scenario *s = nullptr;
    REQUIRE(irspilot_experiment_scenario(e, &s) == IRSPILOT_OK);
    CHECK(irspilot_scenario_num_irs(s) == 1);
    irspilot_scenario_free(s);

    const auto text = fetch(irspilot_experiment_emit, e);
    CHECK_THAT(text, ContainsSubstring("n_trials = 10"));
    irspilot_experiment_free(e);

    CHECK(irspilot_experiment_builtin("fig99", 1, &e) == IRSPILOT_ERR_INVALID_ARGUMENT);
    CHECK(e == nullptr);
    CHECK(irspilot_experiment_csv(nullptr, nullptr, 0, &rows) == IRSPILOT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("log callback receives warnings")
{
    struct Sink
    {
        int calls = 0;
    } sink;
    irspilot_set_log_callback([](int, const char *, void *ud) { ++static_cast<Sink *>(ud)->calls; }, &sink);
    // A silent callback must not break a normal run.
    Scenario s(two_irs_text);
    const double user[3] = {48, 0, 0};
    irspilot_rate_report r{};
    CHECK(irspilot_simulate(s.ptr, user, "identical", nullptr, 10, 1, 1, 10, &r) == IRSPILOT_OK);
    irspilot_set_log_callback(nullptr, nullptr);
    CHECK(sink.calls >= 0);
}
