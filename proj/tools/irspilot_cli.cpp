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

// Command-line front end. Uses only the C interface of libirspilot.

#include "irspilot/irspilot.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace
{
    struct CliError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    void check(irspilot_status st)
    {
        if (st != IRSPILOT_OK)
            throw CliError(std::string(irspilot_status_name(st)) + ": " + irspilot_last_error());
    }

    double dbm(double watts)
    {
        return 10.0 * std::log10(watts) + 30.0;
    }

    using ScenarioPtr = std::unique_ptr<irspilot_scenario, decltype(&irspilot_scenario_free)>;
    using ExperimentPtr = std::unique_ptr<irspilot_experiment, decltype(&irspilot_experiment_free)>;

    // Options shared by the scenario-driven subcommands.
    struct ScenarioOptions
    {
        std::string scenario_file;
        std::string preset;
        std::vector<double> user;
        std::string mask;
        double pilot_dbm = NAN;
        unsigned elements = 0;
        double gamma = 10.0;
        std::uint64_t seed = 1;

        void add_to(CLI::App *app)
        {
            app->add_option("--scenario", scenario_file, "scenario file (key = value format)");
            app->add_option("--preset", preset, "take the scenario of a built-in experiment (fig4, fig6, ...)");
            app->add_option("--user", user, "user position x y z in meters")->expected(3);
            app->add_option("--mask", mask, "IRS on/off mask such as 10 (default: all on)");
            app->add_option("--pilot-dbm", pilot_dbm, "average pilot power p in dBm");
            app->add_option("--elements", elements, "override M of every IRS");
            app->add_option("--gamma", gamma, "moderate-SNR threshold on p beta^2 / sigma_z^2");
            app->add_option("--seed", seed, "master seed (also drives random preset geometry)");
        }

        ScenarioPtr load(double pos[3]) const
        {
            irspilot_scenario *raw = nullptr;
            bool have_user = false;
            if (!scenario_file.empty() && !preset.empty())
                throw CliError("use either --scenario or --preset, not both");
            if (!scenario_file.empty())
                check(irspilot_scenario_load(scenario_file.c_str(), &raw));
            else if (!preset.empty())
            {
                irspilot_experiment *exp = nullptr;
                check(irspilot_experiment_builtin(preset.c_str(), seed, &exp));
                ExperimentPtr guard(exp, &irspilot_experiment_free);
                check(irspilot_experiment_scenario(exp, &raw));
                check(irspilot_experiment_user(exp, pos));
                have_user = true;
            }
            else
                throw CliError("a scenario is required: pass --scenario FILE or --preset NAME");
            ScenarioPtr s(raw, &irspilot_scenario_free);
            if (!user.empty())
            {
                pos[0] = user[0];
                pos[1] = user[1];
                pos[2] = user[2];
                have_user = true;
            }
            if (!have_user)
                throw CliError("--user x y z is required with --scenario");
            if (!std::isnan(pilot_dbm))
                check(irspilot_scenario_set_pilot_dbm(s.get(), pilot_dbm));
            if (elements > 0)
                check(irspilot_scenario_set_elements(s.get(), elements));
            return s;
        }

        const char *mask_or_null() const { return mask.empty() ? nullptr : mask.c_str(); }
    };

    std::string scheme_name(const std::string &strategy, bool perfect, bool random)
    {
        if (perfect && random)
            throw CliError("--perfect-csi and --random-phase are mutually exclusive");
        if (perfect)
            return "perfect-csi";
        if (random)
            return "random-phase";
        return strategy;
    }

    void print_allocation(const char *strategy, const std::vector<double> &power, const irspilot_allocation_info &info)
    {
        std::printf("%-10s", strategy);
        for (std::size_t k = 0; k < power.size(); ++k)
            std::printf("  p_%zu = %.6e W (%.3f dBm)", k + 1, power[k], dbm(power[k]));
        std::printf("  PAPR = %.3f dB (bound %.3f dB)%s\n", info.papr.papr_db, info.papr.upper_bound_db,
                    info.moderate_snr ? "" : "  [below moderate-SNR threshold]");
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"irspilot: pilot power allocation and rate simulation for multi-IRS links"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(irspilot_version()));

    // allocate
    auto *alloc_cmd = app.add_subcommand("allocate", "pilot power allocation and PAPR");
    ScenarioOptions alloc_opts;
    alloc_opts.add_to(alloc_cmd);
    std::vector<double> beta2;
    std::vector<unsigned> elements_list;
    double noise_bs_dbm = -110.0;
    std::string alloc_strategy;
    alloc_cmd->add_option("--beta2", beta2, "cascaded channel gains beta_k^2 (linear), one per IRS");
    alloc_cmd->add_option("--elements-list", elements_list, "M_k per IRS, used with --beta2");
    alloc_cmd->add_option("--noise-bs-dbm", noise_bs_dbm, "BS noise power used with --beta2");
    alloc_cmd->add_option("--strategy", alloc_strategy, "identical, simplified, refined or exact (default: all)");

    // capacity
    auto *cap_cmd = app.add_subcommand("capacity", "closed-form average gain and rate bound");
    ScenarioOptions cap_opts;
    cap_opts.add_to(cap_cmd);
    std::string cap_strategy = "identical";
    bool cap_perfect = false, cap_random = false;
    cap_cmd->add_option("--strategy", cap_strategy, "pilot allocation strategy");
    cap_cmd->add_flag("--perfect-csi", cap_perfect, "phases from error-free channel knowledge");
    cap_cmd->add_flag("--random-phase", cap_random, "random phases (no CSI)");

    // simulate
    auto *sim_cmd = app.add_subcommand("simulate", "Monte Carlo ergodic rate");
    ScenarioOptions sim_opts;
    sim_opts.add_to(sim_cmd);
    std::string sim_strategy = "identical";
    bool sim_perfect = false, sim_random = false;
    std::uint64_t sim_trials = 1000;
    unsigned sim_threads = 0;
    sim_cmd->add_option("--strategy", sim_strategy, "pilot allocation strategy");
    sim_cmd->add_flag("--perfect-csi", sim_perfect, "phases from error-free channel knowledge");
    sim_cmd->add_flag("--random-phase", sim_random, "random phases (no CSI)");
    sim_cmd->add_option("--trials", sim_trials, "number of channel realizations");
    sim_cmd->add_option("--threads", sim_threads, "worker threads (0 = all cores)");

    // experiment
    auto *exp_cmd = app.add_subcommand("experiment", "run a built-in or file-based sweep and write CSV");
    std::string exp_name, exp_file, exp_out;
    std::uint64_t exp_seed = 1, exp_trials = 0;
    unsigned exp_threads = 0;
    exp_cmd->add_option("name", exp_name, "built-in experiment (fig4, fig6, fig7, fig8, fig9, fig10, fig12, fig13)");
    exp_cmd->add_option("--spec", exp_file, "experiment file");
    exp_cmd->add_option("--out", exp_out, "CSV output path (manifest goes to <out>.manifest.json)");
    auto *exp_seed_opt = exp_cmd->add_option("--seed", exp_seed, "master seed");
    exp_cmd->add_option("--trials", exp_trials, "override the number of trials");
    exp_cmd->add_option("--threads", exp_threads, "worker threads (0 = all cores)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e);
    }

    try
    {
        if (*alloc_cmd)
        {
            std::vector<std::string> strategies{"identical", "simplified", "refined", "exact"};
            if (!alloc_strategy.empty())
                strategies = {alloc_strategy};

            if (!beta2.empty())
            {
                if (!alloc_opts.scenario_file.empty() || !alloc_opts.preset.empty())
                    throw CliError("--beta2 cannot be combined with --scenario or --preset");
                if (elements_list.empty())
                    elements_list.assign(beta2.size(), 1);
                if (elements_list.size() != beta2.size())
                    throw CliError("--elements-list needs one value per --beta2 entry");
                const double budget = std::pow(10.0, ((std::isnan(alloc_opts.pilot_dbm) ? 0.0 : alloc_opts.pilot_dbm) - 30.0) / 10.0);
                const double sigma = std::pow(10.0, (noise_bs_dbm - 30.0) / 10.0);
                std::vector<double> beta;
                for (double b2 : beta2)
                    beta.push_back(std::sqrt(b2));
                std::vector<std::uint32_t> m(elements_list.begin(), elements_list.end());
                for (const auto &s : strategies)
                {
                    std::vector<double> p(beta.size());
                    irspilot_allocation_info info{};
                    const auto st = irspilot_allocate(beta.data(), m.data(), beta.size(), budget, sigma,
                                                      alloc_opts.gamma, s.c_str(), p.data(), &info);
                    if (st != IRSPILOT_OK && strategies.size() > 1)
                    {
                        std::printf("%-10s  unavailable: %s\n", s.c_str(), irspilot_last_error());
                        continue;
                    }
                    check(st);
                    print_allocation(s.c_str(), p, info);
                }
                return 0;
            }

            double pos[3] = {0.0, 0.0, 0.0};
            auto scenario = alloc_opts.load(pos);
            for (const auto &s : strategies)
            {
                std::vector<double> p(irspilot_scenario_num_irs(scenario.get()));
                std::size_t count = 0;
                irspilot_allocation_info info{};
                const auto st = irspilot_allocate_scenario(scenario.get(), pos, s.c_str(), alloc_opts.mask_or_null(),
                                                           alloc_opts.gamma, p.data(), p.size(), &count, &info);
                if (st != IRSPILOT_OK && strategies.size() > 1)
                {
                    std::printf("%-10s  unavailable: %s\n", s.c_str(), irspilot_last_error());
                    continue;
                }
                check(st);
                p.resize(count);
                print_allocation(s.c_str(), p, info);
            }
            return 0;
        }

        if (*cap_cmd)
        {
            double pos[3];
            auto scenario = cap_opts.load(pos);
            const auto scheme = scheme_name(cap_strategy, cap_perfect, cap_random);
            irspilot_capacity c{};
            check(irspilot_capacity_eval(scenario.get(), pos, scheme.c_str(), cap_opts.mask_or_null(), cap_opts.gamma, &c));
            std::printf("scheme          %s\n", scheme.c_str());
            std::printf("gain diagonal   %.9e\n", c.diagonal);
            std::printf("gain intra-IRS  %.9e\n", c.intra);
            std::printf("gain inter-IRS  %.9e\n", c.inter);
            std::printf("gain total      %.9e\n", c.total_gain);
            std::printf("rate bound      %.6f b/s/Hz\n", c.bound);
            std::printf("high-SNR rate   %.6f b/s/Hz\n", c.high_snr);
            std::printf("low-SNR rate    %.6f b/s/Hz\n", c.low_snr);
            return 0;
        }

        if (*sim_cmd)
        {
            double pos[3];
            auto scenario = sim_opts.load(pos);
            const auto scheme = scheme_name(sim_strategy, sim_perfect, sim_random);
            irspilot_rate_report r{};
            check(irspilot_simulate(scenario.get(), pos, scheme.c_str(), sim_opts.mask_or_null(), sim_trials,
                                    sim_opts.seed, sim_threads, sim_opts.gamma, &r));
            std::printf("scheme          %s\n", scheme.c_str());
            std::printf("trials          %llu\n", static_cast<unsigned long long>(r.n_trials));
            std::printf("mean rate       %.6f b/s/Hz\n", r.mean_rate);
            std::printf("std error       %.6f b/s/Hz%s\n", r.std_error, r.single_trial ? "  (single trial)" : "");
            std::printf("rate bound      %.6f b/s/Hz\n", r.closed_form_bound);
            std::printf("mean gain       %.9e (closed form %.9e)\n", r.mean_gain, r.closed_form_gain);
            return 0;
        }

        if (*exp_cmd)
        {
            if (exp_name.empty() == exp_file.empty())
                throw CliError("give either a built-in experiment name or --spec FILE");
            irspilot_experiment *raw = nullptr;
            if (!exp_name.empty())
                check(irspilot_experiment_builtin(exp_name.c_str(), exp_seed, &raw));
            else
                check(irspilot_experiment_load(exp_file.c_str(), &raw));
            ExperimentPtr exp(raw, &irspilot_experiment_free);
            if (!exp_file.empty() && exp_seed_opt->count() > 0)
                check(irspilot_experiment_set_seed(exp.get(), exp_seed));
            if (exp_trials > 0)
                check(irspilot_experiment_set_trials(exp.get(), exp_trials));
            if (!exp_out.empty())
                check(irspilot_experiment_set_output(exp.get(), exp_out.c_str()));
            check(irspilot_experiment_set_threads(exp.get(), exp_threads));
            std::size_t rows = 0;
            check(irspilot_experiment_run(exp.get(), &rows));
            std::printf("%zu rows written\n", rows);
            return 0;
        }
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "irspilot: %s\n", e.what());
        return 1;
    }
    return 0;
}
