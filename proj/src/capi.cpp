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

#include "irspilot/irspilot.h"

#include "irspilot/allocation.hpp"
#include "irspilot/capacity.hpp"
#include "irspilot/errors.hpp"
#include "irspilot/experiments.hpp"
#include "irspilot/log.hpp"
#include "irspilot/montecarlo.hpp"
#include "irspilot/scenario_io.hpp"
#include "irspilot/units.hpp"
#include "irspilot/version.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <string>

using namespace irspilot;

struct irspilot_scenario
{
    ScenarioConfig config;
};

struct irspilot_experiment
{
    ExperimentSpec spec;
    std::string csv;
};

namespace
{
    thread_local std::string last_error;

    struct BufferTooSmall : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    void require_capacity(std::size_t cap, std::size_t needed)
    {
        if (cap < needed)
            throw BufferTooSmall("output array holds " + std::to_string(cap) + " values, " +
                                 std::to_string(needed) + " needed");
    }

    irspilot_status fail(irspilot_status status, const std::string &message)
    {
        last_error = message;
        return status;
    }

    // Maps the core exception hierarchy onto status codes.
    template <class F>
    irspilot_status guarded(F &&body)
    {
        try
        {
            last_error.clear();
            body();
            return IRSPILOT_OK;
        }
        catch (const BufferTooSmall &e)
        {
            return fail(IRSPILOT_ERR_BUFFER_TOO_SMALL, e.what());
        }
        catch (const ParseError &e)
        {
            return fail(IRSPILOT_ERR_PARSE, e.what());
        }
        catch (const IoError &e)
        {
            return fail(IRSPILOT_ERR_IO, e.what());
        }
        catch (const DegenerateAllocation &e)
        {
            return fail(IRSPILOT_ERR_DEGENERATE, e.what());
        }
        catch (const NoConvergence &e)
        {
            return fail(IRSPILOT_ERR_NO_CONVERGENCE, e.what());
        }
        catch (const Intractable &e)
        {
            return fail(IRSPILOT_ERR_INTRACTABLE, e.what());
        }
        catch (const DomainError &e)
        {
            return fail(IRSPILOT_ERR_DOMAIN, e.what());
        }
        catch (const InvalidArgument &e)
        {
            return fail(IRSPILOT_ERR_INVALID_ARGUMENT, e.what());
        }
        catch (const std::exception &e)
        {
            return fail(IRSPILOT_ERR_INTERNAL, e.what());
        }
        catch (...)
        {
            return fail(IRSPILOT_ERR_INTERNAL, "unknown error");
        }
    }

    void require(bool ok, const char *what)
    {
        if (!ok)
            throw InvalidArgument(what);
    }

    Position3D to_position(const double user[3])
    {
        require(user != nullptr, "user position is NULL");
        return {user[0], user[1], user[2]};
    }

    IrsMask mask_or_all(const char *mask, std::size_t num_irs)
    {
        return (mask == nullptr || *mask == '\0') ? all_on(num_irs) : parse_mask(mask);
    }

    Scheme scheme_from(const char *name)
    {
        require(name != nullptr, "scheme name is NULL");
        auto s = parse_scheme(name);
        if (!s)
            throw InvalidArgument(std::string("unknown scheme '") + name + "'");
        return *s;
    }

    irspilot_status copy_out(const std::string &text, char *buf, std::size_t cap, std::size_t *needed)
    {
        if (needed)
            *needed = text.size() + 1;
        if (buf == nullptr || cap < text.size() + 1)
            return fail(IRSPILOT_ERR_BUFFER_TOO_SMALL, "output buffer too small");
        std::memcpy(buf, text.c_str(), text.size() + 1);
        return IRSPILOT_OK;
    }

    void fill_info(irspilot_allocation_info *info, const PilotAllocation &alloc, const AllocationProblem &problem)
    {
        if (!info)
            return;
        const auto r = papr(alloc, problem);
        info->papr = {r.papr_linear, r.papr_db, r.upper_bound_linear, r.upper_bound_db};
        info->objective_phi = objective_phi_per_irs(alloc.power, problem);
        info->moderate_snr = in_moderate_snr_regime(problem, alloc) ? 1 : 0;
    }
}

extern "C"
{
    const char *irspilot_version(void)
    {
        return version_string;
    }

    const char *irspilot_last_error(void)
    {
        return last_error.c_str();
    }

    const char *irspilot_status_name(irspilot_status status)
    {
        switch (status)
        {
        case IRSPILOT_OK:
            return "ok";
        case IRSPILOT_ERR_INVALID_ARGUMENT:
            return "invalid argument";
        case IRSPILOT_ERR_DOMAIN:
            return "domain error";
        case IRSPILOT_ERR_PARSE:
            return "parse error";
        case IRSPILOT_ERR_IO:
            return "i/o error";
        case IRSPILOT_ERR_DEGENERATE:
            return "degenerate allocation";
        case IRSPILOT_ERR_NO_CONVERGENCE:
            return "no convergence";
        case IRSPILOT_ERR_INTRACTABLE:
            return "intractable";
        case IRSPILOT_ERR_BUFFER_TOO_SMALL:
            return "buffer too small";
        case IRSPILOT_ERR_INTERNAL:
            return "internal error";
        }
        return "unknown status";
    }

    void irspilot_set_log_callback(irspilot_log_fn fn, void *user_data)
    {
        if (!fn)
        {
            set_log_sink({});
            return;
        }
        set_log_sink([fn, user_data](LogLevel level, std::string_view msg)
                     {
                         const std::string text(msg);
                         fn(level == LogLevel::warning ? 1 : 0, text.c_str(), user_data); });
    }

    irspilot_status irspilot_scenario_parse(const char *text, irspilot_scenario **out)
    {
        if (out)
            *out = nullptr;
        return guarded([&]
                       {
                           require(text && out, "NULL argument");
                           *out = new irspilot_scenario{parse_scenario(text)}; });
    }

    irspilot_status irspilot_scenario_load(const char *path, irspilot_scenario **out)
    {
        if (out)
            *out = nullptr;
        return guarded([&]
                       {
                           require(path && out, "NULL argument");
                           *out = new irspilot_scenario{load_scenario(path)}; });
    }

    void irspilot_scenario_free(irspilot_scenario *scenario)
    {
        delete scenario;
    }

    size_t irspilot_scenario_num_irs(const irspilot_scenario *scenario)
    {
        return scenario ? scenario->config.num_irs() : 0;
    }

    irspilot_status irspilot_scenario_emit(const irspilot_scenario *scenario, char *buf, size_t cap, size_t *needed)
    {
        std::string text;
        auto st = guarded([&]
                          {
                              require(scenario != nullptr, "scenario is NULL");
                              text = emit_scenario(scenario->config); });
        return st == IRSPILOT_OK ? copy_out(text, buf, cap, needed) : st;
    }

    irspilot_status irspilot_scenario_set_pilot_dbm(irspilot_scenario *scenario, double dbm)
    {
        return guarded([&]
                       {
                           require(scenario != nullptr, "scenario is NULL");
                           auto c = scenario->config;
                           c.avg_pilot_power = dbm_to_watts(dbm);
                           c.validate();
                           scenario->config = c; });
    }

    irspilot_status irspilot_scenario_set_elements(irspilot_scenario *scenario, uint32_t elements)
    {
        return guarded([&]
                       {
                           require(scenario != nullptr, "scenario is NULL");
                           require(elements >= 1, "element count must be positive");
                           for (auto &irs : scenario->config.irs_list)
                               irs.num_elements = elements; });
    }

    irspilot_status irspilot_link_statistics(const irspilot_scenario *scenario, const double user[3], double *beta2,
                                             size_t cap)
    {
        return guarded([&]
                       {
                           require(scenario && beta2, "NULL argument");
                           const auto stats = link_statistics(scenario->config, to_position(user));
                           require_capacity(cap, stats.beta2.size());
                           std::copy(stats.beta2.begin(), stats.beta2.end(), beta2); });
    }

    irspilot_status irspilot_allocate(const double *beta, const uint32_t *elements, size_t num_irs, double budget,
                                      double sigma_z2, double gamma, const char *strategy, double *power,
                                      irspilot_allocation_info *info)
    {
        return guarded([&]
                       {
                           require(beta && elements && power && strategy, "NULL argument");
                           auto s = parse_strategy(strategy);
                           if (!s || *s == Strategy::custom)
                               throw InvalidArgument(std::string("unknown strategy '") + strategy + "'");
                           AllocationProblem problem;
                           problem.beta.assign(beta, beta + num_irs);
                           problem.elements.assign(elements, elements + num_irs);
                           problem.budget = budget;
                           problem.sigma_z2 = sigma_z2;
                           problem.min_snr_gamma = gamma;
                           const auto alloc = allocate(*s, problem);
                           std::copy(alloc.power.begin(), alloc.power.end(), power);
                           fill_info(info, alloc, problem); });
    }

    irspilot_status irspilot_allocate_scenario(const irspilot_scenario *scenario, const double user[3],
                                               const char *strategy, const char *mask, double gamma, double *power,
                                               size_t cap, size_t *count, irspilot_allocation_info *info)
    {
        return guarded([&]
                       {
                           require(scenario && strategy && power, "NULL argument");
                           auto s = parse_strategy(strategy);
                           if (!s || *s == Strategy::custom)
                               throw InvalidArgument(std::string("unknown strategy '") + strategy + "'");
                           const auto &cfg = scenario->config;
                           cfg.validate();
                           const auto stats = link_statistics(cfg, to_position(user));
                           const auto problem = masked_problem(cfg, stats, mask_or_all(mask, cfg.num_irs()), gamma);
                           const auto alloc = allocate(*s, problem);
                           if (count)
                               *count = alloc.power.size();
                           require_capacity(cap, alloc.power.size());
                           std::copy(alloc.power.begin(), alloc.power.end(), power);
                           fill_info(info, alloc, problem); });
    }

    irspilot_status irspilot_capacity_eval(const irspilot_scenario *scenario, const double user[3], const char *scheme,
                                           const char *mask, double gamma, irspilot_capacity *out)
    {
        return guarded([&]
                       {
                           require(scenario && out, "NULL argument");
                           const auto sch = scheme_from(scheme);
                           const auto &cfg = scenario->config;
                           cfg.validate();
                           const auto stats = link_statistics(cfg, to_position(user));
                           const auto m = mask_or_all(mask, cfg.num_irs());
                           const auto problem = masked_problem(cfg, stats, m, gamma);

                           std::vector<double> beta2;
                           for (double b : problem.beta)
                               beta2.push_back(b * b);
                           GainBreakdown g;
                           if (sch == Scheme::perfect_csi)
                               g = expected_gain_perfect_csi(beta2, problem.elements);
                           else if (sch == Scheme::random_phase)
                               g = expected_gain_random_phase(beta2, problem.elements);
                           else
                               g = expected_gain(beta2, problem.elements, allocate(*strategy_of(sch), problem).power,
                                                 cfg.noise_bs);
                           out->diagonal = g.diagonal;
                           out->intra = g.intra;
                           out->inter = g.inter;
                           out->total_gain = g.total;
                           out->bound = ergodic_capacity_bound(g.total, cfg.downlink_power, cfg.noise_user);
                           out->high_snr = high_snr_rate(g.total, cfg.downlink_power, cfg.noise_user);
                           out->low_snr = low_snr_rate(g.total, cfg.downlink_power, cfg.noise_user); });
    }

    irspilot_status irspilot_simulate(const irspilot_scenario *scenario, const double user[3], const char *scheme,
                                      const char *mask, uint64_t n_trials, uint64_t seed, unsigned threads,
                                      double gamma, irspilot_rate_report *out)
    {
        return guarded([&]
                       {
                           require(scenario && out, "NULL argument");
                           const auto sch = scheme_from(scheme);
                           const auto &cfg = scenario->config;
                           const auto pos = to_position(user);
                           const auto m = mask_or_all(mask, cfg.num_irs());
                           PilotAllocation alloc;
                           if (auto s = strategy_of(sch))
                               alloc = allocate_for(cfg, pos, *s, m, gamma);
                           const auto r = ergodic_rate(cfg, pos, alloc, m, n_trials, seed, sch, threads);
                           out->mean_rate = r.mean_rate;
                           out->std_error = r.std_error;
                           out->closed_form_bound = r.closed_form_bound;
                           out->closed_form_gain = r.closed_form_gain;
                           out->mean_gain = r.mean_gain;
                           out->gain_std_error = r.gain_std_error;
                           out->n_trials = r.n_trials;
                           out->single_trial = r.single_trial ? 1 : 0; });
    }

    irspilot_status irspilot_experiment_builtin(const char *name, uint64_t seed, irspilot_experiment **out)
    {
        if (out)
            *out = nullptr;
        return guarded([&]
                       {
                           require(name && out, "NULL argument");
                           *out = new irspilot_experiment{builtin_experiment(name, seed), {}}; });
    }

    irspilot_status irspilot_experiment_load(const char *path, irspilot_experiment **out)
    {
        if (out)
            *out = nullptr;
        return guarded([&]
                       {
                           require(path && out, "NULL argument");
                           *out = new irspilot_experiment{load_experiment(path), {}}; });
    }

    void irspilot_experiment_free(irspilot_experiment *experiment)
    {
        delete experiment;
    }

    irspilot_status irspilot_experiment_set_seed(irspilot_experiment *experiment, uint64_t seed)
    {
        return guarded([&]
                       {
                           require(experiment != nullptr, "experiment is NULL");
                           // Presets with random geometry derive it from the seed.
                           const auto &names = builtin_experiment_names();
                           const auto &spec = experiment->spec;
                           if (std::find(names.begin(), names.end(), spec.name) != names.end() &&
                               spec == builtin_experiment(spec.name, spec.master_seed))
                           {
                               auto fresh = builtin_experiment(spec.name, seed);
                               fresh.n_trials = spec.n_trials;
                               fresh.output_path = spec.output_path;
                               fresh.threads = spec.threads;
                               experiment->spec = fresh;
                           }
                           else
                               experiment->spec.master_seed = seed; });
    }

    irspilot_status irspilot_experiment_set_trials(irspilot_experiment *experiment, uint64_t n_trials)
    {
        return guarded([&]
                       {
                           require(experiment != nullptr, "experiment is NULL");
                           require(n_trials >= 1, "n_trials must be at least 1");
                           experiment->spec.n_trials = n_trials; });
    }

    irspilot_status irspilot_experiment_set_threads(irspilot_experiment *experiment, unsigned threads)
    {
        return guarded([&]
                       {
                           require(experiment != nullptr, "experiment is NULL");
                           experiment->spec.threads = threads; });
    }

    irspilot_status irspilot_experiment_set_output(irspilot_experiment *experiment, const char *path)
    {
        return guarded([&]
                       {
                           require(experiment != nullptr, "experiment is NULL");
                           experiment->spec.output_path = path ? path : ""; });
    }

    irspilot_status irspilot_experiment_scenario(const irspilot_experiment *experiment, irspilot_scenario **out)
    {
        if (out)
            *out = nullptr;
        return guarded([&]
                       {
                           require(experiment && out, "NULL argument");
                           *out = new irspilot_scenario{experiment->spec.scenario}; });
    }

    irspilot_status irspilot_experiment_user(const irspilot_experiment *experiment, double user[3])
    {
        return guarded([&]
                       {
                           require(experiment && user, "NULL argument");
                           user[0] = experiment->spec.user.x;
                           user[1] = experiment->spec.user.y;
                           user[2] = experiment->spec.user.z; });
    }

    irspilot_status irspilot_experiment_emit(const irspilot_experiment *experiment, char *buf, size_t cap,
                                             size_t *needed)
    {
        std::string text;
        auto st = guarded([&]
                          {
                              require(experiment != nullptr, "experiment is NULL");
                              text = emit_experiment(experiment->spec); });
        return st == IRSPILOT_OK ? copy_out(text, buf, cap, needed) : st;
    }

    irspilot_status irspilot_experiment_run(irspilot_experiment *experiment, size_t *rows)
    {
        return guarded([&]
                       {
                           require(experiment != nullptr, "experiment is NULL");
                           const auto result = run_experiment(experiment->spec);
                           experiment->csv = format_csv(result, max_irs_count(experiment->spec));
                           if (rows)
                               *rows = result.size(); });
    }

    irspilot_status irspilot_experiment_csv(const irspilot_experiment *experiment, char *buf, size_t cap,
                                            size_t *needed)
    {
        if (!experiment)
            return fail(IRSPILOT_ERR_INVALID_ARGUMENT, "experiment is NULL");
        if (experiment->csv.empty())
            return fail(IRSPILOT_ERR_INVALID_ARGUMENT, "experiment has not been run");
        return copy_out(experiment->csv, buf, cap, needed);
    }
}
