/* SPDX-License-Identifier: Apache-2.0
 *
 * irspilot: pilot power allocation and link-level simulation for multi-IRS links
 * Copyright (C) 2026 The irspilot Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 *
 * C interface of libirspilot. Every function that can fail returns an
 * irspilot_status; on failure irspilot_last_error() describes the problem
 * (thread-local, valid until the next call on the same thread).
 *
 * Units: watts and linear gains unless a name says _dbm. Positions are
 * double[3] = {x, y, z} in meters.
 *
 * Strings returned through (buf, cap, needed) follow one rule: `needed`
 * receives the size including the terminating NUL; if buf is NULL or cap is
 * smaller, nothing is written and IRSPILOT_ERR_BUFFER_TOO_SMALL is returned.
 * Numeric output arrays given with a capacity return the same status when short.
 *
 * Functions that create a handle through `out` set *out to NULL on failure.
 */

#ifndef IRSPILOT_IRSPILOT_H
#define IRSPILOT_IRSPILOT_H

#include <stddef.h>
#include <stdint.h>

#if defined(IRSPILOT_BUILDING_LIBRARY)
#define IRSPILOT_API __attribute__((visibility("default")))
#else
#define IRSPILOT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum irspilot_status
{
    IRSPILOT_OK = 0,
    IRSPILOT_ERR_INVALID_ARGUMENT = 1,
    IRSPILOT_ERR_DOMAIN = 2,
    IRSPILOT_ERR_PARSE = 3,
    IRSPILOT_ERR_IO = 4,
    IRSPILOT_ERR_DEGENERATE = 5,     /* refined allocation radicand <= 0 */
    IRSPILOT_ERR_NO_CONVERGENCE = 6, /* exact solver hit its iteration cap */
    IRSPILOT_ERR_INTRACTABLE = 7,
    IRSPILOT_ERR_BUFFER_TOO_SMALL = 8,
    IRSPILOT_ERR_INTERNAL = 99
} irspilot_status;

IRSPILOT_API const char *irspilot_version(void);
IRSPILOT_API const char *irspilot_last_error(void);
IRSPILOT_API const char *irspilot_status_name(irspilot_status status);

/* Log messages (warnings about degenerate estimates and similar). A NULL
 * callback silences logging; the default prints warnings to stderr. */
typedef void (*irspilot_log_fn)(int level, const char *message, void *user_data);
IRSPILOT_API void irspilot_set_log_callback(irspilot_log_fn fn, void *user_data);

/* ---- scenarios --------------------------------------------------------- */

typedef struct irspilot_scenario irspilot_scenario;

IRSPILOT_API irspilot_status irspilot_scenario_parse(const char *text, irspilot_scenario **out);
IRSPILOT_API irspilot_status irspilot_scenario_load(const char *path, irspilot_scenario **out);
IRSPILOT_API void irspilot_scenario_free(irspilot_scenario *scenario);

IRSPILOT_API size_t irspilot_scenario_num_irs(const irspilot_scenario *scenario);
IRSPILOT_API irspilot_status irspilot_scenario_emit(const irspilot_scenario *scenario, char *buf, size_t cap,
                                                    size_t *needed);

IRSPILOT_API irspilot_status irspilot_scenario_set_pilot_dbm(irspilot_scenario *scenario, double dbm);
/* Sets M of every IRS. */
IRSPILOT_API irspilot_status irspilot_scenario_set_elements(irspilot_scenario *scenario, uint32_t elements);

/* beta_k^2 for every IRS; `beta2` must hold irspilot_scenario_num_irs() values. */
IRSPILOT_API irspilot_status irspilot_link_statistics(const irspilot_scenario *scenario, const double user[3],
                                                      double *beta2, size_t cap);

/* ---- allocation -------------------------------------------------------- */

typedef struct irspilot_papr
{
    double papr_linear;
    double papr_db;
    double upper_bound_linear;
    double upper_bound_db;
} irspilot_papr;

typedef struct irspilot_allocation_info
{
    irspilot_papr papr;
    double objective_phi;
    int moderate_snr; /* 1 when p_k beta_k^2 / sigma_z^2 >= gamma for every IRS */
} irspilot_allocation_info;

/* strategy: "identical", "refined", "simplified" or "exact". beta are amplitudes
 * (sqrt of beta_k^2). `power` receives K values. `info` may be NULL. */
IRSPILOT_API irspilot_status irspilot_allocate(const double *beta, const uint32_t *elements, size_t num_irs,
                                               double budget, double sigma_z2, double gamma, const char *strategy,
                                               double *power, irspilot_allocation_info *info);

/* Allocation for a scenario and user. mask is a string such as "10" or NULL for
 * all IRSs on; `power` receives one value per active IRS. */
IRSPILOT_API irspilot_status irspilot_allocate_scenario(const irspilot_scenario *scenario, const double user[3],
                                                        const char *strategy, const char *mask, double gamma,
                                                        double *power, size_t cap, size_t *count,
                                                        irspilot_allocation_info *info);

/* ---- capacity and simulation ------------------------------------------ */

typedef struct irspilot_capacity
{
    double diagonal;
    double intra;
    double inter;
    double total_gain;
    double bound;    /* log2(1 + q gain / sigma_n^2) */
    double high_snr; /* log2(q gain / sigma_n^2) */
    double low_snr;  /* q gain / sigma_n^2 / ln 2 */
} irspilot_capacity;

/* scheme: a strategy name, "perfect-csi" or "random-phase". */
IRSPILOT_API irspilot_status irspilot_capacity_eval(const irspilot_scenario *scenario, const double user[3],
                                                    const char *scheme, const char *mask, double gamma,
                                                    irspilot_capacity *out);

typedef struct irspilot_rate_report
{
    double mean_rate;
    double std_error;
    double closed_form_bound;
    double closed_form_gain;
    double mean_gain;
    double gain_std_error;
    uint64_t n_trials;
    int single_trial;
} irspilot_rate_report;

/* threads = 0 uses every hardware thread; the result does not depend on it. */
IRSPILOT_API irspilot_status irspilot_simulate(const irspilot_scenario *scenario, const double user[3],
                                               const char *scheme, const char *mask, uint64_t n_trials,
                                               uint64_t seed, unsigned threads, double gamma,
                                               irspilot_rate_report *out);

/* ---- experiments ------------------------------------------------------- */

typedef struct irspilot_experiment irspilot_experiment;

IRSPILOT_API irspilot_status irspilot_experiment_builtin(const char *name, uint64_t seed, irspilot_experiment **out);
IRSPILOT_API irspilot_status irspilot_experiment_load(const char *path, irspilot_experiment **out);
IRSPILOT_API void irspilot_experiment_free(irspilot_experiment *experiment);

IRSPILOT_API irspilot_status irspilot_experiment_set_seed(irspilot_experiment *experiment, uint64_t seed);
IRSPILOT_API irspilot_status irspilot_experiment_set_trials(irspilot_experiment *experiment, uint64_t n_trials);
IRSPILOT_API irspilot_status irspilot_experiment_set_threads(irspilot_experiment *experiment, unsigned threads);
/* NULL or "" disables file output. */
IRSPILOT_API irspilot_status irspilot_experiment_set_output(irspilot_experiment *experiment, const char *path);

/* Copies of the experiment's base scenario and user position. */
IRSPILOT_API irspilot_status irspilot_experiment_scenario(const irspilot_experiment *experiment,
                                                          irspilot_scenario **out);
IRSPILOT_API irspilot_status irspilot_experiment_user(const irspilot_experiment *experiment, double user[3]);

IRSPILOT_API irspilot_status irspilot_experiment_emit(const irspilot_experiment *experiment, char *buf, size_t cap,
                                                      size_t *needed);

/* Runs the sweep (and writes the CSV plus manifest when an output path is set). */
IRSPILOT_API irspilot_status irspilot_experiment_run(irspilot_experiment *experiment, size_t *rows);

/* CSV text of the last run. */
IRSPILOT_API irspilot_status irspilot_experiment_csv(const irspilot_experiment *experiment, char *buf, size_t cap,
                                                     size_t *needed);

#ifdef __cplusplus
}
#endif

#endif /* IRSPILOT_IRSPILOT_H */
