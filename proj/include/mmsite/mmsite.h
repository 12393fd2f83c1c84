// SPDX-License-Identifier: Apache-2.0
//
// mmsite: mmWave base-station site selection by multi-armed bandit learning
// Copyright (C) 2026 The mmsite authors
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

/* C interface of the mmsite library. Every function returns an mmsite_status;
 * on failure mmsite_last_error() describes the problem (per calling thread).
 * Objects are opaque handles released by the matching *_free function. */

#ifndef MMSITE_H
#define MMSITE_H

#include <stddef.h>
#include <stdint.h>

#if defined _WIN32 || defined __CYGWIN__
#  ifdef MMSITE_BUILDING_LIBRARY
#    define MMSITE_API __declspec(dllexport)
#  else
#    define MMSITE_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__) && __GNUC__ >= 4
#  define MMSITE_API __attribute__((visibility("default")))
#else
#  define MMSITE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mmsite_status
{
    MMSITE_OK = 0,
    MMSITE_ERR_CONFIG_INVALID = 1,
    MMSITE_ERR_IO = 2,
    MMSITE_ERR_FORMAT = 3,
    MMSITE_ERR_PLACEMENT_FAILURE = 4,
    MMSITE_ERR_EMPTY_SERVICE_AREA = 5,
    MMSITE_ERR_OUT_OF_BOUNDS = 6,
    MMSITE_ERR_NO_BUILDINGS = 7,
    MMSITE_ERR_NO_CANDIDATES = 8,
    MMSITE_ERR_INVALID_HEIGHTS = 9,
    MMSITE_ERR_GRID_MISMATCH = 10,
    MMSITE_ERR_NO_ARMS = 11,
    MMSITE_ERR_INVALID_TEMPERATURE = 12,
    MMSITE_ERR_INVALID_REWARD = 13,
    MMSITE_ERR_ARM_NEVER_SELECTED = 14,
    MMSITE_ERR_MISSING_ARTIFACTS = 15,
    MMSITE_ERR_INVALID_ARGUMENT = 16,
    MMSITE_ERR_INTERNAL = 17
} mmsite_status;

typedef struct mmsite_config mmsite_config;
typedef struct mmsite_dem mmsite_dem;
typedef struct mmsite_scenario mmsite_scenario;
typedef struct mmsite_summary mmsite_summary;

MMSITE_API const char *mmsite_version(void);
MMSITE_API const char *mmsite_status_name(mmsite_status status);
/* 0 success, 2 config error, 3 input-format error, 4 runtime failure. */
MMSITE_API int mmsite_status_exit_code(mmsite_status status);
MMSITE_API const char *mmsite_last_error(void);

/* ---- run configuration (JSON document, see README) ---- */

/* overrides_json may be NULL; it is merge-patched over the document. */
MMSITE_API mmsite_status mmsite_config_load(const char *path, const char *overrides_json, mmsite_config **out);
MMSITE_API mmsite_status mmsite_config_parse(const char *json, const char *overrides_json, mmsite_config **out);
MMSITE_API void mmsite_config_free(mmsite_config *config);
/* Writes 16 hex digits and a terminating NUL. */
MMSITE_API mmsite_status mmsite_config_hash(const mmsite_config *config, char out[17]);

/* ---- environment ---- */

typedef struct mmsite_urban_config
{
    double area_width;
    double area_depth;
    double height_min;
    double height_max;
    double width_min;
    double width_max;
    int building_count;
    double boundary_clearance;
    double min_separation;
    double resolution;
    uint64_t seed;
} mmsite_urban_config;

typedef struct mmsite_dem_info
{
    double resolution;
    size_t n_x;
    size_t n_y;
    size_t buildings;
    size_t building_cells;
} mmsite_dem_info;

MMSITE_API void mmsite_urban_config_default(mmsite_urban_config *out);
/* Accepts a bare generator object or a run configuration with an "environment" member. */
MMSITE_API mmsite_status mmsite_urban_config_load(const char *path, mmsite_urban_config *out);
MMSITE_API mmsite_status mmsite_dem_generate(const mmsite_urban_config *config, mmsite_dem **out);
MMSITE_API mmsite_status mmsite_dem_load(const char *path, mmsite_dem **out);
MMSITE_API mmsite_status mmsite_dem_save(const mmsite_dem *dem, const char *path);
MMSITE_API void mmsite_dem_free(mmsite_dem *dem);
MMSITE_API mmsite_status mmsite_dem_get_info(const mmsite_dem *dem, mmsite_dem_info *out);
/* Points are {x, y, z} in meters; *visible is set to 0 or 1. */
MMSITE_API mmsite_status mmsite_line_of_sight(const mmsite_dem *dem, const double a[3], const double b[3], int *visible);

/* ---- scenario ---- */

typedef struct mmsite_link_budget
{
    double fc_ghz;
    double sigma_los;
    double sigma_nlos;
    double max_path_loss;
    double h_ut;
} mmsite_link_budget;

typedef struct mmsite_candidate
{
    size_t id;
    double x;
    double y;
    double z;
    size_t building;
    int side; /* 0 south, 1 east, 2 north, 3 west */
    size_t visible_count;
} mmsite_candidate;

MMSITE_API void mmsite_link_budget_default(mmsite_link_budget *out);
MMSITE_API mmsite_status mmsite_scenario_build(const mmsite_dem *dem, double boundary_margin, double mast_height,
                                               const mmsite_link_budget *budget, mmsite_scenario **out);
MMSITE_API mmsite_status mmsite_scenario_from_config(const mmsite_config *config, mmsite_scenario **out);
MMSITE_API void mmsite_scenario_free(mmsite_scenario *scenario);
MMSITE_API mmsite_status mmsite_scenario_arms(const mmsite_scenario *scenario, size_t *arms);
MMSITE_API mmsite_status mmsite_scenario_grid_size(const mmsite_scenario *scenario, size_t *points);
MMSITE_API mmsite_status mmsite_scenario_candidate(const mmsite_scenario *scenario, size_t index,
                                                   mmsite_candidate *out);
MMSITE_API mmsite_status mmsite_scenario_save_candidates(const mmsite_scenario *scenario, double boundary_margin,
                                                         int include_mask, const char *path);

/* ---- training ---- */

typedef enum mmsite_policy_kind
{
    MMSITE_POLICY_EPS_GREEDY = 0,
    MMSITE_POLICY_DECAYED_EPS = 1,
    MMSITE_POLICY_SOFTMAX = 2,
    MMSITE_POLICY_UCB1 = 3
} mmsite_policy_kind;

typedef struct mmsite_policy
{
    mmsite_policy_kind kind;
    double epsilon; /* eps-greedy */
    double eps0;    /* decayed-eps */
    double t_half;  /* decayed-eps */
    double tau;     /* softmax */
    double ucb_c;   /* ucb1 */
} mmsite_policy;

typedef struct mmsite_experiment_options
{
    size_t iterations;
    size_t episodes;
    uint64_t seed;
    size_t window;
    unsigned threads; /* 0: all hardware threads */
} mmsite_experiment_options;

MMSITE_API void mmsite_policy_default(mmsite_policy_kind kind, mmsite_policy *out);
/* Names: eps-greedy, decayed-eps, softmax, ucb1. */
MMSITE_API mmsite_status mmsite_policy_kind_from_name(const char *name, mmsite_policy_kind *out);
MMSITE_API void mmsite_experiment_options_default(mmsite_experiment_options *out);
MMSITE_API mmsite_status mmsite_experiment_run(const mmsite_scenario *scenario, const mmsite_policy *policy,
                                               const mmsite_experiment_options *options, mmsite_summary **out);
MMSITE_API void mmsite_summary_free(mmsite_summary *summary);
MMSITE_API mmsite_status mmsite_summary_best_arm(const mmsite_summary *summary, size_t *arm);
/* Copies min(n, arms) values. */
MMSITE_API mmsite_status mmsite_summary_final_q(const mmsite_summary *summary, double *out, size_t n);
/* Copies min(n, iterations) values. */
MMSITE_API mmsite_status mmsite_summary_reward_curve(const mmsite_summary *summary, double *out, size_t n);
/* Writes rewards.csv, selections.csv, q_final.csv, coverage_map.csv; hash may be NULL. */
MMSITE_API mmsite_status mmsite_summary_write(const mmsite_summary *summary, const mmsite_scenario *scenario,
                                              const char *config_hash, const char *dir);

/* Monte-Carlo and closed-form expected coverage per arm; arrays hold n >= arms values. */
MMSITE_API mmsite_status mmsite_oracle_run(const mmsite_scenario *scenario, size_t samples, uint64_t seed,
                                           double *monte_carlo, double *closed_form, size_t n, size_t *best_arm);

/* ---- commands backing the CLI ---- */

MMSITE_API mmsite_status mmsite_cmd_gen_env(const mmsite_urban_config *config, const char *out_path);
MMSITE_API mmsite_status mmsite_cmd_candidates(const char *dem_path, double boundary_margin, double rx_height,
                                               double mast_height, int include_mask, const char *out_path);
MMSITE_API mmsite_status mmsite_cmd_train(const mmsite_config *config, const char *out_dir, int dump_fields);
/* out_dir may be NULL (no file written); best_arm may be NULL. */
MMSITE_API mmsite_status mmsite_cmd_oracle(const mmsite_config *config, const char *out_dir, size_t *best_arm);
MMSITE_API mmsite_status mmsite_cmd_pipeline(const mmsite_config *config, const char *out_dir);
/* Copies the NUL-terminated report into buf when cap is large enough; *needed
 * receives the required capacity including the NUL. buf may be NULL to query. */
MMSITE_API mmsite_status mmsite_cmd_report(const char *run_dir, char *buf, size_t cap, size_t *needed);

#ifdef __cplusplus
}
#endif

#endif
