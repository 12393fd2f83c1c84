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

#include "mmsite/mmsite.h"

#include "mmsite/config.hpp"
#include "mmsite/error.hpp"
#include "mmsite/harness.hpp"
#include "mmsite/io.hpp"
#include "mmsite/pipeline.hpp"

#include "file_util.hpp"

#include <algorithm>
#include <cstring>
#include <new>
#include <string>

struct mmsite_config
{
    mmsite::RunConfig value;
};

struct mmsite_dem
{
    mmsite::ElevationModel value;
};

struct mmsite_scenario
{
    mmsite::Scenario value;
};

struct mmsite_summary
{
    mmsite::ExperimentSummary value;
};

namespace
{

thread_local std::string last_error;

mmsite_status set_error(mmsite_status status, const char *what)
{
    last_error = what;
    return status;
}

template <class Fn>
mmsite_status guarded(Fn &&fn) noexcept
{
    try
    {
        last_error.clear();
        fn();
        return MMSITE_OK;
    }
    catch (const mmsite::Error &e)
    {
        return set_error(static_cast<mmsite_status>(e.code()), e.what());
    }
    catch (const std::bad_alloc &)
    {
        return set_error(MMSITE_ERR_INTERNAL, "out of memory");
    }
    catch (const std::exception &e)
    {
        return set_error(MMSITE_ERR_INTERNAL, e.what());
    }
    catch (...)
    {
        return set_error(MMSITE_ERR_INTERNAL, "unknown exception");
    }
}

template <class T>
void require_ptr(const T *p, const char *name)
{
    if (p == nullptr)
        mmsite::fail(mmsite::ErrorCode::InvalidArgument, std::string(name) + " must not be NULL");
}

mmsite::UrbanGenConfig to_cpp(const mmsite_urban_config &c)
{
    mmsite::UrbanGenConfig u;
    u.area_width = c.area_width;
    u.area_depth = c.area_depth;
    u.building_height = {c.height_min, c.height_max};
    u.building_width = {c.width_min, c.width_max};
    u.building_count = c.building_count;
    u.boundary_clearance = c.boundary_clearance;
    u.min_separation = c.min_separation;
    u.resolution = c.resolution;
    u.seed = c.seed;
    return u;
}

mmsite_urban_config to_c(const mmsite::UrbanGenConfig &u)
{
    return {u.area_width,     u.area_depth,         u.building_height.min, u.building_height.max,
            u.building_width.min, u.building_width.max, u.building_count,  u.boundary_clearance,
            u.min_separation, u.resolution,         u.seed};
}

mmsite::LinkBudget to_cpp(const mmsite_link_budget &b)
{
    return {b.fc_ghz, b.sigma_los, b.sigma_nlos, b.max_path_loss, b.h_ut};
}

mmsite::Policy to_cpp(const mmsite_policy &p)
{
    switch (p.kind)
    {
    case MMSITE_POLICY_EPS_GREEDY: return mmsite::EpsGreedy{p.epsilon};
    case MMSITE_POLICY_DECAYED_EPS: return mmsite::DecayedEpsGreedy{p.eps0, p.t_half};
    case MMSITE_POLICY_SOFTMAX: return mmsite::Softmax{p.tau};
    case MMSITE_POLICY_UCB1: return mmsite::Ucb1{p.ucb_c};
    }
    mmsite::fail(mmsite::ErrorCode::InvalidArgument, "unknown policy kind");
}

} // namespace

extern "C" {

const char *mmsite_version(void)
{
    return "1.0.0";
}

const char *mmsite_status_name(mmsite_status status)
{
    if (status == MMSITE_OK)
        return "OK";
    return mmsite::error_code_name(static_cast<mmsite::ErrorCode>(status));
}

int mmsite_status_exit_code(mmsite_status status)
{
    if (status == MMSITE_OK)
        return 0;
    return mmsite::error_exit_code(static_cast<mmsite::ErrorCode>(status));
}

const char *mmsite_last_error(void)
{
    return last_error.c_str();
}

mmsite_status mmsite_config_load(const char *path, const char *overrides_json, mmsite_config **out)
{
    return guarded([&] {
        require_ptr(path, "path");
        require_ptr(out, "out");
        *out = new mmsite_config{mmsite::load_config(path, overrides_json ? overrides_json : "")};
    });
}

mmsite_status mmsite_config_parse(const char *json, const char *overrides_json, mmsite_config **out)
{
    return guarded([&] {
        require_ptr(json, "json");
        require_ptr(out, "out");
        *out = new mmsite_config{mmsite::config_from_string(json, overrides_json ? overrides_json : "")};
    });
}

void mmsite_config_free(mmsite_config *config)
{
    delete config;
}

mmsite_status mmsite_config_hash(const mmsite_config *config, char out[17])
{
    return guarded([&] {
        require_ptr(config, "config");
        require_ptr(out, "out");
        const std::string h = mmsite::config_hash(config->value);
        std::memcpy(out, h.c_str(), 17);
    });
}

void mmsite_urban_config_default(mmsite_urban_config *out)
{
    if (out)
        *out = to_c(mmsite::UrbanGenConfig{});
}

mmsite_status mmsite_urban_config_load(const char *path, mmsite_urban_config *out)
{
    return guarded([&] {
        require_ptr(path, "path");
        require_ptr(out, "out");
        std::string text;
        try
        {
            text = mmsite::detail::read_text_file(path);
        }
        catch (const mmsite::Error &e)
        {
            mmsite::fail(mmsite::ErrorCode::ConfigInvalid, e.what());
        }
        *out = to_c(mmsite::urban_config_from_string(text, path));
    });
}

mmsite_status mmsite_dem_generate(const mmsite_urban_config *config, mmsite_dem **out)
{
    return guarded([&] {
        require_ptr(config, "config");
        require_ptr(out, "out");
        *out = new mmsite_dem{mmsite::generate_environment(to_cpp(*config))};
    });
}

mmsite_status mmsite_dem_load(const char *path, mmsite_dem **out)
{
    return guarded([&] {
        require_ptr(path, "path");
        require_ptr(out, "out");
        *out = new mmsite_dem{mmsite::load_dem(path)};
    });
}

mmsite_status mmsite_dem_save(const mmsite_dem *dem, const char *path)
{
    return guarded([&] {
        require_ptr(dem, "dem");
        require_ptr(path, "path");
        mmsite::save_dem(dem->value, path);
    });
}

void mmsite_dem_free(mmsite_dem *dem)
{
    delete dem;
}

mmsite_status mmsite_dem_get_info(const mmsite_dem *dem, mmsite_dem_info *out)
{
    return guarded([&] {
        require_ptr(dem, "dem");
        require_ptr(out, "out");
        const auto &d = dem->value;
        out->resolution = d.resolution();
        out->n_x = d.n_x();
        out->n_y = d.n_y();
        out->buildings = d.buildings().size();
        out->building_cells = static_cast<std::size_t>(
            std::count_if(d.elevation().begin(), d.elevation().end(), [](double e) { return e > 0.0; }));
    });
}

mmsite_status mmsite_line_of_sight(const mmsite_dem *dem, const double a[3], const double b[3], int *visible)
{
    return guarded([&] {
        require_ptr(dem, "dem");
        require_ptr(a, "a");
        require_ptr(b, "b");
        require_ptr(visible, "visible");
        *visible = mmsite::line_of_sight(dem->value, {a[0], a[1], a[2]}, {b[0], b[1], b[2]}) ? 1 : 0;
    });
}

void mmsite_link_budget_default(mmsite_link_budget *out)
{
    if (!out)
        return;
    const mmsite::LinkBudget b;
    *out = {b.fc_ghz, b.sigma_los, b.sigma_nlos, b.max_path_loss, b.h_ut};
}

mmsite_status mmsite_scenario_build(const mmsite_dem *dem, double boundary_margin, double mast_height,
                                    const mmsite_link_budget *budget, mmsite_scenario **out)
{
    return guarded([&] {
        require_ptr(dem, "dem");
        require_ptr(budget, "budget");
        require_ptr(out, "out");
        *out = new mmsite_scenario{
            mmsite::build_scenario(dem->value, mmsite::ScenarioParams{boundary_margin, mast_height, to_cpp(*budget)})};
    });
}

mmsite_status mmsite_scenario_from_config(const mmsite_config *config, mmsite_scenario **out)
{
    return guarded([&] {
        require_ptr(config, "config");
        require_ptr(out, "out");
        *out = new mmsite_scenario{mmsite::scenario_from_config(config->value)};
    });
}

void mmsite_scenario_free(mmsite_scenario *scenario)
{
    delete scenario;
}

mmsite_status mmsite_scenario_arms(const mmsite_scenario *scenario, size_t *arms)
{
    return guarded([&] {
        require_ptr(scenario, "scenario");
        require_ptr(arms, "arms");
        *arms = scenario->value.arms();
    });
}

mmsite_status mmsite_scenario_grid_size(const mmsite_scenario *scenario, size_t *points)
{
    return guarded([&] {
        require_ptr(scenario, "scenario");
        require_ptr(points, "points");
        *points = scenario->value.grid.size();
    });
}

mmsite_status mmsite_scenario_candidate(const mmsite_scenario *scenario, size_t index, mmsite_candidate *out)
{
    return guarded([&] {
        require_ptr(scenario, "scenario");
        require_ptr(out, "out");
        if (index >= scenario->value.arms())
            mmsite::fail(mmsite::ErrorCode::InvalidArgument, "candidate index out of range");
        const auto &c = scenario->value.candidates[index];
        *out = {c.id, c.position.x, c.position.y, c.position.z, c.building, static_cast<int>(c.side), c.visible_count};
    });
}

mmsite_status mmsite_scenario_save_candidates(const mmsite_scenario *scenario, double boundary_margin,
                                              int include_mask, const char *path)
{
    return guarded([&] {
        require_ptr(scenario, "scenario");
        require_ptr(path, "path");
        mmsite::save_candidates(scenario->value.candidates, scenario->value.grid.size(), boundary_margin,
                                include_mask != 0, path);
    });
}

void mmsite_policy_default(mmsite_policy_kind kind, mmsite_policy *out)
{
    if (!out)
        return;
    const mmsite::PolicyConfig d;
    *out = {kind, d.epsilon, d.eps0, d.t_half, d.tau, d.ucb_c};
}

mmsite_status mmsite_policy_kind_from_name(const char *name, mmsite_policy_kind *out)
{
    return guarded([&] {
        require_ptr(name, "name");
        require_ptr(out, "out");
        const std::string n = name;
        if (n == "eps-greedy")
            *out = MMSITE_POLICY_EPS_GREEDY;
        else if (n == "decayed-eps")
            *out = MMSITE_POLICY_DECAYED_EPS;
        else if (n == "softmax")
            *out = MMSITE_POLICY_SOFTMAX;
        else if (n == "ucb1")
            *out = MMSITE_POLICY_UCB1;
        else
            mmsite::fail(mmsite::ErrorCode::ConfigInvalid, "unknown policy '" + n + "'");
    });
}

void mmsite_experiment_options_default(mmsite_experiment_options *out)
{
    if (!out)
        return;
    const mmsite::ExperimentOptions d;
    *out = {d.iterations, d.episodes, d.base_seed, d.window, d.threads};
}

mmsite_status mmsite_experiment_run(const mmsite_scenario *scenario, const mmsite_policy *policy,
                                    const mmsite_experiment_options *options, mmsite_summary **out)
{
    return guarded([&] {
        require_ptr(scenario, "scenario");
        require_ptr(policy, "policy");
        require_ptr(options, "options");
        require_ptr(out, "out");
        mmsite::ExperimentOptions o{options->iterations, options->episodes, options->seed, options->window,
                                    options->threads};
        *out = new mmsite_summary{mmsite::run_experiment(scenario->value, to_cpp(*policy), o)};
    });
}

void mmsite_summary_free(mmsite_summary *summary)
{
    delete summary;
}

mmsite_status mmsite_summary_best_arm(const mmsite_summary *summary, size_t *arm)
{
    return guarded([&] {
        require_ptr(summary, "summary");
        require_ptr(arm, "arm");
        *arm = summary->value.best_arm;
    });
}

mmsite_status mmsite_summary_final_q(const mmsite_summary *summary, double *out, size_t n)
{
    return guarded([&] {
        require_ptr(summary, "summary");
        require_ptr(out, "out");
        const auto &q = summary->value.final_q;
        std::copy_n(q.begin(), std::min(n, q.size()), out);
    });
}

mmsite_status mmsite_summary_reward_curve(const mmsite_summary *summary, double *out, size_t n)
{
    return guarded([&] {
        require_ptr(summary, "summary");
        require_ptr(out, "out");
        const auto &r = summary->value.mean_reward_curve;
        std::copy_n(r.begin(), std::min(n, r.size()), out);
    });
}

mmsite_status mmsite_summary_write(const mmsite_summary *summary, const mmsite_scenario *scenario,
                                   const char *config_hash, const char *dir)
{
    return guarded([&] {
        require_ptr(summary, "summary");
        require_ptr(scenario, "scenario");
        require_ptr(dir, "dir");
        mmsite::write_training_artifacts(summary->value, scenario->value,
                                         config_hash ? config_hash : "0000000000000000", dir);
    });
}

mmsite_status mmsite_oracle_run(const mmsite_scenario *scenario, size_t samples, uint64_t seed, double *monte_carlo,
                                double *closed_form, size_t n, size_t *best_arm)
{
    return guarded([&] {
        require_ptr(scenario, "scenario");
        if (n < scenario->value.arms())
            mmsite::fail(mmsite::ErrorCode::InvalidArgument, "output arrays are shorter than the arm count");
        const auto r = mmsite::brute_force_oracle(scenario->value, samples, seed);
        if (monte_carlo)
            std::copy(r.monte_carlo.begin(), r.monte_carlo.end(), monte_carlo);
        if (closed_form)
            std::copy(r.closed_form.begin(), r.closed_form.end(), closed_form);
        if (best_arm)
            *best_arm = r.best_arm;
    });
}

mmsite_status mmsite_cmd_gen_env(const mmsite_urban_config *config, const char *out_path)
{
    return guarded([&] {
        require_ptr(config, "config");
        require_ptr(out_path, "out_path");
        mmsite::cmd_gen_env(to_cpp(*config), out_path);
    });
}

mmsite_status mmsite_cmd_candidates(const char *dem_path, double boundary_margin, double rx_height,
                                    double mast_height, int include_mask, const char *out_path)
{
    return guarded([&] {
        require_ptr(dem_path, "dem_path");
        require_ptr(out_path, "out_path");
        mmsite::cmd_candidates(dem_path, boundary_margin, rx_height, mast_height, include_mask != 0, out_path);
    });
}

mmsite_status mmsite_cmd_train(const mmsite_config *config, const char *out_dir, int dump_fields)
{
    return guarded([&] {
        require_ptr(config, "config");
        require_ptr(out_dir, "out_dir");
        mmsite::cmd_train(config->value, out_dir, dump_fields != 0);
    });
}

mmsite_status mmsite_cmd_oracle(const mmsite_config *config, const char *out_dir, size_t *best_arm)
{
    return guarded([&] {
        require_ptr(config, "config");
        const auto r = mmsite::cmd_oracle(config->value, out_dir ? out_dir : "");
        if (best_arm)
            *best_arm = r.best_arm;
    });
}

mmsite_status mmsite_cmd_pipeline(const mmsite_config *config, const char *out_dir)
{
    return guarded([&] {
        require_ptr(config, "config");
        require_ptr(out_dir, "out_dir");
        mmsite::cmd_pipeline(config->value, out_dir);
    });
}

mmsite_status mmsite_cmd_report(const char *run_dir, char *buf, size_t cap, size_t *needed)
{
    return guarded([&] {
        require_ptr(run_dir, "run_dir");
        const std::string text = mmsite::cmd_report(run_dir);
        if (needed)
            *needed = text.size() + 1;
        if (buf != nullptr)
        {
            if (cap < text.size() + 1)
                mmsite::fail(mmsite::ErrorCode::InvalidArgument, "report buffer too small");
            std::memcpy(buf, text.c_str(), text.size() + 1);
        }
    });
}

} // extern "C"
