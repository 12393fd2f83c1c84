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

// Command-line front end. Talks to the library only through the C interface.

#include "mmsite/mmsite.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace
{

int report_failure(mmsite_status status)
{
    const int code = mmsite_status_exit_code(status);
    std::cerr << "mmsite: error code=" << mmsite_status_name(status) << " exit=" << code << " message=\""
              << mmsite_last_error() << "\"\n";
    return code;
}

int config_failure(const std::string &message)
{
    std::cerr << "mmsite: error code=ConfigInvalid exit=2 message=\"" << message << "\"\n";
    return 2;
}

// Flags shared by train, oracle and pipeline; only flags given on the command line override the file.
struct Overrides
{
    std::string policy;
    double epsilon = 0, tau = 0, ucb_c = 0, eps0 = 0, t_half = 0;
    std::uint64_t iterations = 0, episodes = 0, seed = 0, samples = 0, window = 0;
    unsigned threads = 0;
    std::vector<CLI::Option *> opts;

    void add_training(CLI::App *app)
    {
        opts.push_back(app->add_option("--policy", policy, "eps-greedy|decayed-eps|softmax|ucb1"));
        opts.push_back(app->add_option("--epsilon", epsilon, "eps-greedy exploration rate"));
        opts.push_back(app->add_option("--tau", tau, "softmax temperature"));
        opts.push_back(app->add_option("--ucb-c", ucb_c, "UCB1 confidence weight"));
        opts.push_back(app->add_option("--eps0", eps0, "decayed-eps initial rate"));
        opts.push_back(app->add_option("--t-half", t_half, "decayed-eps half-life in iterations"));
        opts.push_back(app->add_option("--iterations", iterations, "iterations per episode"));
        opts.push_back(app->add_option("--episodes", episodes, "number of episodes"));
        opts.push_back(app->add_option("--window", window, "selection-frequency window"));
    }

    void add_common(CLI::Option *seed_opt, CLI::App *app)
    {
        opts.push_back(seed_opt);
        opts.push_back(app->add_option("--threads", threads, "worker threads (0: all)"));
    }

    void add_samples(CLI::App *app)
    {
        opts.push_back(app->add_option("--samples", samples, "Monte-Carlo samples per arm"));
    }

    std::string to_json() const
    {
        nlohmann::json j = nlohmann::json::object();
        for (const CLI::Option *o : opts)
        {
            if (o->count() == 0)
                continue;
            const std::string n = o->get_name();
            if (n == "--policy")
                j["policy"]["name"] = policy;
            else if (n == "--epsilon")
                j["policy"]["epsilon"] = epsilon;
            else if (n == "--tau")
                j["policy"]["tau"] = tau;
            else if (n == "--ucb-c")
                j["policy"]["ucb_c"] = ucb_c;
            else if (n == "--eps0")
                j["policy"]["eps0"] = eps0;
            else if (n == "--t-half")
                j["policy"]["t_half"] = t_half;
            else if (n == "--iterations")
                j["iterations"] = iterations;
            else if (n == "--episodes")
                j["episodes"] = episodes;
            else if (n == "--window")
                j["window"] = window;
            else if (n == "--seed")
                j["seed"] = seed;
            else if (n == "--threads")
                j["threads"] = threads;
            else if (n == "--samples")
                j["oracle_samples"] = samples;
        }
        return j.dump();
    }
};

struct ConfigHandle
{
    mmsite_config *ptr = nullptr;
    ~ConfigHandle() { mmsite_config_free(ptr); }
};

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"mmWave base-station site selection with multi-armed bandit learning"};
    app.require_subcommand(1);
    app.set_version_flag("--version", mmsite_version());

    // gen-env
    std::string env_config, env_out;
    std::uint64_t env_seed = 0;
    auto *gen = app.add_subcommand("gen-env", "Generate a synthetic urban DEM");
    gen->add_option("--config", env_config, "generator or run configuration (JSON)")->required();
    auto *gen_seed = gen->add_option("--seed", env_seed, "scene seed (overrides the file)");
    gen->add_option("--out", env_out, "output DEM file")->required();

    // candidates
    std::string cand_dem, cand_out;
    double cand_margin = 0.0, cand_rx = 1.5, cand_mast = 0.5;
    bool cand_no_mask = false;
    auto *cand = app.add_subcommand("candidates", "Select candidate BS sites from rooftop edges");
    cand->add_option("--dem", cand_dem, "DEM file")->required();
    cand->add_option("--margin", cand_margin, "boundary margin in meters")->capture_default_str();
    cand->add_option("--rx-height", cand_rx, "receiver height in meters")->capture_default_str();
    cand->add_option("--mast-height", cand_mast, "antenna height above the roof")->capture_default_str();
    cand->add_flag("--no-mask", cand_no_mask, "omit packed visibility masks");
    cand->add_option("--out", cand_out, "output candidates file")->required();

    // train
    std::string train_scenario, train_out;
    bool dump_fields = false;
    Overrides train_ov;
    auto *train = app.add_subcommand("train", "Run bandit training episodes");
    train->add_option("--scenario", train_scenario, "run configuration (JSON)")->required();
    train->add_option("--out", train_out, "output directory")->required();
    train->add_flag("--dump-fields", dump_fields, "also write field_<arm>.csv per candidate");
    train_ov.add_training(train);
    train_ov.add_common(train->add_option("--seed", train_ov.seed, "base seed"), train);

    // oracle
    std::string oracle_scenario, oracle_out;
    Overrides oracle_ov;
    auto *oracle = app.add_subcommand("oracle", "Brute-force expected coverage of every candidate");
    oracle->add_option("--scenario", oracle_scenario, "run configuration (JSON)")->required();
    oracle->add_option("--out", oracle_out, "output directory for oracle.csv");
    oracle_ov.add_samples(oracle);
    oracle_ov.add_common(oracle->add_option("--seed", oracle_ov.seed, "seed"), oracle);

    // report
    std::string report_dir;
    auto *report = app.add_subcommand("report", "Summarize a run directory");
    report->add_option("run_dir", report_dir, "run directory")->required();

    // pipeline
    std::string pipe_config, pipe_out;
    Overrides pipe_ov;
    auto *pipe = app.add_subcommand("pipeline", "DEM, candidates, training, oracle and reports in one go");
    pipe->add_option("--config", pipe_config, "run configuration (JSON)")->required();
    pipe->add_option("--out", pipe_out, "output directory")->required();
    pipe_ov.add_training(pipe);
    pipe_ov.add_samples(pipe);
    pipe_ov.add_common(pipe->add_option("--seed", pipe_ov.seed, "base seed"), pipe);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        return config_failure(e.what());
    }

    mmsite_status st = MMSITE_OK;
    if (*gen)
    {
        mmsite_urban_config cfg;
        st = mmsite_urban_config_load(env_config.c_str(), &cfg);
        if (st == MMSITE_OK)
        {
            if (gen_seed->count() > 0)
                cfg.seed = env_seed;
            st = mmsite_cmd_gen_env(&cfg, env_out.c_str());
        }
    }
    else if (*cand)
    {
        st = mmsite_cmd_candidates(cand_dem.c_str(), cand_margin, cand_rx, cand_mast, cand_no_mask ? 0 : 1,
                                   cand_out.c_str());
    }
    else if (*train)
    {
        ConfigHandle cfg;
        st = mmsite_config_load(train_scenario.c_str(), train_ov.to_json().c_str(), &cfg.ptr);
        if (st == MMSITE_OK)
            st = mmsite_cmd_train(cfg.ptr, train_out.c_str(), dump_fields ? 1 : 0);
    }
    else if (*oracle)
    {
        ConfigHandle cfg;
        size_t best = 0;
        st = mmsite_config_load(oracle_scenario.c_str(), oracle_ov.to_json().c_str(), &cfg.ptr);
        if (st == MMSITE_OK)
            st = mmsite_cmd_oracle(cfg.ptr, oracle_out.empty() ? nullptr : oracle_out.c_str(), &best);
        if (st == MMSITE_OK)
            std::cout << "oracle best arm: " << best << "\n";
    }
    else if (*report)
    {
        size_t needed = 0;
        st = mmsite_cmd_report(report_dir.c_str(), nullptr, 0, &needed);
        if (st == MMSITE_OK)
        {
            std::string buf(needed, '\0');
            st = mmsite_cmd_report(report_dir.c_str(), buf.data(), buf.size(), &needed);
            if (st == MMSITE_OK)
                std::cout << buf.c_str();
        }
    }
    else if (*pipe)
    {
        ConfigHandle cfg;
        st = mmsite_config_load(pipe_config.c_str(), pipe_ov.to_json().c_str(), &cfg.ptr);
        if (st == MMSITE_OK)
            st = mmsite_cmd_pipeline(cfg.ptr, pipe_out.c_str());
    }
    return st == MMSITE_OK ? 0 : report_failure(st);
}
