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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
//
//   mmsite_acceptance <reference_scenario.json> <scratch-dir>

#include "mmsite/bandit.hpp"
#include "mmsite/channel.hpp"
#include "mmsite/config.hpp"
#include "mmsite/error.hpp"
#include "mmsite/harness.hpp"
#include "mmsite/pipeline.hpp"
#include "mmsite/viewshed.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace mmsite;
namespace fs = std::filesystem;

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string &detail)
{
    std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    failures += ok ? 0 : 1;
}

std::string fmt(const char *f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// ---- 1 ----
void path_loss_exactness()
{
    const auto t0 = Clock::now();
    double worst = std::abs(pl_los_mean(100.0, 28.0, 10.0, 1.5) - oracle::los_db(100.0, 28.0, 10.0, 1.5));
    worst = std::max(worst, std::abs(pl_nlos_mean(100.0, 28.0, 1.5) - oracle::nlos_db(100.0, 28.0, 1.5)));
    oracle::Gen g(1);
    for (int i = 0; i < 1000; ++i) {
        const double d = g.uniform(1.0, 1000.0);
        const double fc = g.uniform(0.5, 100.0);
        const double hbs = g.uniform(1.01, 50.0);
        const double hut = g.uniform(1.01, 22.5);
        worst = std::max(worst, std::abs(pl_los_mean(d, fc, hbs, hut) - oracle::los_db(d, fc, hbs, hut)));
        worst = std::max(worst, std::abs(pl_nlos_mean(d, fc, hut) - oracle::nlos_db(d, fc, hut)));
    }
    const double t = seconds_since(t0);
    report(1, worst <= 1e-9 && t < 1.0, fmt("max |error| %.3g dB over 1000 random points, %.3f s", worst, t));
}

// ---- 2 ----
void shadow_fading()
{
    const auto t0 = Clock::now();
    PathLossField f;
    f.mean_loss = {120.64};
    f.sigma = {6.0};
    f.link_state = {0};
    LinkBudget b;
    Rng rng(derive_seed(2, static_cast<std::uint64_t>(Stream::Channel)));
    const std::size_t n = 1000000;
    std::size_t hits = 0;
    std::vector<double> loss(1);
    for (std::size_t i = 0; i < n; ++i) {
        sample_path_loss(f, rng, loss);
        hits += loss[0] < b.max_path_loss;
    }
    const double emp = static_cast<double>(hits) / n;
    const double want = oracle::phi((110.0 - 120.64) / 6.0);
    const double t = seconds_since(t0);
    report(2, std::abs(emp - want) <= 0.001 && std::abs(want - 0.0381) < 5e-5 && t < 5.0,
           fmt("empirical %.5f vs Phi(-1.7733) %.5f, %.2f s", emp, want, t));
}

// ---- 3 ----
void viewshed_agreement()
{
    const auto t0 = Clock::now();
    UrbanGenConfig c;
    c.seed = 42;
    const auto dem = generate_environment(c);
    const auto grid = derive_service_grid(dem, 1.5);
    const auto sites = enumerate_rooftop_edge_points(dem);
    oracle::Gen g(3);
    const int pairs = 10000;
    int agree = 0, grazing = 0, hard = 0;
    for (int i = 0; i < pairs; ++i) {
        const auto &s = sites[g.index(sites.size())].position;
        const auto &p = grid.points[g.index(grid.size())];
        const bool fast = line_of_sight(dem, s, p);
        const oracle::Seg seg{s.x, s.y, s.z, p.x, p.y, p.z};
        if (fast == oracle::sampled_los(dem, seg))
            ++agree;
        else if (oracle::grazing(dem, seg))
            ++grazing;
        else
            ++hard;
    }
    const double t = seconds_since(t0);
    const double rate = static_cast<double>(agree) / pairs;
    report(3, dem.buildings().size() == 6 && rate >= 0.99 && hard == 0 && t < 30.0,
           fmt("agreement %.4f over %d pairs, %d grazing and %d non-grazing disagreements, %.1f s", rate, pairs,
               grazing, hard, t));
}

// ---- 4 ----
void bandit_correctness()
{
    const auto t0 = Clock::now();
    oracle::Gen g(4);
    bool ok = true;
    std::string why;

    ArmStats s(1);
    std::vector<double> r;
    for (int i = 0; i < 1000; ++i) {
        r.push_back(g.uniform(0.0, 1.0));
        s.update(0, r.back());
    }
    const double batch = std::accumulate(r.begin(), r.end(), 0.0) / r.size();
    const double qerr = std::abs(s.q()[0] - batch);
    if (qerr > 1e-12) {
        ok = false;
        why += " incremental-mean";
    }

    double sum_err = 0.0, shift_err = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t k = 1 + g.index(20);
        auto q = g.vec(k, -3.0, 3.0);
        const double tau = std::exp(g.uniform(std::log(1e-3), std::log(1e3)));
        const auto p = softmax_probabilities(q, tau);
        sum_err = std::max(sum_err, std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0));
        const double c = g.uniform(-50.0, 50.0);
        for (double &v : q)
            v += c;
        const auto ps = softmax_probabilities(q, tau);
        for (std::size_t a = 0; a < k; ++a)
            shift_err = std::max(shift_err, std::abs(p[a] - ps[a]));
    }
    if (sum_err > 1e-12 || shift_err > 1e-12) {
        ok = false;
        why += " softmax";
    }

    bool ucb_ok = true;
    for (std::size_t k : {1u, 4u, 10u, 25u}) {
        ArmStats u(k);
        Rng rng(k);
        std::vector<int> seen(k, 0);
        for (std::size_t i = 0; i < k; ++i) {
            const auto a = select_arm(Ucb1{}, u, rng);
            seen[a] += 1;
            u.update(a, g.uniform(0.0, 1.0));
        }
        for (int v : seen)
            ucb_ok = ucb_ok && v == 1;
    }
    if (!ucb_ok) {
        ok = false;
        why += " ucb1-sweep";
    }

    double worst_eps = 0.0;
    for (double eps : {0.0, 0.1, 0.2, 0.5, 1.0}) {
        const std::size_t k = 10;
        const auto q = g.vec(k, 0.0, 1.0);
        const auto frozen = ArmStats::with_values(std::vector<std::uint64_t>(k, 3), q);
        Rng rng(static_cast<std::uint64_t>(eps * 1000) + 7);
        const std::size_t n = 100000;
        std::size_t hits = 0;
        const auto best = argmax(q);
        for (std::size_t i = 0; i < n; ++i)
            hits += select_arm(EpsGreedy{eps}, frozen, rng) == best;
        const double want = (1.0 - eps) + eps / static_cast<double>(k);
        worst_eps = std::max(worst_eps, std::abs(static_cast<double>(hits) / n - want));
    }
    if (worst_eps > 0.01) {
        ok = false;
        why += " eps-law";
    }
    const double t = seconds_since(t0);
    report(4, ok && t < 10.0,
           fmt("q err %.2g, softmax sum err %.2g, shift err %.2g, ucb sweep %s, eps-law dev %.4f, %.2f s%s", qerr,
               sum_err, shift_err, ucb_ok ? "ok" : "bad", worst_eps, t, why.c_str()));
}

struct StrategyRun
{
    std::string name;
    ExperimentSummary summary;
    double seconds = 0.0;
};

// ---- 5, 6, 7 ----
void end_to_end(const RunConfig &cfg)
{
    const auto t0 = Clock::now();
    const Scenario scn = scenario_from_config(cfg);
    const OracleResult oracle_r = brute_force_oracle(scn, 10000, cfg.seed, cfg.threads);
    const double t_oracle = seconds_since(t0);

    // Independent closed form per arm, from the fields and the integrated Gaussian CDF.
    std::vector<double> closed(scn.arms(), 0.0);
    for (std::size_t a = 0; a < scn.arms(); ++a) {
        for (std::size_t i = 0; i < scn.grid.size(); ++i)
            closed[a] += oracle::phi((cfg.budget.max_path_loss - scn.fields[a].mean_loss[i]) / scn.fields[a].sigma[i], 400);
        closed[a] /= static_cast<double>(scn.grid.size());
    }

    std::vector<StrategyRun> runs;
    PolicyConfig pc = cfg.policy;
    for (const char *name : {"eps-greedy", "decayed-eps", "softmax", "ucb1"}) {
        pc.name = name;
        ExperimentOptions o;
        o.iterations = cfg.iterations;
        o.episodes = cfg.episodes;
        o.base_seed = cfg.seed;
        o.window = cfg.window;
        o.threads = cfg.threads;
        const auto ts = Clock::now();
        runs.push_back({name, run_experiment(scn, pc.make(), o), 0.0});
        runs.back().seconds = seconds_since(ts);
    }
    const double total = seconds_since(t0);

    std::printf("reference scenario: %zu candidates, %zu grid points, %zu x %zu iterations/episodes\n", scn.arms(),
                scn.grid.size(), static_cast<std::size_t>(cfg.iterations), static_cast<std::size_t>(cfg.episodes));
    std::printf("oracle (10000 samples, %.1f s): best arm %zu\n", t_oracle, oracle_r.best_arm);
    std::printf("  arm  monte_carlo  closed_form");
    for (const auto &r : runs)
        std::printf("  q[%s]", r.name.c_str());
    std::printf("\n");
    for (std::size_t a = 0; a < scn.arms(); ++a) {
        std::printf("  %3zu  %.5f      %.5f    ", a, oracle_r.monte_carlo[a], closed[a]);
        for (const auto &r : runs)
            std::printf("  %.5f (%6.1f)", r.summary.final_q[a], r.summary.mean_pulls[a]);
        std::printf("\n");
    }

    const bool shape = scn.arms() == 10 && scn.grid.size() <= 10000 && cfg.iterations == 1000 && cfg.episodes == 50 &&
                       cfg.budget.fc_ghz == 28.0 && cfg.budget.max_path_loss == 110.0 && scn.dem.resolution() == 1.0 &&
                       scn.dem.width() == 100.0 && scn.dem.depth() == 100.0;

    // (a) argmax agreement
    bool a_ok = true;
    std::string a_txt;
    for (const auto &r : runs) {
        a_ok = a_ok && r.summary.best_arm == oracle_r.best_arm;
        a_txt += fmt(" %s=%zu", r.name.c_str(), r.summary.best_arm);
    }
    // (b) per-episode convergence for arms with >= 500 pulls
    double worst_q = 0.0;
    std::size_t checked = 0;
    for (const auto &r : runs)
        for (const auto &st : r.summary.episode_stats)
            for (std::size_t a = 0; a < scn.arms(); ++a)
                if (st.pulls()[a] >= 500) {
                    worst_q = std::max(worst_q, std::abs(st.q()[a] - closed[a]));
                    ++checked;
                }
    const bool b_ok = checked > 0 && worst_q <= 0.02;
    // (c) eps-greedy post-convergence best-arm frequency, iterations 501..1000
    const double eps = cfg.policy.epsilon;
    const double target = (1.0 - eps) + eps / static_cast<double>(scn.arms());
    const double freq = runs[0].summary.selection_rate(oracle_r.best_arm, 500, 1000);
    const bool c_ok = eps == 0.2 && std::abs(freq - target) <= 0.05;

    report(5, shape && a_ok && b_ok && c_ok && total < 300.0,
           fmt("(a) oracle argmax %zu, learned%s: %s; (b) max |q - closed form| %.4f over %zu episode-arms with "
               ">= 500 pulls: %s; (c) eps-greedy best-arm frequency %.4f vs %.2f +- 0.05: %s; %.1f s",
               oracle_r.best_arm, a_txt.c_str(), a_ok ? "ok" : "mismatch", worst_q, checked, b_ok ? "ok" : "bad", freq,
               target, c_ok ? "ok" : "bad", total));

    bool trend_ok = true;
    std::string trend;
    for (const auto &r : runs) {
        const double head = r.summary.mean_reward(0, 100);
        const double tail = r.summary.mean_reward(900, 1000);
        trend_ok = trend_ok && tail - head >= 0.02;
        trend += fmt(" %s %.4f -> %.4f (%+.4f);", r.name.c_str(), head, tail, tail - head);
    }
    report(6, trend_ok, "first 100 -> last 100 mean reward:" + trend);

    const auto maps = coverage_maps(runs[0].summary, runs[0].summary.best_arm, cfg.budget);
    std::size_t fuzzy = 0, fuzzy_gain = 0;
    for (std::size_t i = 0; i < maps.fuzzy.size(); ++i) {
        fuzzy += maps.fuzzy[i];
        fuzzy_gain += maps.fuzzy[i] && maps.mean_gain_covered[i];
    }
    report(7, fuzzy > 0 && fuzzy_gain > 0,
           fmt("best arm %zu: %zu grids with 0 < p < 1, %zu of them covered in the mean-gain map", runs[0].summary.best_arm,
               fuzzy, fuzzy_gain));
}

// ---- 8 ----
std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void determinism(const fs::path &config_path, const fs::path &scratch)
{
    const auto t0 = Clock::now();
    bool ok = true;
    std::size_t files = 0;
    // Full-length episodes, fewer of them to bound the runtime of three pipeline runs per policy.
    for (const char *name : {"eps-greedy", "decayed-eps", "softmax", "ucb1"}) {
        const std::string policy = std::string(R"({"policy": {"name": ")") + name + R"("}, "episodes": 6, )" +
                                   R"("oracle_samples": 500, )";
        const fs::path a = scratch / (std::string(name) + "-seq-1");
        const fs::path b = scratch / (std::string(name) + "-seq-2");
        const fs::path c = scratch / (std::string(name) + "-par");
        for (const auto &d : {a, b, c})
            fs::remove_all(d);
        cmd_pipeline(load_config(config_path, policy + R"("threads": 1})"), a);
        cmd_pipeline(load_config(config_path, policy + R"("threads": 1})"), b);
        cmd_pipeline(load_config(config_path, policy + R"("threads": 4})"), c);
        for (const char *f : {kRewardsCsv, kSelectionsCsv, kQFinalCsv, kCoverageMapCsv, kOracleCsv}) {
            const auto ref = slurp(a / f);
            ok = ok && !ref.empty() && ref == slurp(b / f) && ref == slurp(c / f);
            ++files;
        }
    }
    report(8, ok, fmt("%zu artifacts compared across two sequential runs and one 4-thread run, %.1f s", files,
                      seconds_since(t0)));
}

} // namespace

int main(int argc, char **argv)
{
    if (argc < 3) {
        std::fprintf(stderr, "usage: %s <reference_scenario.json> <scratch-dir>\n", argv[0]);
        return 2;
    }
    const fs::path config_path = argv[1];
    const fs::path scratch = argv[2];
    try {
        fs::create_directories(scratch);
        const RunConfig cfg = load_config(config_path);
        path_loss_exactness();
        shadow_fading();
        viewshed_agreement();
        bandit_correctness();
        end_to_end(cfg);
        determinism(config_path, scratch);
    } catch (const Error &e) {
        std::printf("acceptance aborted: %s (%s)\n", e.what(), error_code_name(e.code()));
        return 1;
    }
    std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
