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

#include "mmsite/harness.hpp"

#include "mmsite/error.hpp"
#include "mmsite/rng.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mmsite
{

namespace
{

// 10^(-L/10) = exp(-L ln10 / 10)
constexpr double kNegLn10Over10 = -0.23025850929940458;

} // namespace

void Scenario::validate() const
{
    if (candidates.empty())
        fail(ErrorCode::NoCandidates, "scenario has no candidate sites");
    if (fields.size() != candidates.size())
        fail(ErrorCode::GridMismatch, "scenario has " + std::to_string(fields.size()) + " fields for " +
                                          std::to_string(candidates.size()) + " candidates");
    for (std::size_t k = 0; k < fields.size(); ++k)
        if (fields[k].size() != grid.size() || candidates[k].visibility.size() != grid.size())
            fail(ErrorCode::GridMismatch, "field " + std::to_string(k) + " was not built over the scenario grid");
}

namespace
{

Scenario assemble(ElevationModel dem, ServiceGrid grid, std::vector<CandidateSite> candidates,
                  const LinkBudget &budget)
{
    Scenario s;
    s.fields.reserve(candidates.size());
    for (const auto &c : candidates)
        s.fields.push_back(build_field(c, grid, budget));
    s.dem = std::move(dem);
    s.grid = std::move(grid);
    s.candidates = std::move(candidates);
    s.budget = budget;
    return s;
}

} // namespace

Scenario build_scenario(ElevationModel dem, const ScenarioParams &params)
{
    params.budget.validate();
    ServiceGrid grid = derive_service_grid(dem, params.budget.h_ut);
    const auto edges = enumerate_rooftop_edge_points(dem, params.mast_height);
    auto candidates = select_candidates(dem, edges, grid, params.boundary_margin);
    return assemble(std::move(dem), std::move(grid), std::move(candidates), params.budget);
}

Scenario build_scenario(ElevationModel dem, std::vector<CandidateSite> sites, const LinkBudget &budget)
{
    budget.validate();
    if (sites.empty())
        fail(ErrorCode::NoCandidates, "no candidate sites given");
    ServiceGrid grid = derive_service_grid(dem, budget.h_ut);
    detail::parallel_for(sites.size(), 0, [&](std::size_t k) {
        sites[k].id = k;
        sites[k].visibility = viewshed_mask(dem, sites[k].position, grid);
        sites[k].visible_count =
            static_cast<std::size_t>(std::count(sites[k].visibility.begin(), sites[k].visibility.end(), 1));
    });
    return assemble(std::move(dem), std::move(grid), std::move(sites), budget);
}

EpisodeLog run_episode(const Scenario &scenario, const Policy &policy, std::size_t iterations, std::uint64_t seed)
{
    scenario.validate();
    validate_policy(policy);
    if (iterations == 0)
        fail(ErrorCode::ConfigInvalid, "iterations must be >= 1");

    const std::size_t arms = scenario.arms();
    const std::size_t n = scenario.grid.size();
    const double threshold = scenario.budget.max_path_loss;

    Rng selection_rng = make_stream(seed, Stream::Selection);
    Rng channel_rng = make_stream(seed, Stream::Channel);

    EpisodeLog log;
    log.selections.reserve(iterations);
    log.rewards.reserve(iterations);
    log.tallies.resize(arms);
    for (auto &t : log.tallies)
    {
        t.cover_count.assign(n, 0);
        t.gain_sum.assign(n, 0.0);
    }

    ArmStats stats(arms);
    std::vector<double> loss(n);
    for (std::size_t it = 0; it < iterations; ++it)
    {
        const std::size_t arm = it < arms ? it : select_arm(policy, stats, selection_rng);
        sample_path_loss(scenario.fields[arm], channel_rng, loss);

        ArmTally &tally = log.tallies[arm];
        std::size_t covered = 0;
        for (std::size_t i = 0; i < n; ++i)
        {
            const bool c = loss[i] < threshold;
            covered += c;
            tally.cover_count[i] += c;
            tally.gain_sum[i] += std::exp(loss[i] * kNegLn10Over10);
        }
        tally.selections += 1;

        const double reward = static_cast<double>(covered) / static_cast<double>(n);
        stats.update(arm, reward);
        log.selections.push_back(static_cast<std::uint32_t>(arm));
        log.rewards.push_back(reward);
    }
    log.best_arm = argmax(stats.q());
    log.final_stats = std::move(stats);
    return log;
}

double ExperimentSummary::selection_rate(std::size_t arm, std::size_t first, std::size_t last) const
{
    last = std::min(last, iterations);
    if (arm >= arms || first >= last || episodes == 0)
        return 0.0;
    std::uint64_t count = 0;
    for (std::size_t it = first; it < last; ++it)
        count += selection_counts[it][arm];
    return static_cast<double>(count) / static_cast<double>((last - first) * episodes);
}

double ExperimentSummary::mean_reward(std::size_t first, std::size_t last) const
{
    last = std::min(last, iterations);
    if (first >= last)
        return 0.0;
    double sum = 0.0;
    for (std::size_t it = first; it < last; ++it)
        sum += mean_reward_curve[it];
    return sum / static_cast<double>(last - first);
}

ExperimentSummary run_experiment(const Scenario &scenario, const Policy &policy, const ExperimentOptions &options)
{
    scenario.validate();
    validate_policy(policy);
    if (options.episodes == 0)
        fail(ErrorCode::ConfigInvalid, "episodes must be >= 1");
    if (options.iterations == 0)
        fail(ErrorCode::ConfigInvalid, "iterations must be >= 1");
    if (options.window == 0)
        fail(ErrorCode::ConfigInvalid, "window must be >= 1");

    const std::size_t arms = scenario.arms();
    const std::size_t n = scenario.grid.size();
    const std::size_t iters = options.iterations;
    const std::size_t episodes = options.episodes;

    ExperimentSummary s;
    s.arms = arms;
    s.iterations = iters;
    s.episodes = episodes;
    s.window = options.window;
    s.selection_counts.assign(iters, std::vector<std::uint32_t>(arms, 0));
    s.mean_reward_curve.assign(iters, 0.0);
    s.final_q.assign(arms, 0.0);
    s.mean_pulls.assign(arms, 0.0);
    s.tallies.resize(arms);
    for (auto &t : s.tallies)
    {
        t.cover_count.assign(n, 0);
        t.gain_sum.assign(n, 0.0);
    }

    std::vector<EpisodeLog> logs(episodes);
    detail::parallel_for(episodes, options.threads, [&](std::size_t e) {
        logs[e] = run_episode(scenario, policy, iters, options.base_seed + e);
    });

    // Deterministic reduction in episode order.
    for (std::size_t e = 0; e < episodes; ++e)
    {
        const EpisodeLog &log = logs[e];
        for (std::size_t it = 0; it < iters; ++it)
        {
            s.selection_counts[it][log.selections[it]] += 1;
            s.mean_reward_curve[it] += log.rewards[it];
        }
        for (std::size_t a = 0; a < arms; ++a)
        {
            s.final_q[a] += log.final_stats.q()[a];
            s.mean_pulls[a] += static_cast<double>(log.final_stats.pulls()[a]);
            ArmTally &dst = s.tallies[a];
            const ArmTally &src = log.tallies[a];
            dst.selections += src.selections;
            for (std::size_t i = 0; i < n; ++i)
            {
                dst.cover_count[i] += src.cover_count[i];
                dst.gain_sum[i] += src.gain_sum[i];
            }
        }
        s.episode_stats.push_back(log.final_stats);
        s.episode_best.push_back(log.best_arm);
    }
    const double inv_e = 1.0 / static_cast<double>(episodes);
    for (double &r : s.mean_reward_curve)
        r *= inv_e;
    for (std::size_t a = 0; a < arms; ++a)
    {
        s.final_q[a] *= inv_e;
        s.mean_pulls[a] *= inv_e;
    }
    s.best_arm = argmax(s.final_q);

    for (std::size_t first = 0; first < iters; first += options.window)
    {
        const std::size_t last = std::min(iters, first + options.window);
        std::vector<double> freq(arms);
        for (std::size_t a = 0; a < arms; ++a)
            freq[a] = s.selection_rate(a, first, last);
        s.selection_frequency.push_back(std::move(freq));
    }
    return s;
}

OracleResult brute_force_oracle(const Scenario &scenario, std::size_t samples, std::uint64_t seed, unsigned threads)
{
    scenario.validate();
    if (samples == 0)
        fail(ErrorCode::ConfigInvalid, "oracle samples must be >= 1");

    const std::size_t arms = scenario.arms();
    OracleResult r;
    r.samples = samples;
    r.monte_carlo.assign(arms, 0.0);
    r.std_error.assign(arms, 0.0);
    r.closed_form.assign(arms, 0.0);

    detail::parallel_for(arms, threads, [&](std::size_t a) {
        const PathLossField &field = scenario.fields[a];
        Rng rng = make_stream(derive_seed(seed, a), Stream::Oracle);
        std::vector<double> loss(field.size());
        double sum = 0.0, sum_sq = 0.0;
        for (std::size_t k = 0; k < samples; ++k)
        {
            sample_path_loss(field, rng, loss);
            std::size_t covered = 0;
            for (double l : loss)
                covered += l < scenario.budget.max_path_loss;
            const double reward = static_cast<double>(covered) / static_cast<double>(field.size());
            sum += reward;
            sum_sq += reward * reward;
        }
        const double m = sum / static_cast<double>(samples);
        const double var = samples > 1 ? std::max(0.0, (sum_sq - sum * m) / static_cast<double>(samples - 1)) : 0.0;
        r.monte_carlo[a] = m;
        r.std_error[a] = std::sqrt(var / static_cast<double>(samples));
        r.closed_form[a] = expected_coverage(field, scenario.budget);
    });
    r.best_arm = argmax(r.monte_carlo);
    return r;
}

CoverageMaps coverage_maps(const ArmTally &tally, const LinkBudget &budget)
{
    if (tally.selections == 0)
        fail(ErrorCode::ArmNeverSelected, "the arm was never selected");
    const std::size_t n = tally.cover_count.size();
    const double sel = static_cast<double>(tally.selections);
    CoverageMaps m;
    m.mean_gain_db.resize(n);
    m.mean_gain_covered.resize(n);
    m.coverage_prob.resize(n);
    m.fuzzy.resize(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        m.mean_gain_db[i] = 10.0 * std::log10(tally.gain_sum[i] / sel);
        m.mean_gain_covered[i] = m.mean_gain_db[i] > -budget.max_path_loss ? 1 : 0;
        m.coverage_prob[i] = static_cast<double>(tally.cover_count[i]) / sel;
        m.fuzzy[i] = tally.cover_count[i] > 0 && tally.cover_count[i] < tally.selections ? 1 : 0;
    }
    return m;
}

CoverageMaps coverage_maps(const EpisodeLog &log, std::size_t arm, const LinkBudget &budget)
{
    if (arm >= log.tallies.size())
        fail(ErrorCode::InvalidArgument, "arm index out of range");
    return coverage_maps(log.tallies[arm], budget);
}

CoverageMaps coverage_maps(const ExperimentSummary &summary, std::size_t arm, const LinkBudget &budget)
{
    if (arm >= summary.tallies.size())
        fail(ErrorCode::InvalidArgument, "arm index out of range");
    return coverage_maps(summary.tallies[arm], budget);
}

} // namespace mmsite
