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

#ifndef MMSITE_HARNESS_HPP
#define MMSITE_HARNESS_HPP

#include "mmsite/bandit.hpp"
#include "mmsite/channel.hpp"
#include "mmsite/terrain.hpp"
#include "mmsite/viewshed.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mmsite
{

struct ScenarioParams
{
    double boundary_margin = 0.0;
    double mast_height = kDefaultMastHeight;
    LinkBudget budget;
};

// An environment with its candidate sites and their precomputed path-loss fields.
struct Scenario
{
    ElevationModel dem;
    ServiceGrid grid;
    std::vector<CandidateSite> candidates;
    std::vector<PathLossField> fields;
    LinkBudget budget;

    std::size_t arms() const noexcept { return candidates.size(); }

    // Throws GridMismatch when fields and candidates disagree with the grid.
    void validate() const;
};

// Service grid at budget.h_ut, rooftop edge points, candidate pruning and field build.
Scenario build_scenario(ElevationModel dem, const ScenarioParams &params);

// Same, with previously selected sites; ids and visibility are recomputed on this grid.
Scenario build_scenario(ElevationModel dem, std::vector<CandidateSite> sites, const LinkBudget &budget);

// Per-grid accumulators over the iterations in which one arm was selected.
struct ArmTally
{
    std::uint64_t selections = 0;
    std::vector<std::uint32_t> cover_count; // iterations with loss < max_path_loss
    std::vector<double> gain_sum;           // sum of 10^(-loss/10)

    friend bool operator==(const ArmTally &, const ArmTally &) = default;
};

struct EpisodeLog
{
    std::vector<std::uint32_t> selections; // arm per iteration
    std::vector<double> rewards;           // coverage fraction per iteration
    ArmStats final_stats;
    std::size_t best_arm = 0;     // argmax of the final Q-values
    std::vector<ArmTally> tallies; // one per arm

    friend bool operator==(const EpisodeLog &, const EpisodeLog &) = default;
};

// select -> sample coverage of the selected field -> update, after one forced
// pull of every arm. Selection and shadow fading use separate substreams of seed.
EpisodeLog run_episode(const Scenario &scenario, const Policy &policy, std::size_t iterations, std::uint64_t seed);

struct ExperimentSummary
{
    std::size_t arms = 0;
    std::size_t iterations = 0;
    std::size_t episodes = 0;
    std::size_t window = 50;

    std::vector<std::vector<std::uint32_t>> selection_counts; // [iteration][arm], summed over episodes
    std::vector<std::vector<double>> selection_frequency;     // [window][arm]
    std::vector<double> mean_reward_curve;                    // [iteration]
    std::vector<double> final_q;                              // [arm], episode average
    std::vector<double> mean_pulls;                           // [arm], episode average
    std::size_t best_arm = 0;
    std::vector<ArmStats> episode_stats;   // final stats of each episode
    std::vector<std::size_t> episode_best; // best arm of each episode
    std::vector<ArmTally> tallies;         // pooled over episodes

    // Fraction of selections going to `arm` over iterations [first, last), averaged over episodes.
    double selection_rate(std::size_t arm, std::size_t first, std::size_t last) const;
    // Episode-averaged reward over iterations [first, last).
    double mean_reward(std::size_t first, std::size_t last) const;

    friend bool operator==(const ExperimentSummary &, const ExperimentSummary &) = default;
};

struct ExperimentOptions
{
    std::size_t iterations = 1000;
    std::size_t episodes = 50;
    std::uint64_t base_seed = 1;
    std::size_t window = 50;
    unsigned threads = 0; // 0: hardware concurrency
};

// Episode e runs with seed base_seed + e; the reduction runs in episode order,
// so the result does not depend on the thread count.
ExperimentSummary run_experiment(const Scenario &scenario, const Policy &policy, const ExperimentOptions &options);

struct OracleResult
{
    std::vector<double> monte_carlo; // mean sampled coverage per arm
    std::vector<double> std_error;   // standard error of the Monte-Carlo mean
    std::vector<double> closed_form; // mean of Phi((L_max - mean) / sigma)
    std::size_t best_arm = 0;        // argmax of monte_carlo
    std::size_t samples = 0;
};

OracleResult brute_force_oracle(const Scenario &scenario, std::size_t samples, std::uint64_t seed,
                                unsigned threads = 0);

struct CoverageMaps
{
    std::vector<double> mean_gain_db;             // 10 log10 of the mean linear path gain
    std::vector<std::uint8_t> mean_gain_covered;  // mean_gain_db > -max_path_loss
    std::vector<double> coverage_prob;            // covered fraction of selected iterations
    std::vector<std::uint8_t> fuzzy;              // 0 < coverage_prob < 1
};

CoverageMaps coverage_maps(const ArmTally &tally, const LinkBudget &budget);
CoverageMaps coverage_maps(const EpisodeLog &log, std::size_t arm, const LinkBudget &budget);
CoverageMaps coverage_maps(const ExperimentSummary &summary, std::size_t arm, const LinkBudget &budget);

} // namespace mmsite

#endif
