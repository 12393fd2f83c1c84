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

#ifndef MMSITE_BANDIT_HPP
#define MMSITE_BANDIT_HPP

#include "mmsite/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mmsite
{

// Per-arm pull counts and running-mean rewards (Q-values).
class ArmStats
{
  public:
    ArmStats() = default;
    explicit ArmStats(std::size_t arms) : pulls_(arms, 0), q_(arms, 0.0) {}

    std::size_t arms() const noexcept { return q_.size(); }
    std::uint64_t total() const noexcept { return t_; }
    const std::vector<std::uint64_t> &pulls() const noexcept { return pulls_; }
    const std::vector<double> &q() const noexcept { return q_; }

    // Records a reward in [0, 1] for an arm: q <- q + (r - q) / n.
    void update(std::size_t arm, double reward);

    // Builds stats with given counts and Q-values, e.g. to freeze a state for analysis.
    static ArmStats with_values(std::vector<std::uint64_t> pulls, std::vector<double> q);

    friend bool operator==(const ArmStats &, const ArmStats &) = default;

  private:
    std::vector<std::uint64_t> pulls_;
    std::vector<double> q_;
    std::uint64_t t_ = 0;
};

struct EpsGreedy
{
    double epsilon = 0.2;
};

// epsilon_t = epsilon0 / (1 + t / t_half)
struct DecayedEpsGreedy
{
    double epsilon0 = 1.0;
    double t_half = 100.0;
};

// Boltzmann exploration with temperature tau.
struct Softmax
{
    double tau = 0.05;
};

// argmax q_a + c * sqrt(2 ln t / n_a), unpulled arms first.
struct Ucb1
{
    double c = 1.0;
};

using Policy = std::variant<EpsGreedy, DecayedEpsGreedy, Softmax, Ucb1>;

// CLI names: eps-greedy, decayed-eps, softmax, ucb1.
std::string policy_name(const Policy &policy);
void validate_policy(const Policy &policy);

// Exploration rate in effect after t selections.
double decayed_epsilon(const DecayedEpsGreedy &policy, std::uint64_t t);

// Index of the largest value, lowest index on ties.
std::size_t argmax(std::span<const double> values);

// Boltzmann probabilities exp(q_a / tau) / sum_b exp(q_b / tau), max-shifted.
std::vector<double> softmax_probabilities(std::span<const double> q, double tau);

std::size_t select_arm(const Policy &policy, const ArmStats &stats, Rng &rng);

} // namespace mmsite

#endif
