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

#include "mmsite/bandit.hpp"

#include "mmsite/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mmsite
{

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void ArmStats::update(std::size_t arm, double reward)
{
    if (arm >= arms())
        fail(ErrorCode::InvalidArgument, "arm index " + std::to_string(arm) + " out of range");
    if (!(reward >= 0.0 && reward <= 1.0))
        fail(ErrorCode::InvalidReward, "reward must lie in [0, 1], got " + std::to_string(reward));
    pulls_[arm] += 1;
    t_ += 1;
    q_[arm] += (reward - q_[arm]) / static_cast<double>(pulls_[arm]);
}

ArmStats ArmStats::with_values(std::vector<std::uint64_t> pulls, std::vector<double> q)
{
    if (pulls.size() != q.size())
        fail(ErrorCode::InvalidArgument, "pulls and q must have the same length");
    ArmStats s;
    s.t_ = 0;
    for (auto n : pulls)
        s.t_ += n;
    s.pulls_ = std::move(pulls);
    s.q_ = std::move(q);
    return s;
}

std::string policy_name(const Policy &policy)
{
    return std::visit(overloaded{
                          [](const EpsGreedy &) { return "eps-greedy"; },
                          [](const DecayedEpsGreedy &) { return "decayed-eps"; },
                          [](const Softmax &) { return "softmax"; },
                          [](const Ucb1 &) { return "ucb1"; },
                      },
                      policy);
}

void validate_policy(const Policy &policy)
{
    std::visit(overloaded{
                   [](const EpsGreedy &p) {
                       if (!(p.epsilon >= 0.0 && p.epsilon <= 1.0))
                           fail(ErrorCode::ConfigInvalid, "epsilon must lie in [0, 1]");
                   },
                   [](const DecayedEpsGreedy &p) {
                       if (!(p.epsilon0 >= 0.0 && p.epsilon0 <= 1.0))
                           fail(ErrorCode::ConfigInvalid, "eps0 must lie in [0, 1]");
                       if (!(p.t_half > 0.0) || !std::isfinite(p.t_half))
                           fail(ErrorCode::ConfigInvalid, "t_half must be > 0");
                   },
                   [](const Softmax &p) {
                       if (!(p.tau > 0.0) || !std::isfinite(p.tau))
                           fail(ErrorCode::InvalidTemperature, "softmax temperature must be > 0");
                   },
                   [](const Ucb1 &p) {
                       if (!(p.c >= 0.0) || !std::isfinite(p.c))
                           fail(ErrorCode::ConfigInvalid, "ucb c must be >= 0");
                   },
               },
               policy);
}

double decayed_epsilon(const DecayedEpsGreedy &policy, std::uint64_t t)
{
    return policy.epsilon0 / (1.0 + static_cast<double>(t) / policy.t_half);
}

std::size_t argmax(std::span<const double> values)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best])
            best = i;
    return best;
}

std::vector<double> softmax_probabilities(std::span<const double> q, double tau)
{
    if (q.empty())
        fail(ErrorCode::NoArms, "no arms");
    if (!(tau > 0.0) || !std::isfinite(tau))
        fail(ErrorCode::InvalidTemperature, "softmax temperature must be > 0");
    const double top = *std::max_element(q.begin(), q.end());
    std::vector<double> p(q.size());
    double total = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
    {
        p[i] = std::exp((q[i] - top) / tau);
        total += p[i];
    }
    for (double &v : p)
        v /= total;
    return p;
}

namespace
{

std::size_t epsilon_greedy(double epsilon, const ArmStats &stats, Rng &rng)
{
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    if (u < epsilon)
        return std::uniform_int_distribution<std::size_t>(0, stats.arms() - 1)(rng);
    return argmax(stats.q());
}

std::size_t sample_discrete(std::span<const double> p, Rng &rng)
{
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
    {
        if (p[i] <= 0.0)
            continue;
        acc += p[i];
        last_positive = i;
        if (u < acc)
            return i;
    }
    return last_positive; // u landed in the rounding slack above acc
}

std::size_t ucb1(const Ucb1 &policy, const ArmStats &stats)
{
    const auto &pulls = stats.pulls();
    for (std::size_t a = 0; a < stats.arms(); ++a)
        if (pulls[a] == 0)
            return a;
    const double log_t = std::log(static_cast<double>(stats.total()));
    std::vector<double> score(stats.arms());
    for (std::size_t a = 0; a < stats.arms(); ++a)
        score[a] = stats.q()[a] + policy.c * std::sqrt(2.0 * log_t / static_cast<double>(pulls[a]));
    return argmax(score);
}

} // namespace

std::size_t select_arm(const Policy &policy, const ArmStats &stats, Rng &rng)
{
    if (stats.arms() == 0)
        fail(ErrorCode::NoArms, "no arms to select from");
    validate_policy(policy);
    return std::visit(overloaded{
                          [&](const EpsGreedy &p) { return epsilon_greedy(p.epsilon, stats, rng); },
                          [&](const DecayedEpsGreedy &p) {
                              return epsilon_greedy(decayed_epsilon(p, stats.total()), stats, rng);
                          },
                          [&](const Softmax &p) {
                              const auto probs = softmax_probabilities(stats.q(), p.tau);
                              return sample_discrete(probs, rng);
                          },
                          [&](const Ucb1 &p) { return ucb1(p, stats); },
                      },
                      policy);
}

} // namespace mmsite
