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

#include "mmsite/error.hpp"
#include "mmsite/harness.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace mmsite;

namespace
{

Scenario small_scenario(LinkBudget budget = {})
{
    auto dem = oracle::scene(40, 40, {{5, 5, 15, 20, 12}, {24, 22, 36, 34, 20}});
    ScenarioParams p;
    p.budget = budget;
    return build_scenario(std::move(dem), p);
}

Scenario single_arm()
{
    auto s = small_scenario();
    s.candidates.resize(1);
    s.fields.resize(1);
    return s;
}

} // namespace

TEST_CASE("single arm always selected; final q is the reward mean")
{
    const auto s = single_arm();
    const auto log = run_episode(s, EpsGreedy{}, 10, 3);
    REQUIRE(log.selections.size() == 10);
    REQUIRE(log.rewards.size() == 10);
    for (auto a : log.selections)
        CHECK(a == 0);
    const double mean = std::accumulate(log.rewards.begin(), log.rewards.end(), 0.0) / 10.0;
    CHECK(std::abs(log.final_stats.q()[0] - mean) <= 1e-12);
    CHECK(log.final_stats.total() == 10);
}

TEST_CASE("without fading, greedy locks onto the best deterministic arm after the sweep")
{
    LinkBudget b;
    b.sigma_los = 0.0;
    b.sigma_nlos = 0.0;
    // A tighter threshold spreads the deterministic coverages apart.
    b.max_path_loss = 100.0;
    const auto s = small_scenario(b);
    REQUIRE(s.arms() >= 2);
    std::vector<double> det;
    for (const auto &f : s.fields) {
        std::size_t n = 0;
        for (double l : f.mean_loss)
            n += l < b.max_path_loss;
        det.push_back(static_cast<double>(n) / f.size());
    }
    const auto best = argmax(det);
    const auto log = run_episode(s, EpsGreedy{0.0}, 200, 5);
    for (std::size_t it = 0; it < log.selections.size(); ++it) {
        if (it < s.arms()) {
            CHECK(log.selections[it] == it);
            CHECK(log.rewards[it] == doctest::Approx(det[it]).epsilon(1e-12));
        } else {
            CHECK(log.selections[it] == best);
        }
    }
}

TEST_CASE("episodes are reproducible per seed")
{
    const auto s = small_scenario();
    for (const Policy &p : {Policy{EpsGreedy{}}, Policy{DecayedEpsGreedy{}}, Policy{Softmax{}}, Policy{Ucb1{}}}) {
        const auto a = run_episode(s, p, 60, 17);
        const auto b = run_episode(s, p, 60, 17);
        CHECK(a == b);
        CHECK(a.final_stats.total() == 60);
    }
    CHECK_FALSE(run_episode(s, EpsGreedy{}, 60, 17).rewards == run_episode(s, EpsGreedy{}, 60, 18).rewards);
}

TEST_CASE("channel draws do not depend on the policy")
{
    // Same seed, two policies: the first sweep uses identical channel realizations.
    const auto s = small_scenario();
    const auto a = run_episode(s, EpsGreedy{}, 30, 4);
    const auto b = run_episode(s, Softmax{}, 30, 4);
    for (std::size_t it = 0; it < s.arms(); ++it)
        CHECK(a.rewards[it] == b.rewards[it]);
}

TEST_CASE("one episode summarizes itself")
{
    const auto s = small_scenario();
    ExperimentOptions o;
    o.iterations = 80;
    o.episodes = 1;
    o.base_seed = 9;
    o.window = 20;
    const auto sum = run_experiment(s, Ucb1{}, o);
    const auto log = run_episode(s, Ucb1{}, 80, 9);
    CHECK(sum.mean_reward_curve == log.rewards);
    CHECK(sum.final_q == log.final_stats.q());
    CHECK(sum.best_arm == log.best_arm);
    for (std::size_t it = 0; it < 80; ++it)
        CHECK(sum.selection_counts[it][log.selections[it]] == 1);
    CHECK(sum.tallies == log.tallies);
}

TEST_CASE("window frequencies partition the selections")
{
    const auto s = small_scenario();
    ExperimentOptions o;
    o.iterations = 130;
    o.episodes = 4;
    o.window = 50;
    const auto sum = run_experiment(s, Softmax{}, o);
    REQUIRE(sum.selection_frequency.size() == 3);
    for (const auto &w : sum.selection_frequency)
        CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    double pulls = std::accumulate(sum.mean_pulls.begin(), sum.mean_pulls.end(), 0.0);
    CHECK(pulls == doctest::Approx(130.0));
}

TEST_CASE("experiments do not depend on the thread count")
{
    const auto s = small_scenario();
    ExperimentOptions o;
    o.iterations = 60;
    o.episodes = 7;
    o.threads = 1;
    const auto one = run_experiment(s, DecayedEpsGreedy{}, o);
    o.threads = 3;
    const auto three = run_experiment(s, DecayedEpsGreedy{}, o);
    CHECK(one == three);
}

TEST_CASE("zero iterations or episodes are rejected")
{
    const auto s = small_scenario();
    ExperimentOptions o;
    o.episodes = 0;
    try {
        run_experiment(s, EpsGreedy{}, o);
        FAIL("expected ConfigInvalid");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::ConfigInvalid);
    }
    CHECK_THROWS_AS(run_episode(s, EpsGreedy{}, 0, 1), Error);
}

TEST_CASE("oracle without fading is the exact coverage fraction")
{
    LinkBudget b;
    b.sigma_los = 0.0;
    b.sigma_nlos = 0.0;
    b.max_path_loss = 100.0;
    const auto s = small_scenario(b);
    const auto r = brute_force_oracle(s, 5, 1);
    for (std::size_t a = 0; a < s.arms(); ++a) {
        std::size_t n = 0;
        for (double l : s.fields[a].mean_loss)
            n += l < 100.0;
        const double want = static_cast<double>(n) / s.grid.size();
        CHECK(r.monte_carlo[a] == want);
        CHECK(r.closed_form[a] == want);
        CHECK(r.std_error[a] < 1e-6);
    }
}

TEST_CASE("Monte-Carlo oracle agrees with the closed form")
{
    LinkBudget b;
    b.max_path_loss = 100.0;
    const auto s = small_scenario(b);
    const auto r = brute_force_oracle(s, 2000, 3);
    for (std::size_t a = 0; a < s.arms(); ++a) {
        // Independent closed form straight from the field.
        double cf = 0.0;
        for (std::size_t i = 0; i < s.grid.size(); ++i)
            cf += oracle::phi((100.0 - s.fields[a].mean_loss[i]) / s.fields[a].sigma[i], 2000);
        cf /= s.grid.size();
        CHECK(r.closed_form[a] == doctest::Approx(cf).epsilon(1e-8));
        CHECK(std::abs(r.monte_carlo[a] - cf) <= 3.0 * r.std_error[a] + 1e-12);
    }
    CHECK(r.best_arm == argmax(r.closed_form));
    const auto again = brute_force_oracle(s, 2000, 3, 1);
    CHECK(again.monte_carlo == r.monte_carlo);
}

TEST_CASE("coverage maps without fading are crisp")
{
    LinkBudget b;
    b.sigma_los = 0.0;
    b.sigma_nlos = 0.0;
    const auto s = small_scenario(b);
    const auto log = run_episode(s, EpsGreedy{}, 40, 2);
    const auto m = coverage_maps(log, 0, b);
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
        CHECK((m.coverage_prob[i] == 0.0 || m.coverage_prob[i] == 1.0));
        CHECK(m.fuzzy[i] == 0);
        CHECK(m.mean_gain_db[i] == doctest::Approx(-s.fields[0].mean_loss[i]).epsilon(1e-9));
        CHECK(m.mean_gain_covered[i] == (m.coverage_prob[i] == 1.0 ? 1 : 0));
    }
}

TEST_CASE("coverage maps with fading follow the closed form")
{
    LinkBudget b;
    b.max_path_loss = 100.0;
    const auto s = small_scenario(b);
    ExperimentOptions o;
    o.iterations = 400;
    o.episodes = 5;
    const auto sum = run_experiment(s, EpsGreedy{}, o);
    const auto arm = sum.best_arm;
    const auto m = coverage_maps(sum, arm, b);
    const double n = static_cast<double>(sum.tallies[arm].selections);
    REQUIRE(n > 100);
    std::size_t fuzzy = 0, outside = 0;
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
        const double p = oracle::phi((100.0 - s.fields[arm].mean_loss[i]) / s.fields[arm].sigma[i], 2000);
        const double sd = std::sqrt(p * (1 - p) / n);
        outside += std::abs(m.coverage_prob[i] - p) > 4.0 * sd + 1e-12;
        fuzzy += m.fuzzy[i];
    }
    CHECK(outside <= s.grid.size() / 1000 + 1);
    CHECK(fuzzy > 0);
}

TEST_CASE("coverage maps need a selected arm")
{
    ArmTally empty;
    try {
        coverage_maps(empty, LinkBudget{});
        FAIL("expected ArmNeverSelected");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::ArmNeverSelected);
    }
}

TEST_CASE("rebuilding from saved sites reproduces the scenario")
{
    const auto s = small_scenario();
    auto sites = s.candidates;
    for (auto &c : sites)
        c.visibility.clear();
    const auto again = build_scenario(s.dem, sites, s.budget);
    CHECK(again.candidates == s.candidates);
    CHECK(again.fields == s.fields);
}
