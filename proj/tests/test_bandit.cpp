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

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace mmsite;

namespace
{

std::vector<double> frequencies(const Policy &p, const ArmStats &s, std::size_t n, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<double> f(s.arms(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
        f[select_arm(p, s, rng)] += 1.0;
    for (double &v : f)
        v /= static_cast<double>(n);
    return f;
}

} // namespace

TEST_CASE("argmax breaks ties toward the lowest index")
{
    const std::vector<double> v{0.1, 0.7, 0.7, 0.2};
    CHECK(argmax(v) == 1);
    const std::vector<double> one{0.3};
    CHECK(argmax(one) == 0);
}

TEST_CASE("pure greedy picks the best arm")
{
    const auto s = ArmStats::with_values({1, 1, 1}, {0.2, 0.5, 0.3});
    Rng rng(1);
    for (int i = 0; i < 100; ++i)
        CHECK(select_arm(EpsGreedy{0.0}, s, rng) == 1);
}

TEST_CASE("epsilon one is uniform")
{
    const auto s = ArmStats::with_values({1, 1, 1}, {0.2, 0.5, 0.3});
    for (double f : frequencies(EpsGreedy{1.0}, s, 100000, 2))
        CHECK(std::abs(f - 1.0 / 3.0) <= 0.01);
}

TEST_CASE("epsilon-greedy selection law")
{
    oracle::Gen g(3);
    for (double eps : {0.05, 0.2, 0.5}) {
        const std::size_t k = 2 + g.index(9);
        auto q = g.vec(k, 0.0, 1.0);
        const auto s = ArmStats::with_values(std::vector<std::uint64_t>(k, 5), q);
        const std::size_t n = 100000;
        const double p = (1.0 - eps) + eps / static_cast<double>(k);
        const double f = frequencies(EpsGreedy{eps}, s, n, 4 + k)[argmax(q)];
        CHECK(std::abs(f - p) <= 3.0 * std::sqrt(p * (1 - p) / n));
    }
}

TEST_CASE("decayed epsilon follows the hyperbolic schedule")
{
    const DecayedEpsGreedy d{1.0, 100.0};
    CHECK(decayed_epsilon(d, 0) == 1.0);
    CHECK(decayed_epsilon(d, 100) == doctest::Approx(0.5));
    CHECK(decayed_epsilon(d, 900) == doctest::Approx(0.1));
    const auto s = ArmStats::with_values({50, 50, 50, 50}, {0.1, 0.9, 0.4, 0.3});
    // t = 200 gives epsilon 1/3.
    const double p = 2.0 / 3.0 + (1.0 / 3.0) / 4.0;
    CHECK(std::abs(frequencies(d, s, 100000, 5)[1] - p) <= 0.01);
}

TEST_CASE("UCB1 pulls unpulled arms first, in order")
{
    ArmStats s(4);
    Rng rng(1);
    for (std::size_t k = 0; k < 4; ++k) {
        const auto a = select_arm(Ucb1{}, s, rng);
        CHECK(a == k);
        s.update(a, 0.9);
    }
}

TEST_CASE("UCB1 keeps revisiting every arm under frozen rewards")
{
    const std::vector<double> q{0.4, 0.8, 0.6, 0.75};
    ArmStats s(q.size());
    Rng rng(1);
    std::vector<std::size_t> last(q.size(), 0);
    const std::size_t horizon = 20000;
    const double qmax = 0.8;
    for (std::size_t t = 1; t <= horizon; ++t) {
        const auto a = select_arm(Ucb1{}, s, rng);
        s.update(a, q[a]);
        // Window the arm may sit idle: grows geometrically with the squared gap.
        const double gap = qmax - q[a];
        if (last[a] > 0 && last[a] > 100) {
            const double allowed = std::ceil(static_cast<double>(last[a]) * std::exp(gap * gap)) + q.size();
            CHECK(static_cast<double>(t) <= allowed);
        }
        last[a] = t;
    }
    for (auto n : s.pulls())
        CHECK(n > 1);
    CHECK(argmax(s.q()) == 1);
}

TEST_CASE("softmax with a huge temperature is uniform")
{
    oracle::Gen g(6);
    const auto s = ArmStats::with_values({1, 1, 1, 1, 1}, g.vec(5, 0.0, 1.0));
    for (double f : frequencies(Softmax{1e6}, s, 100000, 7))
        CHECK(std::abs(f - 0.2) <= 0.01);
}

TEST_CASE("softmax sampling follows the Boltzmann weights")
{
    const std::vector<double> q{0.5, 0.55, 0.6};
    const auto s = ArmStats::with_values({1, 1, 1}, q);
    const auto p = softmax_probabilities(q, 0.05);
    const auto f = frequencies(Softmax{0.05}, s, 100000, 8);
    for (std::size_t i = 0; i < q.size(); ++i)
        CHECK(std::abs(f[i] - p[i]) <= 0.01);
    // Independent evaluation of the weights.
    double z = 0.0;
    for (double v : q)
        z += std::exp(v / 0.05);
    for (std::size_t i = 0; i < q.size(); ++i)
        CHECK(p[i] == doctest::Approx(std::exp(q[i] / 0.05) / z).epsilon(1e-12));
}

TEST_CASE("softmax probabilities: normalization, shift invariance, cold limit")
{
    oracle::Gen g(9);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t k = 1 + g.index(12);
        const auto q = g.vec(k, -5.0, 5.0);
        const double tau = std::exp(g.uniform(std::log(1e-4), std::log(1e3)));
        const auto p = softmax_probabilities(q, tau);
        const double sum = std::accumulate(p.begin(), p.end(), 0.0);
        CHECK(std::abs(sum - 1.0) <= 1e-12);
        auto shifted = q;
        const double c = g.uniform(-100.0, 100.0);
        for (double &v : shifted)
            v += c;
        const auto ps = softmax_probabilities(shifted, tau);
        for (std::size_t i = 0; i < k; ++i)
            CHECK(std::abs(p[i] - ps[i]) <= 1e-12);
    }
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 2 + g.index(8);
        auto q = g.vec(k, 0.0, 0.9);
        const std::size_t top = g.index(k);
        q[top] = *std::max_element(q.begin(), q.end()) + g.uniform(0.01, 0.1);
        const auto p = softmax_probabilities(q, g.uniform(1e-6, 1e-4));
        CHECK(p[top] > 1.0 - 1e-9);
    }
    CHECK_THROWS_AS(softmax_probabilities(std::vector<double>{0.1}, 0.0), Error);
}

TEST_CASE("incremental Q equals the batch mean")
{
    ArmStats s(1);
    s.update(0, 0.7);
    CHECK(s.q()[0] == doctest::Approx(0.7));
    CHECK(s.pulls()[0] == 1);
    ArmStats two(1);
    two.update(0, 0.5);
    two.update(0, 0.9);
    CHECK(two.q()[0] == doctest::Approx(0.7));

    oracle::Gen g(10);
    ArmStats many(3);
    std::vector<std::vector<double>> seen(3);
    for (int i = 0; i < 1000; ++i) {
        const auto a = g.index(3);
        const double r = g.uniform(0.0, 1.0);
        many.update(a, r);
        seen[a].push_back(r);
    }
    CHECK(many.total() == 1000);
    for (std::size_t a = 0; a < 3; ++a) {
        const double batch = std::accumulate(seen[a].begin(), seen[a].end(), 0.0) / seen[a].size();
        CHECK(std::abs(many.q()[a] - batch) <= 1e-12);
        CHECK(many.q()[a] >= 0.0);
        CHECK(many.q()[a] <= 1.0);
        CHECK(many.pulls()[a] == seen[a].size());
    }
}

TEST_CASE("invalid rewards, arms and parameters")
{
    ArmStats s(2);
    CHECK_THROWS_AS(s.update(0, 1.5), Error);
    try {
        s.update(0, -0.1);
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::InvalidReward);
    }
    ArmStats none;
    Rng rng(1);
    try {
        select_arm(EpsGreedy{}, none, rng);
        FAIL("expected NoArms");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::NoArms);
    }
    try {
        select_arm(Softmax{-1.0}, ArmStats(2), rng);
        FAIL("expected InvalidTemperature");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::InvalidTemperature);
    }
}

TEST_CASE("selection is deterministic per seed")
{
    oracle::Gen g(11);
    const auto s = ArmStats::with_values({3, 4, 5, 6}, g.vec(4, 0.0, 1.0));
    for (const Policy &p : {Policy{EpsGreedy{}}, Policy{DecayedEpsGreedy{}}, Policy{Softmax{}}, Policy{Ucb1{}}}) {
        Rng a(42), b(42);
        for (int i = 0; i < 100; ++i)
            CHECK(select_arm(p, s, a) == select_arm(p, s, b));
    }
}
