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

#ifndef MMSITE_CHANNEL_HPP
#define MMSITE_CHANNEL_HPP

#include "mmsite/rng.hpp"
#include "mmsite/terrain.hpp"
#include "mmsite/viewshed.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mmsite
{

struct LinkBudget
{
    double fc_ghz = 28.0;
    double sigma_los = 4.0;  // dB
    double sigma_nlos = 6.0; // dB
    double max_path_loss = 110.0; // dB
    double h_ut = 1.5;       // m

    void validate() const;

    friend bool operator==(const LinkBudget &, const LinkBudget &) = default;
};

// Breakpoint distance with a 1 m effective environment height:
// 4 (h_bs - 1)(h_ut - 1) f_c / c.
double breakpoint_distance(double fc_ghz, double h_bs, double h_ut);

// Mean LoS path loss in dB (shadow fading excluded):
// 28 + 40 log10(d3d) + 20 log10(fc) - 9 log10(d_bp^2 + (h_bs - h_ut)^2).
// Applied at every distance; there is no breakpoint switch.
double pl_los_mean(double d3d, double fc_ghz, double h_bs, double h_ut);

// Mean NLoS path loss in dB: 13.54 + 39.08 log10(d3d) + 20 log10(fc) - 0.6 (h_ut - 1.5).
double pl_nlos_mean(double d3d, double fc_ghz, double h_ut);

// Deterministic part of the path loss from one candidate to every grid point.
struct PathLossField
{
    std::size_t site_id = 0;
    std::vector<double> mean_loss;      // dB
    std::vector<std::uint8_t> link_state; // 1 = LoS
    std::vector<double> sigma;          // shadow-fading std-dev, dB

    std::size_t size() const noexcept { return mean_loss.size(); }

    friend bool operator==(const PathLossField &, const PathLossField &) = default;
};

PathLossField build_field(const CandidateSite &site, const ServiceGrid &grid, const LinkBudget &budget);

// One shadow-fading realization: loss[i] = mean_loss[i] + sigma[i] * N(0, 1),
// drawn i.i.d. per point in point order.
void sample_path_loss(const PathLossField &field, Rng &rng, std::span<double> loss);

struct CoverageSample
{
    double reward = 0.0;              // covered fraction
    std::vector<std::uint8_t> covered; // loss < max_path_loss
};

CoverageSample sample_coverage(const PathLossField &field, const LinkBudget &budget, Rng &rng);

// Standard normal CDF.
double normal_cdf(double x);

// Per-point coverage probability Phi((L_max - mean) / sigma); an indicator when sigma = 0.
double coverage_probability(double mean_loss, double sigma, double max_path_loss);

// Mean over grid points of coverage_probability: the expected reward of the field.
double expected_coverage(const PathLossField &field, const LinkBudget &budget);

} // namespace mmsite

#endif
