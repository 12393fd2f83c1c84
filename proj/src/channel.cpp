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

#include "mmsite/channel.hpp"

#include "mmsite/error.hpp"

#include <cmath>
#include <random>

namespace mmsite
{

namespace
{
constexpr double kSpeedOfLight = 3.0e8;
constexpr double kEnvironmentHeight = 1.0;
} // namespace

void LinkBudget::validate() const
{
    if (!(fc_ghz > 0.0) || !std::isfinite(fc_ghz))
        fail(ErrorCode::ConfigInvalid, "budget.fc_ghz must be > 0");
    if (!(sigma_los >= 0.0) || !(sigma_nlos >= 0.0) || !std::isfinite(sigma_los) || !std::isfinite(sigma_nlos))
        fail(ErrorCode::ConfigInvalid, "budget sigmas must be >= 0");
    if (!(max_path_loss > 0.0) || !std::isfinite(max_path_loss))
        fail(ErrorCode::ConfigInvalid, "budget.max_path_loss must be > 0");
    if (!(h_ut > 0.0) || !std::isfinite(h_ut))
        fail(ErrorCode::ConfigInvalid, "budget.h_ut must be > 0");
}

double breakpoint_distance(double fc_ghz, double h_bs, double h_ut)
{
    const double h_bs_eff = h_bs - kEnvironmentHeight;
    const double h_ut_eff = h_ut - kEnvironmentHeight;
    if (!(h_bs_eff > 0.0) || !(h_ut_eff > 0.0))
        fail(ErrorCode::InvalidHeights, "effective antenna heights must be positive (h_bs=" +
                                            std::to_string(h_bs) + ", h_ut=" + std::to_string(h_ut) + ")");
    return 4.0 * h_bs_eff * h_ut_eff * (fc_ghz * 1.0e9) / kSpeedOfLight;
}

double pl_los_mean(double d3d, double fc_ghz, double h_bs, double h_ut)
{
    if (!(d3d > 0.0))
        fail(ErrorCode::InvalidArgument, "d3d must be > 0");
    const double d_bp = breakpoint_distance(fc_ghz, h_bs, h_ut);
    const double dh = h_bs - h_ut;
    return 28.0 + 40.0 * std::log10(d3d) + 20.0 * std::log10(fc_ghz) - 9.0 * std::log10(d_bp * d_bp + dh * dh);
}

double pl_nlos_mean(double d3d, double fc_ghz, double h_ut)
{
    if (!(d3d > 0.0))
        fail(ErrorCode::InvalidArgument, "d3d must be > 0");
    return 13.54 + 39.08 * std::log10(d3d) + 20.0 * std::log10(fc_ghz) - 0.6 * (h_ut - 1.5);
}

PathLossField build_field(const CandidateSite &site, const ServiceGrid &grid, const LinkBudget &budget)
{
    budget.validate();
    if (site.visibility.size() != grid.size())
        fail(ErrorCode::GridMismatch, "candidate " + std::to_string(site.id) + " has a visibility mask of " +
                                          std::to_string(site.visibility.size()) + " points, grid has " +
                                          std::to_string(grid.size()));
    if (grid.rx_height != budget.h_ut)
        fail(ErrorCode::GridMismatch, "grid receiver height differs from budget.h_ut");

    PathLossField field;
    field.site_id = site.id;
    field.mean_loss.resize(grid.size());
    field.link_state.resize(grid.size());
    field.sigma.resize(grid.size());
    const double h_bs = site.position.z;
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        const double d = distance(site.position, grid.points[i]);
        const bool los = site.visibility[i] != 0;
        field.link_state[i] = los ? 1 : 0;
        field.mean_loss[i] = los ? pl_los_mean(d, budget.fc_ghz, h_bs, budget.h_ut)
                                 : pl_nlos_mean(d, budget.fc_ghz, budget.h_ut);
        field.sigma[i] = los ? budget.sigma_los : budget.sigma_nlos;
    }
    return field;
}

void sample_path_loss(const PathLossField &field, Rng &rng, std::span<double> loss)
{
    if (loss.size() != field.size())
        fail(ErrorCode::GridMismatch, "output span does not match the field size");
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t i = 0; i < field.size(); ++i)
        loss[i] = field.mean_loss[i] + field.sigma[i] * gauss(rng);
}

CoverageSample sample_coverage(const PathLossField &field, const LinkBudget &budget, Rng &rng)
{
    std::vector<double> loss(field.size());
    sample_path_loss(field, rng, loss);
    CoverageSample out;
    out.covered.resize(field.size());
    std::size_t n = 0;
    for (std::size_t i = 0; i < field.size(); ++i)
    {
        out.covered[i] = loss[i] < budget.max_path_loss ? 1 : 0;
        n += out.covered[i];
    }
    out.reward = field.size() == 0 ? 0.0 : static_cast<double>(n) / static_cast<double>(field.size());
    return out;
}

double normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double coverage_probability(double mean_loss, double sigma, double max_path_loss)
{
    if (sigma == 0.0)
        return mean_loss < max_path_loss ? 1.0 : 0.0;
    return normal_cdf((max_path_loss - mean_loss) / sigma);
}

double expected_coverage(const PathLossField &field, const LinkBudget &budget)
{
    if (field.size() == 0)
        return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i)
        sum += coverage_probability(field.mean_loss[i], field.sigma[i], budget.max_path_loss);
    return sum / static_cast<double>(field.size());
}

} // namespace mmsite
