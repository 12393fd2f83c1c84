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

#include "mmsite/viewshed.hpp"

#include "mmsite/error.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <tuple>

namespace mmsite
{

const char *edge_side_name(EdgeSide side) noexcept
{
    switch (side)
    {
    case EdgeSide::South: return "south";
    case EdgeSide::East: return "east";
    case EdgeSide::North: return "north";
    case EdgeSide::West: return "west";
    }
    return "?";
}

bool line_of_sight(const ElevationModel &dem, const Point3 &a_in, const Point3 &b_in)
{
    // Walk from the lexicographically smaller endpoint so that both argument
    // orders visit the same cells, including at exact vertex crossings.
    const bool swap = std::tie(b_in.x, b_in.y) < std::tie(a_in.x, a_in.y);
    const Point3 &a = swap ? b_in : a_in;
    const Point3 &b = swap ? a_in : b_in;

    const CellIndex ca = dem.cell_of(a.x, a.y);
    const CellIndex cb = dem.cell_of(b.x, b.y);
    if (ca == cb)
        return true;

    const double res = dem.resolution();
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    constexpr double inf = std::numeric_limits<double>::infinity();

    long long ix = static_cast<long long>(ca.ix);
    long long iy = static_cast<long long>(ca.iy);
    const int step_x = dx > 0.0 ? 1 : (dx < 0.0 ? -1 : 0);
    const int step_y = dy > 0.0 ? 1 : (dy < 0.0 ? -1 : 0);
    double t_max_x = inf, t_delta_x = inf;
    double t_max_y = inf, t_delta_y = inf;
    if (step_x != 0)
    {
        const double boundary = static_cast<double>(step_x > 0 ? ix + 1 : ix) * res;
        t_max_x = (boundary - a.x) / dx;
        t_delta_x = res / std::abs(dx);
    }
    if (step_y != 0)
    {
        const double boundary = static_cast<double>(step_y > 0 ? iy + 1 : iy) * res;
        t_max_y = (boundary - a.y) / dy;
        t_delta_y = res / std::abs(dy);
    }

    auto height = [&](double t) { return (1.0 - t) * a.z + t * b.z; };
    const auto n_x = static_cast<long long>(dem.n_x());
    const auto n_y = static_cast<long long>(dem.n_y());

    double t_enter = 0.0;
    for (;;)
    {
        const bool at_a = ix == static_cast<long long>(ca.ix) && iy == static_cast<long long>(ca.iy);
        const bool at_b = ix == static_cast<long long>(cb.ix) && iy == static_cast<long long>(cb.iy);
        if (at_b)
            return true;
        const double t_exit = std::min({t_max_x, t_max_y, 1.0});
        if (!at_a)
        {
            const double lowest = std::min(height(t_enter), height(t_exit));
            if (lowest <= dem.at(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy)))
                return false;
        }
        if (t_exit >= 1.0)
            return true;

        if (t_max_x < t_max_y)
        {
            ix += step_x;
            t_max_x += t_delta_x;
        }
        else if (t_max_y < t_max_x)
        {
            iy += step_y;
            t_max_y += t_delta_y;
        }
        else
        {
            // Exact vertex crossing: the diagonal neighbours are only touched at a point.
            ix += step_x;
            iy += step_y;
            t_max_x += t_delta_x;
            t_max_y += t_delta_y;
        }
        t_enter = t_exit;
        if (ix < 0 || iy < 0 || ix >= n_x || iy >= n_y)
            return true; // numerical overshoot past b's cell
    }
}

VisibilityMask viewshed_mask(const ElevationModel &dem, const Point3 &site, const ServiceGrid &grid)
{
    dem.cell_of(site.x, site.y); // bounds check
    VisibilityMask mask(grid.size(), 0);
    for (std::size_t i = 0; i < grid.size(); ++i)
        mask[i] = line_of_sight(dem, site, grid.points[i]) ? 1 : 0;
    return mask;
}

std::vector<EdgePoint> enumerate_rooftop_edge_points(const ElevationModel &dem, double mast_height)
{
    if (dem.buildings().empty())
        fail(ErrorCode::NoBuildings, "the elevation model has no buildings");
    if (!(mast_height >= 0.0))
        fail(ErrorCode::InvalidArgument, "mast height must be >= 0");

    std::vector<EdgePoint> out;
    for (std::size_t k = 0; k < dem.buildings().size(); ++k)
    {
        const Building &b = dem.buildings()[k];
        // Range of cells whose centers the footprint covers.
        std::size_t ix0 = dem.n_x(), ix1 = 0, iy0 = dem.n_y(), iy1 = 0;
        for (std::size_t ix = 0; ix < dem.n_x(); ++ix)
        {
            const double cx = dem.cell_center_x(ix);
            if (cx > b.x_min && cx < b.x_max)
            {
                ix0 = std::min(ix0, ix);
                ix1 = std::max(ix1, ix);
            }
        }
        for (std::size_t iy = 0; iy < dem.n_y(); ++iy)
        {
            const double cy = dem.cell_center_y(iy);
            if (cy > b.y_min && cy < b.y_max)
            {
                iy0 = std::min(iy0, iy);
                iy1 = std::max(iy1, iy);
            }
        }
        if (ix0 > ix1 || iy0 > iy1)
            continue; // footprint smaller than a cell

        const double z = b.height + mast_height;
        auto push = [&](std::size_t ix, std::size_t iy, EdgeSide side) {
            out.push_back({{dem.cell_center_x(ix), dem.cell_center_y(iy), z}, k, side});
        };
        for (std::size_t ix = ix0; ix <= ix1; ++ix)
            push(ix, iy0, EdgeSide::South);
        if (ix1 > ix0)
            for (std::size_t iy = iy0 + 1; iy < iy1; ++iy)
                push(ix1, iy, EdgeSide::East);
        if (iy1 > iy0)
            for (std::size_t ix = ix0; ix <= ix1; ++ix)
                push(ix, iy1, EdgeSide::North);
        for (std::size_t iy = iy0 + 1; iy < iy1; ++iy)
            push(ix0, iy, EdgeSide::West);
    }
    return out;
}

std::vector<CandidateSite> select_candidates(const ElevationModel &dem, const std::vector<EdgePoint> &edge_points,
                                             const ServiceGrid &grid, double boundary_margin)
{
    if (!(boundary_margin >= 0.0))
        fail(ErrorCode::InvalidArgument, "boundary margin must be >= 0");

    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < edge_points.size(); ++i)
    {
        const Point3 &p = edge_points[i].position;
        const double to_boundary = std::min({p.x, p.y, dem.width() - p.x, dem.depth() - p.y});
        if (to_boundary >= boundary_margin)
            kept.push_back(i);
    }
    if (kept.empty())
        fail(ErrorCode::NoCandidates, "every rooftop edge point lies within the boundary margin");

    std::vector<VisibilityMask> masks(kept.size());
    std::vector<std::size_t> counts(kept.size());
    detail::parallel_for(kept.size(), 0, [&](std::size_t k) {
        masks[k] = viewshed_mask(dem, edge_points[kept[k]].position, grid);
        counts[k] = static_cast<std::size_t>(std::count(masks[k].begin(), masks[k].end(), std::uint8_t{1}));
    });

    // Best point per (building, side) group, groups in enumeration order.
    struct Group
    {
        std::size_t building;
        EdgeSide side;
        std::size_t best; // index into kept
    };
    std::vector<Group> groups;
    auto better = [&](std::size_t lhs, std::size_t rhs) {
        const Point3 &pl = edge_points[kept[lhs]].position;
        const Point3 &pr = edge_points[kept[rhs]].position;
        if (counts[lhs] != counts[rhs])
            return counts[lhs] > counts[rhs];
        return std::tie(pl.y, pl.x, kept[lhs]) < std::tie(pr.y, pr.x, kept[rhs]);
    };
    for (std::size_t k = 0; k < kept.size(); ++k)
    {
        const EdgePoint &e = edge_points[kept[k]];
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const Group &g) { return g.building == e.building && g.side == e.side; });
        if (it == groups.end())
            groups.push_back({e.building, e.side, k});
        else if (better(k, it->best))
            it->best = k;
    }
    std::stable_sort(groups.begin(), groups.end(), [](const Group &l, const Group &r) {
        return std::tie(l.building, l.side) < std::tie(r.building, r.side);
    });

    std::vector<CandidateSite> out;
    out.reserve(groups.size());
    for (const Group &g : groups)
    {
        const EdgePoint &e = edge_points[kept[g.best]];
        out.push_back({out.size(), e.position, e.building, e.side, std::move(masks[g.best]), counts[g.best]});
    }
    return out;
}

} // namespace mmsite
