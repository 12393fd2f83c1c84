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

#ifndef MMSITE_VIEWSHED_HPP
#define MMSITE_VIEWSHED_HPP

#include "mmsite/geometry.hpp"
#include "mmsite/terrain.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mmsite
{

// Default height of the BS antenna above the roof it is mounted on.
inline constexpr double kDefaultMastHeight = 0.5;

enum class EdgeSide : std::uint8_t
{
    South = 0, // y = y_min row, corners included
    East = 1,  // x = x_max column, corners excluded
    North = 2, // y = y_max row, corners included
    West = 3,  // x = x_min column, corners excluded
};

const char *edge_side_name(EdgeSide side) noexcept;

struct EdgePoint
{
    Point3 position;
    std::size_t building = 0;
    EdgeSide side = EdgeSide::South;

    friend bool operator==(const EdgePoint &, const EdgePoint &) = default;
};

using VisibilityMask = std::vector<std::uint8_t>;

struct CandidateSite
{
    std::size_t id = 0;
    Point3 position;
    std::size_t building = 0;
    EdgeSide side = EdgeSide::South;
    VisibilityMask visibility; // one entry per service-grid point
    std::size_t visible_count = 0;

    friend bool operator==(const CandidateSite &, const CandidateSite &) = default;
};

// True iff the straight segment a-b passes strictly above every cell it
// crosses, the cells containing a and b excepted. Walks the cells under the
// horizontal projection and compares the segment height on entry and exit of
// each cell with the cell elevation. Symmetric in (a, b).
bool line_of_sight(const ElevationModel &dem, const Point3 &a, const Point3 &b);

VisibilityMask viewshed_mask(const ElevationModel &dem, const Point3 &site, const ServiceGrid &grid);

// Perimeter cell centers of every building footprint at roof height + mast_height.
std::vector<EdgePoint> enumerate_rooftop_edge_points(const ElevationModel &dem,
                                                     double mast_height = kDefaultMastHeight);

// Drops edge points closer than boundary_margin to the area boundary, groups the
// rest by (building, side) and keeps the point with the largest viewshed in each
// group. Ties go to the lowest (y, x), then to the earliest enumerated point.
std::vector<CandidateSite> select_candidates(const ElevationModel &dem, const std::vector<EdgePoint> &edge_points,
                                             const ServiceGrid &grid, double boundary_margin);

} // namespace mmsite

#endif
