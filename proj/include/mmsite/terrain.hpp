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

#ifndef MMSITE_TERRAIN_HPP
#define MMSITE_TERRAIN_HPP

#include "mmsite/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mmsite
{

struct Range
{
    double min = 0.0;
    double max = 0.0;

    friend bool operator==(const Range &, const Range &) = default;
};

// Parameters of the synthetic urban scene generator. Building footprints are
// snapped to the raster so that every footprint covers whole cells.
struct UrbanGenConfig
{
    double area_width = 100.0;  // m, along x
    double area_depth = 100.0;  // m, along y
    Range building_height{8.0, 25.0};
    Range building_width{20.0, 40.0}; // both footprint sides are drawn from this range
    int building_count = 6;
    double boundary_clearance = 0.0; // min gap between a footprint and the area boundary
    double min_separation = 2.0;     // min gap between two footprints
    double resolution = 1.0;         // m per cell
    std::uint64_t seed = 42;

    // Throws Error(ConfigInvalid) naming the offending field.
    void validate() const;

    friend bool operator==(const UrbanGenConfig &, const UrbanGenConfig &) = default;
};

struct Building
{
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;
    double height = 0.0;

    bool covers(double x, double y) const noexcept
    {
        return x > x_min && x < x_max && y > y_min && y < y_max;
    }

    friend bool operator==(const Building &, const Building &) = default;
};

struct CellIndex
{
    std::size_t ix = 0;
    std::size_t iy = 0;

    friend bool operator==(const CellIndex &, const CellIndex &) = default;
};

// 2.5D raster of the scene. The binary occupancy volume is implicit:
// (x, y, z) is occupied iff z < elevation at the cell containing (x, y).
class ElevationModel
{
  public:
    ElevationModel() = default;

    // Rasterizes the buildings: a cell takes the max height of the buildings
    // covering its center, 0 otherwise.
    static ElevationModel rasterize(double resolution, std::size_t n_x, std::size_t n_y,
                                    std::vector<Building> buildings);

    double resolution() const noexcept { return resolution_; }
    std::size_t n_x() const noexcept { return n_x_; }
    std::size_t n_y() const noexcept { return n_y_; }
    std::size_t cell_count() const noexcept { return n_x_ * n_y_; }
    double width() const noexcept { return static_cast<double>(n_x_) * resolution_; }
    double depth() const noexcept { return static_cast<double>(n_y_) * resolution_; }

    const std::vector<double> &elevation() const noexcept { return elevation_; }
    const std::vector<Building> &buildings() const noexcept { return buildings_; }

    double at(std::size_t ix, std::size_t iy) const noexcept { return elevation_[iy * n_x_ + ix]; }
    double at(CellIndex c) const noexcept { return at(c.ix, c.iy); }

    bool contains(double x, double y) const noexcept
    {
        return x >= 0.0 && y >= 0.0 && x <= width() && y <= depth();
    }

    // Cell containing (x, y); points on the far boundary map to the last cell.
    // Throws Error(OutOfBounds) outside the area.
    CellIndex cell_of(double x, double y) const;

    double cell_center_x(std::size_t ix) const noexcept { return (static_cast<double>(ix) + 0.5) * resolution_; }
    double cell_center_y(std::size_t iy) const noexcept { return (static_cast<double>(iy) + 0.5) * resolution_; }

    // Elevation at the cell containing (x, y).
    double elevation_at(double x, double y) const { return at(cell_of(x, y)); }

    friend bool operator==(const ElevationModel &, const ElevationModel &) = default;

  private:
    double resolution_ = 1.0;
    std::size_t n_x_ = 0;
    std::size_t n_y_ = 0;
    std::vector<double> elevation_;
    std::vector<Building> buildings_;
};

// Receiver points at the centers of building-free cells, row-major (y outer, x inner).
struct ServiceGrid
{
    std::vector<Point3> points;
    std::vector<std::size_t> cells; // flat cell index iy * n_x + ix of each point
    double rx_height = 1.5;

    std::size_t size() const noexcept { return points.size(); }

    friend bool operator==(const ServiceGrid &, const ServiceGrid &) = default;
};

ElevationModel generate_environment(const UrbanGenConfig &config);

ServiceGrid derive_service_grid(const ElevationModel &dem, double rx_height);

// DEM document (JSON):
//   { "format": "mmsite-dem", "version": 1, "resolution": r, "n_x": nx, "n_y": ny,
//     "elevation": [nx*ny numbers, index iy*nx + ix],
//     "buildings": [ {"x_min","y_min","x_max","y_max","height"}, ... ] }
std::string dem_to_string(const ElevationModel &dem);
ElevationModel dem_from_string(std::string_view text, const std::string &source = "<memory>");

void save_dem(const ElevationModel &dem, const std::filesystem::path &path);
ElevationModel load_dem(const std::filesystem::path &path);

} // namespace mmsite

#endif
