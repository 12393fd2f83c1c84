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

#include "mmsite/terrain.hpp"

#include "mmsite/error.hpp"
#include "mmsite/rng.hpp"

#include "file_util.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mmsite
{

namespace
{

constexpr int kPlacementRetries = 1000;
constexpr int kLayoutRestarts = 100;

// Number of whole cells spanned by a length; rejects lengths that are not a raster multiple.
std::size_t cells_spanned(double length, double resolution, const char *field)
{
    const double n = length / resolution;
    const double r = std::round(n);
    if (r < 1.0 || std::abs(n - r) > 1e-9 * std::max(1.0, r))
        fail(ErrorCode::ConfigInvalid,
             std::string(field) + " must be a positive multiple of the resolution");
    return static_cast<std::size_t>(r);
}

bool separated(const Building &a, const Building &b, double gap)
{
    return a.x_min >= b.x_max + gap || b.x_min >= a.x_max + gap || a.y_min >= b.y_max + gap ||
           b.y_min >= a.y_max + gap;
}

} // namespace

void UrbanGenConfig::validate() const
{
    auto require = [](bool ok, const char *msg) {
        if (!ok)
            fail(ErrorCode::ConfigInvalid, msg);
    };
    require(std::isfinite(resolution) && resolution > 0.0, "resolution must be > 0");
    require(std::isfinite(area_width) && area_width > 0.0, "area_width must be > 0");
    require(std::isfinite(area_depth) && area_depth > 0.0, "area_depth must be > 0");
    cells_spanned(area_width, resolution, "area_width");
    cells_spanned(area_depth, resolution, "area_depth");
    require(building_height.min > 0.0 && building_height.min <= building_height.max,
            "building_height_range must satisfy 0 < min <= max");
    require(building_width.min > 0.0 && building_width.min <= building_width.max,
            "building_width_range must satisfy 0 < min <= max");
    require(std::ceil(building_width.min / resolution - 1e-9) <=
                std::floor(building_width.max / resolution + 1e-9),
            "building_width_range contains no multiple of the resolution");
    require(building_count >= 0, "building_count must be >= 0");
    require(boundary_clearance >= 0.0, "boundary_clearance must be >= 0");
    require(min_separation >= 0.0, "min_separation must be >= 0");
}

ElevationModel ElevationModel::rasterize(double resolution, std::size_t n_x, std::size_t n_y,
                                         std::vector<Building> buildings)
{
    if (!(resolution > 0.0) || n_x == 0 || n_y == 0)
        fail(ErrorCode::InvalidArgument, "raster must have positive resolution and cell counts");

    ElevationModel dem;
    dem.resolution_ = resolution;
    dem.n_x_ = n_x;
    dem.n_y_ = n_y;
    dem.elevation_.assign(n_x * n_y, 0.0);
    for (const Building &b : buildings)
    {
        if (!(b.x_min < b.x_max && b.y_min < b.y_max && b.height > 0.0))
            fail(ErrorCode::InvalidArgument, "degenerate building footprint or height");
        // Cells whose centers may fall inside the footprint.
        const auto lo = [&](double v) {
            return static_cast<std::size_t>(std::max(0.0, std::floor(v / resolution - 0.5)));
        };
        const auto hi = [&](double v, std::size_t n) {
            return std::min<std::size_t>(n, static_cast<std::size_t>(std::max(0.0, std::ceil(v / resolution + 0.5))));
        };
        for (std::size_t iy = lo(b.y_min); iy < hi(b.y_max, n_y); ++iy)
            for (std::size_t ix = lo(b.x_min); ix < hi(b.x_max, n_x); ++ix)
                if (b.covers(dem.cell_center_x(ix), dem.cell_center_y(iy)))
                {
                    double &e = dem.elevation_[iy * n_x + ix];
                    e = std::max(e, b.height);
                }
    }
    dem.buildings_ = std::move(buildings);
    return dem;
}

CellIndex ElevationModel::cell_of(double x, double y) const
{
    if (!contains(x, y))
        fail(ErrorCode::OutOfBounds, "point (" + std::to_string(x) + ", " + std::to_string(y) +
                                         ") lies outside the elevation model");
    auto ix = static_cast<std::size_t>(x / resolution_);
    auto iy = static_cast<std::size_t>(y / resolution_);
    return {std::min(ix, n_x_ - 1), std::min(iy, n_y_ - 1)};
}

ElevationModel generate_environment(const UrbanGenConfig &config)
{
    config.validate();
    const double res = config.resolution;
    const std::size_t n_x = cells_spanned(config.area_width, res, "area_width");
    const std::size_t n_y = cells_spanned(config.area_depth, res, "area_depth");

    Rng rng(derive_seed(config.seed, 0));
    const auto w_lo = static_cast<long long>(std::ceil(config.building_width.min / res - 1e-9));
    const auto w_hi = static_cast<long long>(std::floor(config.building_width.max / res + 1e-9));
    std::uniform_int_distribution<long long> side_cells(w_lo, w_hi);
    std::uniform_real_distribution<double> height(config.building_height.min, config.building_height.max);
    const auto clear_cells = static_cast<long long>(std::ceil(config.boundary_clearance / res - 1e-9));

    // Sequential rejection sampling can jam when early footprints leave no room for later
    // ones; a jammed layout is discarded and redrawn from the continuing stream.
    std::vector<Building> placed;
    for (int restart = 0; restart < kLayoutRestarts; ++restart)
    {
        placed.clear();
        bool ok = true;
        for (int b = 0; b < config.building_count && ok; ++b)
        {
            ok = false;
            for (int attempt = 0; attempt < kPlacementRetries && !ok; ++attempt)
            {
                const long long w = side_cells(rng);
                const long long d = side_cells(rng);
                const double h = config.building_height.min == config.building_height.max
                                     ? config.building_height.min
                                     : height(rng);
                const long long max_x = static_cast<long long>(n_x) - clear_cells - w;
                const long long max_y = static_cast<long long>(n_y) - clear_cells - d;
                if (max_x < clear_cells || max_y < clear_cells)
                    continue;
                const long long x0 = std::uniform_int_distribution<long long>(clear_cells, max_x)(rng);
                const long long y0 = std::uniform_int_distribution<long long>(clear_cells, max_y)(rng);
                const Building cand{static_cast<double>(x0) * res, static_cast<double>(y0) * res,
                                    static_cast<double>(x0 + w) * res, static_cast<double>(y0 + d) * res, h};
                ok = std::all_of(placed.begin(), placed.end(),
                                 [&](const Building &o) { return separated(cand, o, config.min_separation); });
                if (ok)
                    placed.push_back(cand);
            }
        }
        if (ok)
            return ElevationModel::rasterize(res, n_x, n_y, std::move(placed));
    }
    fail(ErrorCode::PlacementFailure, "could not place " + std::to_string(config.building_count) +
                                          " buildings after " + std::to_string(kLayoutRestarts) +
                                          " layouts of " + std::to_string(kPlacementRetries) +
                                          " attempts per building");
}

ServiceGrid derive_service_grid(const ElevationModel &dem, double rx_height)
{
    if (!(rx_height > 0.0) || !std::isfinite(rx_height))
        fail(ErrorCode::InvalidArgument, "receiver height must be > 0");
    ServiceGrid grid;
    grid.rx_height = rx_height;
    for (std::size_t iy = 0; iy < dem.n_y(); ++iy)
        for (std::size_t ix = 0; ix < dem.n_x(); ++ix)
            if (dem.at(ix, iy) == 0.0)
            {
                grid.points.push_back({dem.cell_center_x(ix), dem.cell_center_y(iy), rx_height});
                grid.cells.push_back(iy * dem.n_x() + ix);
            }
    if (grid.points.empty())
        fail(ErrorCode::EmptyServiceArea, "every cell of the elevation model is covered by a building");
    return grid;
}

// ---------- DEM document ----------

std::string dem_to_string(const ElevationModel &dem)
{
    detail::json j;
    j["format"] = "mmsite-dem";
    j["version"] = 1;
    j["resolution"] = dem.resolution();
    j["n_x"] = dem.n_x();
    j["n_y"] = dem.n_y();
    j["elevation"] = dem.elevation();
    auto &bs = j["buildings"] = detail::json::array();
    for (const Building &b : dem.buildings())
        bs.push_back({{"x_min", b.x_min}, {"y_min", b.y_min}, {"x_max", b.x_max}, {"y_max", b.y_max}, {"height", b.height}});
    return j.dump(1) + "\n";
}

ElevationModel dem_from_string(std::string_view text, const std::string &source)
{
    using detail::as_number;
    using detail::require;
    const detail::json j = detail::parse_json(text, source);

    if (detail::as_string(require(j, "format", source), "format") != "mmsite-dem")
        fail(ErrorCode::FormatError, source + ": field 'format': expected \"mmsite-dem\"");
    if (detail::as_unsigned(require(j, "version", source), "version") != 1)
        fail(ErrorCode::FormatError, source + ": field 'version': unsupported version");

    const double res = as_number(require(j, "resolution", source), "resolution");
    if (!(res > 0.0) || !std::isfinite(res))
        fail(ErrorCode::FormatError, source + ": field 'resolution': must be > 0");
    const auto n_x = detail::as_unsigned(require(j, "n_x", source), "n_x");
    const auto n_y = detail::as_unsigned(require(j, "n_y", source), "n_y");
    if (n_x == 0 || n_y == 0 || n_x > (1u << 20) || n_y > (1u << 20))
        fail(ErrorCode::FormatError, source + ": fields 'n_x'/'n_y': out of range");

    const auto &elev = require(j, "elevation", source);
    if (!elev.is_array() || elev.size() != n_x * n_y)
        fail(ErrorCode::FormatError, source + ": field 'elevation': expected an array of n_x*n_y = " +
                                         std::to_string(n_x * n_y) + " numbers");

    std::vector<Building> buildings;
    const auto &bs = require(j, "buildings", source);
    if (!bs.is_array())
        fail(ErrorCode::FormatError, source + ": field 'buildings': expected an array");
    for (std::size_t k = 0; k < bs.size(); ++k)
    {
        const std::string ctx = source + ": buildings[" + std::to_string(k) + "]";
        Building b{as_number(require(bs[k], "x_min", ctx), ctx + ".x_min"),
                   as_number(require(bs[k], "y_min", ctx), ctx + ".y_min"),
                   as_number(require(bs[k], "x_max", ctx), ctx + ".x_max"),
                   as_number(require(bs[k], "y_max", ctx), ctx + ".y_max"),
                   as_number(require(bs[k], "height", ctx), ctx + ".height")};
        if (!(b.x_min < b.x_max && b.y_min < b.y_max && b.height > 0.0))
            fail(ErrorCode::FormatError, ctx + ": degenerate footprint or non-positive height");
        buildings.push_back(b);
    }

    ElevationModel dem = ElevationModel::rasterize(res, n_x, n_y, std::move(buildings));
    for (std::size_t k = 0; k < elev.size(); ++k)
    {
        const std::string field = "elevation[" + std::to_string(k) + "]";
        const double e = as_number(elev[k], field);
        if (!(e >= 0.0) || !std::isfinite(e))
            fail(ErrorCode::FormatError, source + ": field '" + field + "': negative or non-finite elevation");
        if (e != dem.elevation()[k])
            fail(ErrorCode::FormatError, source + ": field '" + field + "': disagrees with the building list");
    }
    return dem;
}

void save_dem(const ElevationModel &dem, const std::filesystem::path &path)
{
    detail::write_text_file(path, dem_to_string(dem));
}

ElevationModel load_dem(const std::filesystem::path &path)
{
    return dem_from_string(detail::read_text_file(path), path.string());
}

} // namespace mmsite
