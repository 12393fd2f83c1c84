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

// Independent reference computations used by the tests. Nothing here calls
// into the library code it checks; formulas are written out from scratch.

#ifndef MMSITE_TESTS_ORACLES_HPP
#define MMSITE_TESTS_ORACLES_HPP

#include "mmsite/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle
{

inline double log10_(double x) { return std::log(x) / std::log(10.0); }

inline double los_db(double d, double fc, double hbs, double hut)
{
    const double dbp = 4.0 * (hbs - 1.0) * (hut - 1.0) * fc * 1.0e9 / 3.0e8;
    return 28.0 + 40.0 * log10_(d) + 20.0 * log10_(fc) - 9.0 * log10_(dbp * dbp + (hbs - hut) * (hbs - hut));
}

inline double nlos_db(double d, double fc, double hut)
{
    return 13.54 + 39.08 * log10_(d) + 20.0 * log10_(fc) - 0.6 * (hut - 1.5);
}

// Standard normal CDF by composite Simpson integration of the density from -12.
inline double phi(double x, int n = 20000)
{
    const double lo = -12.0;
    if (x <= lo)
        return 0.0;
    const double h = (x - lo) / n;
    const double k = 1.0 / std::sqrt(2.0 * 3.14159265358979323846);
    auto f = [&](double t) { return k * std::exp(-0.5 * t * t); };
    double s = f(lo) + f(x);
    for (int i = 1; i < n; ++i)
        s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

struct Seg
{
    double ax, ay, az, bx, by, bz;
};

inline long cell_index(double v, double res, std::size_t n)
{
    long i = static_cast<long>(std::floor(v / res));
    if (i >= static_cast<long>(n))
        i = static_cast<long>(n) - 1;
    return i;
}

// Dense sampling of the segment; the cells holding either endpoint are skipped.
inline bool sampled_los(const mmsite::ElevationModel &dem, const Seg &s, double step = 0.01)
{
    const double res = dem.resolution();
    const long aix = cell_index(s.ax, res, dem.n_x()), aiy = cell_index(s.ay, res, dem.n_y());
    const long bix = cell_index(s.bx, res, dem.n_x()), biy = cell_index(s.by, res, dem.n_y());
    const double len = std::hypot(s.bx - s.ax, s.by - s.ay);
    const long n = std::max<long>(1, static_cast<long>(std::ceil(len / step)));
    for (long k = 0; k <= n; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(n);
        const double x = s.ax + t * (s.bx - s.ax), y = s.ay + t * (s.by - s.ay);
        const double z = (1.0 - t) * s.az + t * s.bz;
        const long ix = cell_index(x, res, dem.n_x()), iy = cell_index(y, res, dem.n_y());
        if ((ix == aix && iy == aiy) || (ix == bix && iy == biy))
            continue;
        if (!(z > dem.at(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy))))
            return false;
    }
    return true;
}

// Smallest vertical clearance between the segment and the roofs it passes,
// over dense samples; negative when the segment dips below a roof.
inline double min_clearance(const mmsite::ElevationModel &dem, const Seg &s, double step = 0.01)
{
    const double res = dem.resolution();
    const long aix = cell_index(s.ax, res, dem.n_x()), aiy = cell_index(s.ay, res, dem.n_y());
    const long bix = cell_index(s.bx, res, dem.n_x()), biy = cell_index(s.by, res, dem.n_y());
    const double len = std::hypot(s.bx - s.ax, s.by - s.ay);
    const long n = std::max<long>(1, static_cast<long>(std::ceil(len / step)));
    double best = 1e300;
    for (long k = 0; k <= n; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(n);
        const double x = s.ax + t * (s.bx - s.ax), y = s.ay + t * (s.by - s.ay);
        const double z = (1.0 - t) * s.az + t * s.bz;
        const long ix = cell_index(x, res, dem.n_x()), iy = cell_index(y, res, dem.n_y());
        if ((ix == aix && iy == aiy) || (ix == bix && iy == biy))
            continue;
        const double e = dem.at(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy));
        if (e > 0.0)
            best = std::min(best, z - e);
    }
    return best;
}

// A verdict is grazing when it is not stable under nudging the segment by the
// sampling step sideways or by one cell's worth of height interpolation
// vertically (the rise of the segment over one cell diagonal).
inline bool grazing(const mmsite::ElevationModel &dem, const Seg &s, double step = 0.01)
{
    const double len = std::hypot(s.bx - s.ax, s.by - s.ay);
    const double dz = len > 0.0 ? std::abs(s.bz - s.az) / len * dem.resolution() * std::sqrt(2.0) : 0.0;
    const double vz = std::max(dz, 1e-6);
    const double w = dem.width(), d = dem.depth();
    auto clampx = [&](double v) { return std::clamp(v, 0.0, w); };
    auto clampy = [&](double v) { return std::clamp(v, 0.0, d); };
    const bool base = sampled_los(dem, s, step);
    for (double ox : {-step, 0.0, step})
        for (double oy : {-step, 0.0, step})
            for (double oz : {-vz, 0.0, vz}) {
                Seg t{clampx(s.ax + ox), clampy(s.ay + oy), s.az + oz, clampx(s.bx + ox), clampy(s.by + oy), s.bz + oz};
                if (sampled_los(dem, t, step) != base)
                    return true;
            }
    return false;
}

// Seeded generator helpers for property tests.
class Gen
{
  public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    std::vector<double> vec(std::size_t n, double lo, double hi)
    {
        std::vector<double> v(n);
        for (auto &x : v)
            x = uniform(lo, hi);
        return v;
    }
    std::mt19937_64 &engine() { return rng_; }

  private:
    std::mt19937_64 rng_;
};

// A DEM with explicitly placed rectangles, built without the generator.
inline mmsite::ElevationModel scene(std::size_t nx, std::size_t ny, std::vector<mmsite::Building> b,
                                    double res = 1.0)
{
    return mmsite::ElevationModel::rasterize(res, nx, ny, std::move(b));
}

} // namespace oracle

#endif
