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

#ifndef MMSITE_GEOMETRY_HPP
#define MMSITE_GEOMETRY_HPP

#include <cmath>

namespace mmsite
{

struct Point3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Point3 &, const Point3 &) = default;
};

inline double distance(const Point3 &a, const Point3 &b) noexcept
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

} // namespace mmsite

#endif
