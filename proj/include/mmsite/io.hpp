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

#ifndef MMSITE_IO_HPP
#define MMSITE_IO_HPP

#include "mmsite/viewshed.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mmsite
{

// Candidates document (JSON):
//   { "format": "mmsite-candidates", "version": 1, "grid_points": N, "boundary_margin": m,
//     "candidates": [ { "id", "x", "y", "z", "building", "side", "visible_count",
//                       "visibility": "<hex, bit i of byte i/8 = point i>" (optional) } ] }
std::string candidates_to_string(const std::vector<CandidateSite> &candidates, std::size_t grid_points,
                                 double boundary_margin, bool include_mask);
std::vector<CandidateSite> candidates_from_string(std::string_view text, const std::string &source = "<memory>");

void save_candidates(const std::vector<CandidateSite> &candidates, std::size_t grid_points, double boundary_margin,
                     bool include_mask, const std::filesystem::path &path);
std::vector<CandidateSite> load_candidates(const std::filesystem::path &path);

std::string pack_mask(const VisibilityMask &mask);
VisibilityMask unpack_mask(std::string_view hex, std::size_t points);

// Shortest round-trip decimal form of a double.
std::string format_number(double value);

} // namespace mmsite

#endif
