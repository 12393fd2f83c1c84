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

#include "mmsite/io.hpp"

#include "mmsite/error.hpp"

#include "file_util.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace mmsite
{

std::string format_number(double value)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string pack_mask(const VisibilityMask &mask)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve((mask.size() + 7) / 8 * 2);
    for (std::size_t base = 0; base < mask.size(); base += 8)
    {
        unsigned byte = 0;
        for (std::size_t b = 0; b < 8 && base + b < mask.size(); ++b)
            if (mask[base + b])
                byte |= 1u << b;
        out.push_back(digits[byte >> 4]);
        out.push_back(digits[byte & 0xf]);
    }
    return out;
}

VisibilityMask unpack_mask(std::string_view hex, std::size_t points)
{
    if (hex.size() != (points + 7) / 8 * 2)
        fail(ErrorCode::FormatError, "visibility mask has " + std::to_string(hex.size()) +
                                         " hex digits, expected " + std::to_string((points + 7) / 8 * 2));
    auto nibble = [](char c) -> unsigned {
        if (c >= '0' && c <= '9')
            return static_cast<unsigned>(c - '0');
        if (c >= 'a' && c <= 'f')
            return static_cast<unsigned>(c - 'a' + 10);
        fail(ErrorCode::FormatError, std::string("invalid hex digit '") + c + "' in visibility mask");
    };
    VisibilityMask mask(points, 0);
    for (std::size_t i = 0; i < points; ++i)
    {
        const unsigned byte = nibble(hex[i / 8 * 2]) << 4 | nibble(hex[i / 8 * 2 + 1]);
        mask[i] = (byte >> (i % 8)) & 1u;
    }
    return mask;
}

std::string candidates_to_string(const std::vector<CandidateSite> &candidates, std::size_t grid_points,
                                 double boundary_margin, bool include_mask)
{
    detail::json j;
    j["format"] = "mmsite-candidates";
    j["version"] = 1;
    j["grid_points"] = grid_points;
    j["boundary_margin"] = boundary_margin;
    auto &arr = j["candidates"] = detail::json::array();
    for (const auto &c : candidates)
    {
        detail::json e = {{"id", c.id},
                          {"x", c.position.x},
                          {"y", c.position.y},
                          {"z", c.position.z},
                          {"building", c.building},
                          {"side", edge_side_name(c.side)},
                          {"visible_count", c.visible_count}};
        if (include_mask)
            e["visibility"] = pack_mask(c.visibility);
        arr.push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

std::vector<CandidateSite> candidates_from_string(std::string_view text, const std::string &source)
{
    using detail::require;
    const auto j = detail::parse_json(text, source);
    if (detail::as_string(require(j, "format", source), "format") != "mmsite-candidates")
        fail(ErrorCode::FormatError, source + ": field 'format': expected \"mmsite-candidates\"");
    if (detail::as_unsigned(require(j, "version", source), "version") != 1)
        fail(ErrorCode::FormatError, source + ": field 'version': unsupported version");
    const auto points = detail::as_unsigned(require(j, "grid_points", source), "grid_points");
    const auto &arr = require(j, "candidates", source);
    if (!arr.is_array())
        fail(ErrorCode::FormatError, source + ": field 'candidates': expected an array");

    std::vector<CandidateSite> out;
    for (std::size_t k = 0; k < arr.size(); ++k)
    {
        const std::string ctx = source + ": candidates[" + std::to_string(k) + "]";
        CandidateSite c;
        c.id = detail::as_unsigned(require(arr[k], "id", ctx), ctx + ".id");
        c.position = {detail::as_number(require(arr[k], "x", ctx), ctx + ".x"),
                      detail::as_number(require(arr[k], "y", ctx), ctx + ".y"),
                      detail::as_number(require(arr[k], "z", ctx), ctx + ".z")};
        c.building = detail::as_unsigned(require(arr[k], "building", ctx), ctx + ".building");
        const std::string side = detail::as_string(require(arr[k], "side", ctx), ctx + ".side");
        bool known = false;
        for (auto s : {EdgeSide::South, EdgeSide::East, EdgeSide::North, EdgeSide::West})
            if (side == edge_side_name(s))
            {
                c.side = s;
                known = true;
            }
        if (!known)
            fail(ErrorCode::FormatError, ctx + ".side: unknown edge side '" + side + "'");
        c.visible_count = detail::as_unsigned(require(arr[k], "visible_count", ctx), ctx + ".visible_count");
        if (auto it = arr[k].find("visibility"); it != arr[k].end())
        {
            c.visibility = unpack_mask(detail::as_string(*it, ctx + ".visibility"), points);
            const auto n = static_cast<std::size_t>(std::count(c.visibility.begin(), c.visibility.end(), 1));
            if (n != c.visible_count)
                fail(ErrorCode::FormatError, ctx + ": visible_count disagrees with the visibility mask");
        }
        out.push_back(std::move(c));
    }
    if (out.empty())
        fail(ErrorCode::FormatError, source + ": field 'candidates': empty");
    return out;
}

void save_candidates(const std::vector<CandidateSite> &candidates, std::size_t grid_points, double boundary_margin,
                     bool include_mask, const std::filesystem::path &path)
{
    detail::write_text_file(path, candidates_to_string(candidates, grid_points, boundary_margin, include_mask));
}

std::vector<CandidateSite> load_candidates(const std::filesystem::path &path)
{
    return candidates_from_string(detail::read_text_file(path), path.string());
}

} // namespace mmsite
