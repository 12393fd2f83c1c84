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

#ifndef MMSITE_SRC_JSON_UTIL_HPP
#define MMSITE_SRC_JSON_UTIL_HPP

#include "mmsite/error.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace mmsite::detail
{

using nlohmann::json;

inline json parse_json(std::string_view text, const std::string &source)
{
    try
    {
        return json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        // nlohmann reports "line L, column C" in what().
        fail(ErrorCode::FormatError, source + ": " + e.what());
    }
}

inline const json &require(const json &obj, const char *key, const std::string &ctx)
{
    if (!obj.is_object())
        fail(ErrorCode::FormatError, ctx + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        fail(ErrorCode::FormatError, ctx + ": missing field '" + key + "'");
    return *it;
}

inline double as_number(const json &v, const std::string &field)
{
    if (!v.is_number())
        fail(ErrorCode::FormatError, "field '" + field + "': expected a number");
    return v.get<double>();
}

inline std::uint64_t as_unsigned(const json &v, const std::string &field)
{
    if (!v.is_number_unsigned())
        fail(ErrorCode::FormatError, "field '" + field + "': expected a non-negative integer");
    return v.get<std::uint64_t>();
}

inline std::string as_string(const json &v, const std::string &field)
{
    if (!v.is_string())
        fail(ErrorCode::FormatError, "field '" + field + "': expected a string");
    return v.get<std::string>();
}

} // namespace mmsite::detail

#endif
