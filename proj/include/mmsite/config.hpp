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

#ifndef MMSITE_CONFIG_HPP
#define MMSITE_CONFIG_HPP

#include "mmsite/bandit.hpp"
#include "mmsite/channel.hpp"
#include "mmsite/terrain.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace mmsite
{

struct PolicyConfig
{
    std::string name = "eps-greedy";
    double epsilon = 0.2;
    double eps0 = 1.0;
    double t_half = 100.0;
    double tau = 0.05;
    double ucb_c = 1.0;

    Policy make() const;

    friend bool operator==(const PolicyConfig &, const PolicyConfig &) = default;
};

// Everything a run needs. Serialized as a JSON document; see README for the schema.
struct RunConfig
{
    std::optional<UrbanGenConfig> environment; // generate the scene...
    std::optional<std::string> dem;            // ...or load it (path)
    std::optional<std::string> candidates;     // optional candidates file (path)
    double boundary_margin = 0.0;
    double mast_height = 0.5;
    LinkBudget budget;
    PolicyConfig policy;
    std::uint64_t iterations = 1000;
    std::uint64_t episodes = 50;
    std::uint64_t seed = 1;
    std::uint64_t oracle_samples = 10000;
    std::uint64_t window = 50;
    unsigned threads = 0; // not part of the hash: results do not depend on it

    // Relative dem/candidates paths resolve against this directory.
    std::filesystem::path base_dir;

    // Range checks; throws Error(ConfigInvalid) naming the field.
    void validate() const;

    std::filesystem::path resolve(const std::string &path) const;

    friend bool operator==(const RunConfig &, const RunConfig &) = default;
};

// Parses a config document; unknown keys are rejected. `overrides` (JSON
// object, may be empty) is merge-patched on top of the file before parsing.
RunConfig config_from_string(std::string_view text, std::string_view overrides = {},
                             const std::filesystem::path &base_dir = {});
RunConfig load_config(const std::filesystem::path &path, std::string_view overrides = {});

// Canonical JSON form (keys sorted, threads and base_dir omitted).
std::string config_to_string(const RunConfig &config);

// FNV-1a 64 of the canonical form, as 16 hex digits.
std::string config_hash(const RunConfig &config);

UrbanGenConfig urban_config_from_string(std::string_view text, const std::string &source = "<memory>");

} // namespace mmsite

#endif
