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

#include "mmsite/config.hpp"

#include "mmsite/error.hpp"

#include "file_util.hpp"
#include "json_util.hpp"

#include <cmath>
#include <cstdio>
#include <initializer_list>

namespace mmsite
{

using detail::json;

namespace
{

void only_keys(const json &obj, std::initializer_list<const char *> allowed, const std::string &ctx)
{
    if (!obj.is_object())
        fail(ErrorCode::ConfigInvalid, ctx + ": expected an object");
    for (const auto &item : obj.items())
    {
        bool ok = false;
        for (const char *k : allowed)
            ok = ok || item.key() == k;
        if (!ok)
            fail(ErrorCode::ConfigInvalid, ctx + ": unknown field '" + item.key() + "'");
    }
}

double number(const json &obj, const char *key, double fallback, const std::string &ctx)
{
    auto it = obj.find(key);
    if (it == obj.end())
        return fallback;
    if (!it->is_number())
        fail(ErrorCode::ConfigInvalid, ctx + "." + key + ": expected a number");
    return it->get<double>();
}

std::uint64_t unsigned_int(const json &obj, const char *key, std::uint64_t fallback, const std::string &ctx)
{
    auto it = obj.find(key);
    if (it == obj.end())
        return fallback;
    if (!it->is_number_integer() || (it->is_number_integer() && !it->is_number_unsigned()))
        fail(ErrorCode::ConfigInvalid, ctx + "." + key + ": expected a non-negative integer");
    return it->get<std::uint64_t>();
}

Range range(const json &obj, const char *key, Range fallback, const std::string &ctx)
{
    auto it = obj.find(key);
    if (it == obj.end())
        return fallback;
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number())
        fail(ErrorCode::ConfigInvalid, ctx + "." + key + ": expected [min, max]");
    return {(*it)[0].get<double>(), (*it)[1].get<double>()};
}

std::optional<std::string> string_field(const json &obj, const char *key, const std::string &ctx)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
        return std::nullopt;
    if (!it->is_string())
        fail(ErrorCode::ConfigInvalid, ctx + "." + key + ": expected a string");
    return it->get<std::string>();
}

UrbanGenConfig parse_environment(const json &j, const std::string &ctx)
{
    only_keys(j,
              {"area_width", "area_depth", "building_height_range", "building_width_range", "building_count",
               "boundary_clearance", "min_separation", "resolution", "seed"},
              ctx);
    UrbanGenConfig c;
    c.area_width = number(j, "area_width", c.area_width, ctx);
    c.area_depth = number(j, "area_depth", c.area_depth, ctx);
    c.building_height = range(j, "building_height_range", c.building_height, ctx);
    c.building_width = range(j, "building_width_range", c.building_width, ctx);
    const auto count = unsigned_int(j, "building_count", static_cast<std::uint64_t>(c.building_count), ctx);
    if (count > 100000)
        fail(ErrorCode::ConfigInvalid, ctx + ".building_count: too large");
    c.building_count = static_cast<int>(count);
    c.boundary_clearance = number(j, "boundary_clearance", c.boundary_clearance, ctx);
    c.min_separation = number(j, "min_separation", c.min_separation, ctx);
    c.resolution = number(j, "resolution", c.resolution, ctx);
    c.seed = unsigned_int(j, "seed", c.seed, ctx);
    return c;
}

json environment_to_json(const UrbanGenConfig &c)
{
    return {{"area_width", c.area_width},
            {"area_depth", c.area_depth},
            {"building_height_range", {c.building_height.min, c.building_height.max}},
            {"building_width_range", {c.building_width.min, c.building_width.max}},
            {"building_count", c.building_count},
            {"boundary_clearance", c.boundary_clearance},
            {"min_separation", c.min_separation},
            {"resolution", c.resolution},
            {"seed", c.seed}};
}

json parse_document(std::string_view text, const std::string &source)
{
    try
    {
        return detail::parse_json(text, source);
    }
    catch (const Error &e)
    {
        fail(ErrorCode::ConfigInvalid, e.what());
    }
}

} // namespace

Policy PolicyConfig::make() const
{
    Policy p;
    if (name == "eps-greedy")
        p = EpsGreedy{epsilon};
    else if (name == "decayed-eps")
        p = DecayedEpsGreedy{eps0, t_half};
    else if (name == "softmax")
        p = Softmax{tau};
    else if (name == "ucb1")
        p = Ucb1{ucb_c};
    else
        fail(ErrorCode::ConfigInvalid,
             "policy '" + name + "' is not one of eps-greedy, decayed-eps, softmax, ucb1");
    try
    {
        validate_policy(p);
    }
    catch (const Error &e)
    {
        fail(ErrorCode::ConfigInvalid, e.what());
    }
    return p;
}

void RunConfig::validate() const
{
    auto require = [](bool ok, const std::string &msg) {
        if (!ok)
            fail(ErrorCode::ConfigInvalid, msg);
    };
    require(environment.has_value() != dem.has_value(), "exactly one of 'environment' or 'dem' must be given");
    if (environment)
        environment->validate();
    require(std::isfinite(boundary_margin) && boundary_margin >= 0.0, "boundary_margin must be >= 0");
    require(std::isfinite(mast_height) && mast_height >= 0.0, "mast_height must be >= 0");
    budget.validate();
    policy.make();
    require(iterations >= 1, "iterations must be >= 1");
    require(episodes >= 1, "episodes must be >= 1");
    require(oracle_samples >= 1, "oracle_samples must be >= 1");
    require(window >= 1, "window must be >= 1");
    require(iterations <= 100000000 && episodes <= 1000000, "iterations/episodes out of range");
}

std::filesystem::path RunConfig::resolve(const std::string &path) const
{
    std::filesystem::path p(path);
    if (p.is_absolute() || base_dir.empty())
        return p;
    return base_dir / p;
}

RunConfig config_from_string(std::string_view text, std::string_view overrides, const std::filesystem::path &base_dir)
{
    json j = parse_document(text, "config");
    if (!j.is_object())
        fail(ErrorCode::ConfigInvalid, "config: expected a JSON object");
    if (!overrides.empty())
    {
        const json patch = parse_document(overrides, "overrides");
        j.merge_patch(patch);
    }
    only_keys(j,
              {"environment", "dem", "candidates", "boundary_margin", "mast_height", "budget", "policy", "iterations",
               "episodes", "seed", "oracle_samples", "window", "threads"},
              "config");

    RunConfig c;
    c.base_dir = base_dir;
    if (auto it = j.find("environment"); it != j.end() && !it->is_null())
        c.environment = parse_environment(*it, "config.environment");
    c.dem = string_field(j, "dem", "config");
    c.candidates = string_field(j, "candidates", "config");
    c.boundary_margin = number(j, "boundary_margin", c.boundary_margin, "config");
    c.mast_height = number(j, "mast_height", c.mast_height, "config");
    if (auto it = j.find("budget"); it != j.end())
    {
        only_keys(*it, {"fc_ghz", "sigma_los", "sigma_nlos", "max_path_loss", "h_ut"}, "config.budget");
        c.budget.fc_ghz = number(*it, "fc_ghz", c.budget.fc_ghz, "config.budget");
        c.budget.sigma_los = number(*it, "sigma_los", c.budget.sigma_los, "config.budget");
        c.budget.sigma_nlos = number(*it, "sigma_nlos", c.budget.sigma_nlos, "config.budget");
        c.budget.max_path_loss = number(*it, "max_path_loss", c.budget.max_path_loss, "config.budget");
        c.budget.h_ut = number(*it, "h_ut", c.budget.h_ut, "config.budget");
    }
    if (auto it = j.find("policy"); it != j.end())
    {
        only_keys(*it, {"name", "epsilon", "eps0", "t_half", "tau", "ucb_c"}, "config.policy");
        if (auto name = string_field(*it, "name", "config.policy"))
            c.policy.name = *name;
        c.policy.epsilon = number(*it, "epsilon", c.policy.epsilon, "config.policy");
        c.policy.eps0 = number(*it, "eps0", c.policy.eps0, "config.policy");
        c.policy.t_half = number(*it, "t_half", c.policy.t_half, "config.policy");
        c.policy.tau = number(*it, "tau", c.policy.tau, "config.policy");
        c.policy.ucb_c = number(*it, "ucb_c", c.policy.ucb_c, "config.policy");
    }
    c.iterations = unsigned_int(j, "iterations", c.iterations, "config");
    c.episodes = unsigned_int(j, "episodes", c.episodes, "config");
    c.seed = unsigned_int(j, "seed", c.seed, "config");
    c.oracle_samples = unsigned_int(j, "oracle_samples", c.oracle_samples, "config");
    c.window = unsigned_int(j, "window", c.window, "config");
    const auto threads = unsigned_int(j, "threads", c.threads, "config");
    if (threads > 4096)
        fail(ErrorCode::ConfigInvalid, "config.threads: too large");
    c.threads = static_cast<unsigned>(threads);
    c.validate();
    return c;
}

RunConfig load_config(const std::filesystem::path &path, std::string_view overrides)
{
    std::string text;
    try
    {
        text = detail::read_text_file(path);
    }
    catch (const Error &e)
    {
        fail(ErrorCode::ConfigInvalid, std::string("config file: ") + e.what());
    }
    return config_from_string(text, overrides, path.parent_path());
}

std::string config_to_string(const RunConfig &c)
{
    json j;
    if (c.environment)
        j["environment"] = environment_to_json(*c.environment);
    if (c.dem)
        j["dem"] = *c.dem;
    if (c.candidates)
        j["candidates"] = *c.candidates;
    j["boundary_margin"] = c.boundary_margin;
    j["mast_height"] = c.mast_height;
    j["budget"] = {{"fc_ghz", c.budget.fc_ghz},
                   {"sigma_los", c.budget.sigma_los},
                   {"sigma_nlos", c.budget.sigma_nlos},
                   {"max_path_loss", c.budget.max_path_loss},
                   {"h_ut", c.budget.h_ut}};
    j["policy"] = {{"name", c.policy.name}, {"epsilon", c.policy.epsilon}, {"eps0", c.policy.eps0},
                   {"t_half", c.policy.t_half}, {"tau", c.policy.tau}, {"ucb_c", c.policy.ucb_c}};
    j["iterations"] = c.iterations;
    j["episodes"] = c.episodes;
    j["seed"] = c.seed;
    j["oracle_samples"] = c.oracle_samples;
    j["window"] = c.window;
    return j.dump(2) + "\n";
}

std::string config_hash(const RunConfig &config)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : config_to_string(config))
    {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

UrbanGenConfig urban_config_from_string(std::string_view text, const std::string &source)
{
    const json j = parse_document(text, source);
    UrbanGenConfig c = j.is_object() && j.contains("environment")
                           ? parse_environment(j.at("environment"), source + ".environment")
                           : parse_environment(j, source);
    c.validate();
    return c;
}

} // namespace mmsite
