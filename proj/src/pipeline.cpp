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

#include "mmsite/pipeline.hpp"

#include "mmsite/error.hpp"
#include "mmsite/io.hpp"

#include "file_util.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

namespace mmsite
{

namespace fs = std::filesystem;

namespace
{

std::string preamble(const char *artifact, const std::string &hash, const std::string &extra = {})
{
    std::string s = std::string("# mmsite ") + artifact + " config_hash=" + hash;
    if (!extra.empty())
        s += " " + extra;
    return s + "\n";
}

void ensure_dir(const fs::path &dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        fail(ErrorCode::IOFailure, "cannot create output directory '" + dir.string() + "'");
}

using detail::write_text_file;
const auto num = format_number;

} // namespace

Scenario scenario_from_config(const RunConfig &config)
{
    config.validate();
    ElevationModel dem = config.environment ? generate_environment(*config.environment)
                                            : load_dem(config.resolve(*config.dem));
    if (config.candidates)
        return build_scenario(std::move(dem), load_candidates(config.resolve(*config.candidates)), config.budget);
    return build_scenario(std::move(dem), ScenarioParams{config.boundary_margin, config.mast_height, config.budget});
}

void write_training_artifacts(const ExperimentSummary &summary, const Scenario &scenario, const std::string &hash,
                              const fs::path &dir)
{
    ensure_dir(dir);
    {
        std::string s = preamble("rewards", hash) + "iteration,mean_reward\n";
        for (std::size_t it = 0; it < summary.iterations; ++it)
            s += std::to_string(it + 1) + "," + num(summary.mean_reward_curve[it]) + "\n";
        write_text_file(dir / kRewardsCsv, s);
    }
    {
        std::string s = preamble("selections", hash, "window=" + std::to_string(summary.window)) +
                        "window_start,window_end";
        for (std::size_t a = 0; a < summary.arms; ++a)
            s += ",arm_" + std::to_string(a);
        s += "\n";
        for (std::size_t w = 0; w < summary.selection_frequency.size(); ++w)
        {
            const std::size_t first = w * summary.window + 1;
            const std::size_t last = std::min(summary.iterations, (w + 1) * summary.window);
            s += std::to_string(first) + "," + std::to_string(last);
            for (double f : summary.selection_frequency[w])
                s += "," + num(f);
            s += "\n";
        }
        write_text_file(dir / kSelectionsCsv, s);
    }
    {
        std::string s = preamble("q_final", hash, "episodes=" + std::to_string(summary.episodes)) +
                        "arm,x,y,z,final_q,mean_pulls,visible_count\n";
        for (std::size_t a = 0; a < summary.arms; ++a)
        {
            const auto &c = scenario.candidates[a];
            s += std::to_string(a) + "," + num(c.position.x) + "," + num(c.position.y) + "," + num(c.position.z) +
                 "," + num(summary.final_q[a]) + "," + num(summary.mean_pulls[a]) + "," +
                 std::to_string(c.visible_count) + "\n";
        }
        write_text_file(dir / kQFinalCsv, s);
    }
    {
        const std::size_t arm = summary.best_arm;
        const CoverageMaps maps = coverage_maps(summary, arm, scenario.budget);
        const PathLossField &field = scenario.fields[arm];
        std::string s = preamble("coverage_map", hash, "arm=" + std::to_string(arm)) +
                        "x,y,delta,mean_loss_db,sigma_db,mean_gain_db,mean_gain_covered,coverage_prob,fuzzy\n";
        for (std::size_t i = 0; i < scenario.grid.size(); ++i)
        {
            const Point3 &p = scenario.grid.points[i];
            s += num(p.x) + "," + num(p.y) + "," + std::to_string(field.link_state[i]) + "," +
                 num(field.mean_loss[i]) + "," + num(field.sigma[i]) + "," + num(maps.mean_gain_db[i]) + "," +
                 std::to_string(maps.mean_gain_covered[i]) + "," + num(maps.coverage_prob[i]) + "," +
                 std::to_string(maps.fuzzy[i]) + "\n";
        }
        write_text_file(dir / kCoverageMapCsv, s);
    }
}

void write_oracle_csv(const OracleResult &oracle, const std::string &hash, const fs::path &path)
{
    std::string s = preamble("oracle", hash, "samples=" + std::to_string(oracle.samples)) +
                    "arm,monte_carlo,std_error,closed_form\n";
    for (std::size_t a = 0; a < oracle.monte_carlo.size(); ++a)
        s += std::to_string(a) + "," + num(oracle.monte_carlo[a]) + "," + num(oracle.std_error[a]) + "," +
             num(oracle.closed_form[a]) + "\n";
    write_text_file(path, s);
}

void write_field_csv(const Scenario &scenario, std::size_t arm, const std::string &hash, const fs::path &path)
{
    if (arm >= scenario.arms())
        fail(ErrorCode::InvalidArgument, "arm index out of range");
    const PathLossField &f = scenario.fields[arm];
    std::string s = preamble("field", hash, "arm=" + std::to_string(arm)) + "x,y,delta,mean_loss_db,sigma_db\n";
    for (std::size_t i = 0; i < scenario.grid.size(); ++i)
        s += num(scenario.grid.points[i].x) + "," + num(scenario.grid.points[i].y) + "," +
             std::to_string(f.link_state[i]) + "," + num(f.mean_loss[i]) + "," + num(f.sigma[i]) + "\n";
    write_text_file(path, s);
}

void cmd_gen_env(const UrbanGenConfig &config, const fs::path &out)
{
    save_dem(generate_environment(config), out);
}

void cmd_candidates(const fs::path &dem_path, double margin, double rx_height, double mast_height, bool include_mask,
                    const fs::path &out)
{
    const ElevationModel dem = load_dem(dem_path);
    const ServiceGrid grid = derive_service_grid(dem, rx_height);
    const auto edges = enumerate_rooftop_edge_points(dem, mast_height);
    const auto candidates = select_candidates(dem, edges, grid, margin);
    save_candidates(candidates, grid.size(), margin, include_mask, out);
}

ExperimentSummary cmd_train(const RunConfig &config, const fs::path &out_dir, bool dump_fields)
{
    config.validate();
    const Scenario scenario = scenario_from_config(config);
    const std::string hash = config_hash(config);
    ExperimentOptions opts;
    opts.iterations = config.iterations;
    opts.episodes = config.episodes;
    opts.base_seed = config.seed;
    opts.window = config.window;
    opts.threads = config.threads;
    ExperimentSummary summary = run_experiment(scenario, config.policy.make(), opts);
    write_training_artifacts(summary, scenario, hash, out_dir);
    if (dump_fields)
        for (std::size_t a = 0; a < scenario.arms(); ++a)
            write_field_csv(scenario, a, hash, out_dir / ("field_" + std::to_string(a) + ".csv"));
    return summary;
}

OracleResult cmd_oracle(const RunConfig &config, const fs::path &out_dir)
{
    config.validate();
    const Scenario scenario = scenario_from_config(config);
    OracleResult r = brute_force_oracle(scenario, config.oracle_samples, config.seed, config.threads);
    if (!out_dir.empty())
    {
        ensure_dir(out_dir);
        write_oracle_csv(r, config_hash(config), out_dir / kOracleCsv);
    }
    return r;
}

void cmd_pipeline(const RunConfig &config, const fs::path &out_dir)
{
    config.validate();
    ensure_dir(out_dir);
    const std::string hash = config_hash(config);
    const Scenario scenario = scenario_from_config(config);

    write_text_file(out_dir / "config.json", config_to_string(config));
    save_dem(scenario.dem, out_dir / "dem.json");
    save_candidates(scenario.candidates, scenario.grid.size(), config.boundary_margin, true,
                    out_dir / "candidates.json");

    ExperimentOptions opts;
    opts.iterations = config.iterations;
    opts.episodes = config.episodes;
    opts.base_seed = config.seed;
    opts.window = config.window;
    opts.threads = config.threads;
    const ExperimentSummary summary = run_experiment(scenario, config.policy.make(), opts);
    write_training_artifacts(summary, scenario, hash, out_dir);

    const OracleResult oracle = brute_force_oracle(scenario, config.oracle_samples, config.seed, config.threads);
    write_oracle_csv(oracle, hash, out_dir / kOracleCsv);
}

// ---------- report ----------

namespace
{

struct Csv
{
    std::string hash;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string &name, const fs::path &file) const
    {
        auto it = std::find(columns.begin(), columns.end(), name);
        if (it == columns.end())
            fail(ErrorCode::FormatError, file.string() + ": missing column '" + name + "'");
        return static_cast<std::size_t>(it - columns.begin());
    }

    double number(std::size_t row, std::size_t col, const fs::path &file) const
    {
        try
        {
            std::size_t used = 0;
            const double v = std::stod(rows.at(row).at(col), &used);
            if (used != rows[row][col].size())
                throw std::invalid_argument("trailing characters");
            return v;
        }
        catch (const std::exception &)
        {
            fail(ErrorCode::FormatError, file.string() + ": row " + std::to_string(row + 3) + ", column " +
                                             std::to_string(col + 1) + ": not a number");
        }
    }
};

std::vector<std::string> split(const std::string &line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    return out;
}

Csv read_csv(const fs::path &file)
{
    std::istringstream in(detail::read_text_file(file));
    Csv csv;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# mmsite ", 0) != 0)
        fail(ErrorCode::FormatError, file.string() + ": line 1: expected '# mmsite' preamble");
    const auto pos = line.find("config_hash=");
    if (pos == std::string::npos)
        fail(ErrorCode::FormatError, file.string() + ": line 1: missing config_hash");
    csv.hash = line.substr(pos + 12, 16);
    if (!std::getline(in, line))
        fail(ErrorCode::FormatError, file.string() + ": line 2: missing column header");
    csv.columns = split(line);
    std::size_t lineno = 2;
    while (std::getline(in, line))
    {
        ++lineno;
        if (line.empty())
            continue;
        auto cells = split(line);
        if (cells.size() != csv.columns.size())
            fail(ErrorCode::FormatError, file.string() + ": line " + std::to_string(lineno) + ": expected " +
                                             std::to_string(csv.columns.size()) + " fields");
        csv.rows.push_back(std::move(cells));
    }
    return csv;
}

std::string fixed(double v, int digits = 4)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

} // namespace

std::string cmd_report(const fs::path &run_dir)
{
    std::vector<std::string> missing;
    for (const char *name : {kRewardsCsv, kSelectionsCsv, kQFinalCsv, kCoverageMapCsv})
        if (!fs::is_regular_file(run_dir / name))
            missing.push_back(name);
    if (!missing.empty())
    {
        std::string list;
        for (const auto &m : missing)
            list += (list.empty() ? "" : ", ") + m;
        fail(ErrorCode::MissingArtifacts, "run directory '" + run_dir.string() + "' lacks: " + list);
    }

    const Csv q = read_csv(run_dir / kQFinalCsv);
    const Csv rewards = read_csv(run_dir / kRewardsCsv);
    const Csv cov = read_csv(run_dir / kCoverageMapCsv);
    const bool has_oracle = fs::is_regular_file(run_dir / kOracleCsv);
    const Csv oracle = has_oracle ? read_csv(run_dir / kOracleCsv) : Csv{};

    const auto qf = q.column("final_q", kQFinalCsv);
    const auto qp = q.column("mean_pulls", kQFinalCsv);
    const auto qx = q.column("x", kQFinalCsv);
    const auto qy = q.column("y", kQFinalCsv);
    const auto qz = q.column("z", kQFinalCsv);
    const std::size_t arms = q.rows.size();
    if (arms == 0)
        fail(ErrorCode::FormatError, std::string(kQFinalCsv) + ": no arms");
    if (has_oracle && oracle.rows.size() != arms)
        fail(ErrorCode::FormatError, std::string(kOracleCsv) + ": arm count differs from q_final.csv");

    std::ostringstream out;
    out << "run directory: " << run_dir.string() << "\n";
    out << "config hash:   " << q.hash << "\n";
    bool hashes_agree = rewards.hash == q.hash && cov.hash == q.hash && (!has_oracle || oracle.hash == q.hash);
    if (!hashes_agree)
        out << "warning: artifacts carry different config hashes\n";
    out << "arms:          " << arms << "\n\n";

    out << "# final Q table\n";
    out << "# arm x y z final_q mean_pulls" << (has_oracle ? " oracle_mc oracle_closed_form" : "") << "\n";
    std::vector<double> final_q(arms), mc(arms);
    for (std::size_t a = 0; a < arms; ++a)
    {
        final_q[a] = q.number(a, qf, kQFinalCsv);
        out << a << " " << fixed(q.number(a, qx, kQFinalCsv), 1) << " " << fixed(q.number(a, qy, kQFinalCsv), 1)
            << " " << fixed(q.number(a, qz, kQFinalCsv), 2) << " " << fixed(final_q[a]) << " "
            << fixed(q.number(a, qp, kQFinalCsv), 1);
        if (has_oracle)
        {
            mc[a] = oracle.number(a, oracle.column("monte_carlo", kOracleCsv), kOracleCsv);
            out << " " << fixed(mc[a]) << " "
                << fixed(oracle.number(a, oracle.column("closed_form", kOracleCsv), kOracleCsv));
        }
        out << "\n";
    }
    const auto best = static_cast<std::size_t>(std::max_element(final_q.begin(), final_q.end()) - final_q.begin());
    out << "\nbest arm: " << best << " (final_q " << fixed(final_q[best]) << ")\n";
    if (has_oracle)
    {
        const auto ob = static_cast<std::size_t>(std::max_element(mc.begin(), mc.end()) - mc.begin());
        out << "oracle best arm: " << ob << " (" << (ob == best ? "agrees" : "DISAGREES") << ")\n";
    }

    const auto rc = rewards.column("mean_reward", kRewardsCsv);
    const std::size_t iters = rewards.rows.size();
    const std::size_t span = std::min<std::size_t>(100, iters);
    double head = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < span; ++i)
    {
        head += rewards.number(i, rc, kRewardsCsv);
        tail += rewards.number(iters - span + i, rc, kRewardsCsv);
    }
    if (span > 0)
        out << "mean reward: first " << span << " iterations " << fixed(head / static_cast<double>(span))
            << ", last " << span << " iterations " << fixed(tail / static_cast<double>(span)) << "\n";

    const auto cp = cov.column("coverage_prob", kCoverageMapCsv);
    const auto fz = cov.column("fuzzy", kCoverageMapCsv);
    const auto mg = cov.column("mean_gain_covered", kCoverageMapCsv);
    const auto dl = cov.column("delta", kCoverageMapCsv);
    std::size_t fuzzy = 0, gain_cov = 0, fuzzy_gain = 0, los = 0;
    double prob = 0.0;
    for (std::size_t i = 0; i < cov.rows.size(); ++i)
    {
        const bool f = cov.number(i, fz, kCoverageMapCsv) != 0.0;
        const bool g = cov.number(i, mg, kCoverageMapCsv) != 0.0;
        prob += cov.number(i, cp, kCoverageMapCsv);
        fuzzy += f;
        gain_cov += g;
        fuzzy_gain += f && g;
        los += cov.number(i, dl, kCoverageMapCsv) != 0.0;
    }
    const double n = static_cast<double>(std::max<std::size_t>(1, cov.rows.size()));
    out << "\n# coverage statistics (coverage_map.csv)\n";
    out << "grid points:                 " << cov.rows.size() << "\n";
    out << "visible (LoS) points:        " << los << " (" << fixed(100.0 * static_cast<double>(los) / n, 1) << "%)\n";
    out << "mean coverage probability:   " << fixed(prob / n) << "\n";
    out << "covered by mean-gain map:    " << gain_cov << " (" << fixed(100.0 * static_cast<double>(gain_cov) / n, 1)
        << "%)\n";
    out << "fuzzy points (0 < p < 1):    " << fuzzy << "\n";
    out << "fuzzy but mean-gain covered: " << fuzzy_gain << "\n";
    return out.str();
}

} // namespace mmsite
