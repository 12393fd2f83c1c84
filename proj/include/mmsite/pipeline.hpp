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

#ifndef MMSITE_PIPELINE_HPP
#define MMSITE_PIPELINE_HPP

#include "mmsite/config.hpp"
#include "mmsite/harness.hpp"

#include <filesystem>
#include <string>

namespace mmsite
{

// Artifact file names inside a run directory.
inline constexpr const char *kRewardsCsv = "rewards.csv";
inline constexpr const char *kSelectionsCsv = "selections.csv";
inline constexpr const char *kQFinalCsv = "q_final.csv";
inline constexpr const char *kCoverageMapCsv = "coverage_map.csv";
inline constexpr const char *kOracleCsv = "oracle.csv";

// Loads or generates the DEM, then takes candidates from the candidates file
// when one is configured, otherwise selects them with boundary_margin.
Scenario scenario_from_config(const RunConfig &config);

// rewards.csv, selections.csv, q_final.csv and coverage_map.csv (best arm, pooled episodes).
// Every file starts with "# mmsite <artifact> config_hash=<hash>" then a column header row.
void write_training_artifacts(const ExperimentSummary &summary, const Scenario &scenario,
                              const std::string &hash, const std::filesystem::path &dir);
void write_oracle_csv(const OracleResult &oracle, const std::string &hash, const std::filesystem::path &path);
// Per-grid x, y, delta, mean_loss_db, sigma_db of one candidate's field.
void write_field_csv(const Scenario &scenario, std::size_t arm, const std::string &hash,
                     const std::filesystem::path &path);

void cmd_gen_env(const UrbanGenConfig &config, const std::filesystem::path &out);
void cmd_candidates(const std::filesystem::path &dem_path, double margin, double rx_height, double mast_height,
                    bool include_mask, const std::filesystem::path &out);
ExperimentSummary cmd_train(const RunConfig &config, const std::filesystem::path &out_dir, bool dump_fields = false);
// Writes oracle.csv into out_dir unless it is empty.
OracleResult cmd_oracle(const RunConfig &config, const std::filesystem::path &out_dir);
// DEM -> viewshed -> candidates -> training -> oracle; all artifacts under out_dir.
void cmd_pipeline(const RunConfig &config, const std::filesystem::path &out_dir);
// Read-only summary of a run directory. Throws MissingArtifacts listing absent files.
std::string cmd_report(const std::filesystem::path &run_dir);

} // namespace mmsite

#endif
