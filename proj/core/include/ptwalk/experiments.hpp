// Copyright 2026 The ptwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptwalk/config.hpp"

namespace ptwalk {

struct CellResult {
  double exp_gamma = 1.0;
  std::string metric;
  std::string status = "ok";  // ok, skipped (broken regime), failed
  std::string message;
  double n_max = 0.0;
  double final_rhp = 0.0;
  double final_entropy = 0.0;
  int ill_conditioned_steps = 0;
  double runtime_seconds = 0.0;
};

struct RunResult {
  std::string output_dir;
  std::vector<CellResult> cells;
  bool toy_ran = false;
  std::string toy_status;
  std::vector<std::string> artifacts;  // relative paths listed in the manifest

  bool any_failed() const;
};

// Precedence: explicit argument, then PTWALK_OUTPUT_DIR, then cfg.output_dir.
std::string resolve_output_dir(const std::optional<std::string>& cli_out, const ExperimentConfig& cfg);

// Writes one CSV + JSON summary per (gamma, metric) cell, the toy bundle when
// selected, the resolved config, timing.json and manifest.json. Every file
// except timing.json is byte-identical across reruns and thread counts.
RunResult run(const ExperimentConfig& cfg);

std::string sha256_hex(const std::string& data);

std::string cell_name(double exp_gamma, const std::string& metric);

struct ReportRow {
  std::string study;     // rhp, entanglement, blp, toy
  std::string scope;     // e.g. "e^gamma=1.2"
  std::string quantity;  // e.g. "I_RHP spread"
  double value = 0.0;
  double threshold = 0.0;
  std::string verdict;  // PASS, FAIL, DISTINCT, SIMILAR, INFO
};

struct Report {
  std::vector<ReportRow> rows;
  std::string text;
  std::string json;
  bool any_fail = false;
};

// Throws MissingArtifacts if the directory has no manifest or a listed file is absent.
Report report(const std::string& dir);

}  // namespace ptwalk
