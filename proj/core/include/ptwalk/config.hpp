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

#include <cstdint>
#include <string>
#include <vector>

#include "ptwalk/measures.hpp"
#include "ptwalk/metric.hpp"
#include "ptwalk/toy.hpp"
#include "ptwalk/walk.hpp"

namespace ptwalk {

enum class Study { Blp, Rhp, Entanglement, Toy, All };

Study parse_study(const std::string& name);  // throws ConfigInvalid
std::string to_string(Study s);
bool includes(Study selected, Study s);

struct ExperimentConfig {
  WalkParams walk{0.7853981633974483, -0.4487989505128276, 0.0, 101};  // gamma unused
  std::vector<double> exp_gammas{1.0, 1.2, 1.3};                         // values of e^gamma
  std::vector<MetricSpec> metrics{MetricSpec::flat("G1"), MetricSpec::random_xy(11, "G2"),
                                  MetricSpec::random_xy(23, "G3")};
  int t_max = 50;
  Study study = Study::All;
  std::string output_dir = "results";
  std::uint64_t master_seed = 20240501;
  int threads = 0;  // 0: hardware concurrency
  Vector2c initial_coin{cplx(0.7071067811865476, 0.0), cplx(0.0, 0.7071067811865476)};
  AnnealSchedule anneal;
  ToyConfig toy;

  // Field-level checks; broken-regime gammas are not an error here.
  void validate() const;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& cfg);

// Seed for the annealer of one (gamma, metric) cell.
std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t gamma_index,
                        std::size_t metric_index);

}  // namespace ptwalk
