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
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "ptwalk/config.hpp"
#include "ptwalk/errors.hpp"
#include "ptwalk/experiments.hpp"
#include "ptwalk/walk.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

bool is_input_error(ptwalk::ErrorCode c) {
  return c == ptwalk::ErrorCode::ConfigInvalid || c == ptwalk::ErrorCode::LightConeViolation ||
         c == ptwalk::ErrorCode::MissingArtifacts;
}

int cmd_run(const std::string& config_path, const std::optional<std::string>& out,
            const std::optional<std::uint64_t>& seed, const std::optional<std::string>& study,
            const std::optional<int>& threads) {
  ptwalk::ExperimentConfig cfg = ptwalk::load_config(config_path);
  if (seed) cfg.master_seed = *seed;
  if (study) cfg.study = ptwalk::parse_study(*study);
  if (threads) cfg.threads = *threads;
  cfg.output_dir = ptwalk::resolve_output_dir(out, cfg);
  cfg.validate();

  const ptwalk::RunResult res = ptwalk::run(cfg);
  for (const auto& c : res.cells) {
    std::cout << std::left << std::setw(22) << ptwalk::cell_name(c.exp_gamma, c.metric) << ' '
              << std::setw(8) << c.status;
    if (c.status == "ok") {
      std::cout << " N_max=" << c.n_max << " I_RHP=" << c.final_rhp << " S=" << c.final_entropy;
      if (c.ill_conditioned_steps > 0) std::cout << " ill_conditioned_steps=" << c.ill_conditioned_steps;
    } else {
      std::cout << ' ' << c.message;
    }
    std::cout << '\n';
  }
  if (res.toy_ran) std::cout << "toy " << res.toy_status << '\n';
  std::cout << "wrote " << res.artifacts.size() << " artifacts to " << res.output_dir << '\n';
  return res.any_failed() ? kExitNumerical : kExitOk;
}

int cmd_report(const std::string& dir) {
  const ptwalk::Report rep = ptwalk::report(dir);
  std::cout << rep.text;
  std::ofstream(std::filesystem::path(dir) / "report.txt") << rep.text;
  std::ofstream(std::filesystem::path(dir) / "report.json") << rep.json << '\n';
  return kExitOk;
}

int cmd_gamma_pt(double theta1, double theta2) {
  const double g = ptwalk::gamma_pt(theta1, theta2);
  std::cout << std::setprecision(12) << std::exp(g) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PT-symmetric quantum walk metric study"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> study;
  std::optional<int> threads;
  auto* run = app.add_subcommand("run", "run the configured experiments");
  run->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "output directory (overrides PTWALK_OUTPUT_DIR and the config)");
  run->add_option("--seed", seed, "master seed");
  run->add_option("--study", study, "blp, rhp, entanglement, toy or all");
  run->add_option("--threads", threads, "worker threads, 0 for hardware concurrency")
      ->check(CLI::NonNegativeNumber);

  std::string in_dir;
  auto* rep = app.add_subcommand("report", "summarize a result bundle");
  rep->add_option("--in", in_dir, "bundle directory")->required();

  double theta1 = 0.0;
  double theta2 = 0.0;
  auto* gpt = app.add_subcommand("gamma-pt", "print e^gamma at the PT-breaking point");
  gpt->add_option("--theta1", theta1)->required();
  gpt->add_option("--theta2", theta2)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, out, seed, study, threads);
    if (*rep) return cmd_report(in_dir);
    if (*gpt) return cmd_gamma_pt(theta1, theta2);
  } catch (const ptwalk::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_input_error(e.code()) ? kExitConfig : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}
