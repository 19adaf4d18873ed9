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
#include "ptwalk/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

#include <json.hpp>

#include "ptwalk/dynamics.hpp"
#include "ptwalk/errors.hpp"
#include "ptwalk/format.hpp"
#include "ptwalk/measures.hpp"
#include "ptwalk/toy.hpp"

namespace ptwalk {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {


void write_file(const fs::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << data;
}

std::vector<std::string> tolerance_header() {
  return {"tolerance.unitarity=1e-9", "tolerance.trace=1e-10", "tolerance.negative_g_clamp=1e-9",
          "tolerance.pinv_cutoff=1e-12", "tolerance.ill_conditioned=1e12", "entropy_base=2"};
}

struct CellJob {
  std::size_t gamma_index;
  std::size_t metric_index;
};

struct CellOutput {
  CellResult result;
  std::vector<std::pair<std::string, std::string>> files;  // name, contents
};

CellOutput run_cell(const ExperimentConfig& cfg, const CellJob& job) {
  CellOutput out;
  CellResult& res = out.result;
  const double eg = cfg.exp_gammas[job.gamma_index];
  const MetricSpec& spec = cfg.metrics[job.metric_index];
  res.exp_gamma = eg;
  res.metric = spec.label();

  WalkParams p = cfg.walk;
  p.gamma = std::log(eg);
  const std::uint64_t seed = cell_seed(cfg.master_seed, job.gamma_index, job.metric_index);
  const std::string name = cell_name(eg, spec.label());
  const auto start = std::chrono::steady_clock::now();

  json summary{{"cell", name},
               {"exp_gamma", eg},
               {"gamma", p.gamma},
               {"theta1", p.theta1},
               {"theta2", p.theta2},
               {"lattice_size", p.lattice_size},
               {"t_max", cfg.t_max},
               {"study", to_string(cfg.study)},
               {"metric", {{"name", spec.label()}, {"kind", spec.kind_name()}}},
               {"master_seed", cfg.master_seed},
               {"anneal_seed", seed},
               {"entropy_base", 2},
               {"tolerances",
                {{"unitarity", 1e-9},
                 {"trace", 1e-10},
                 {"negative_g_clamp", kNegativeGTolerance},
                 {"pinv_cutoff", kPinvCutoff},
                 {"ill_conditioned", kIllConditionedThreshold}}}};
  if (spec.kind == MetricSpec::Kind::RandomXY) {
    summary["metric"]["seed"] = spec.seed;
    summary["metric"]["lower"] = spec.lower;
    summary["metric"]["upper"] = spec.upper;
  }

  try {
    const EuclideanWalk ew = build_euclidean_walk(p, spec);
    const std::vector<ChannelMatrix> maps = channel_series(ew, cfg.t_max);
    const Matrix2c rho0 = cfg.initial_coin * cfg.initial_coin.adjoint();

    MeasureSeries blp, rhp, ent;
    std::vector<std::string> computed;
    if (includes(cfg.study, Study::Blp)) {
      AnnealSchedule sch = cfg.anneal;
      sch.seed = seed;
      const BlpOptimum opt = maximize_blp(maps, sch);
      blp = opt.series;
      res.n_max = opt.n_max;
      summary["N_max"] = opt.n_max;
      summary["baseline_best"] = opt.baseline_best;
      summary["best_pair"] = {{"r", {opt.pair.r(0), opt.pair.r(1), opt.pair.r(2)}},
                              {"s", {opt.pair.s(0), opt.pair.s(1), opt.pair.s(2)}}};
      computed.push_back("blp");
    }
    if (includes(cfg.study, Study::Rhp)) {
      rhp = rhp_series(maps);
      res.final_rhp = rhp.rows.back().rhp;
      for (const auto& r : rhp.rows) {
        if (r.flags & kFlagIllConditioned) ++res.ill_conditioned_steps;
      }
      summary["final_I_RHP"] = res.final_rhp;
      summary["ill_conditioned_steps"] = res.ill_conditioned_steps;
      out.files.emplace_back("channels_" + name + ".json", channels_json(maps));
      computed.push_back("rhp");
    }
    if (includes(cfg.study, Study::Entanglement)) {
      ent = entanglement_series(ew, rho0, cfg.t_max);
      res.final_entropy = ent.rows.back().entropy;
      summary["final_S"] = res.final_entropy;
      summary["impure_initial"] = (ent.rows.front().flags & kFlagImpureInitial) != 0;
      computed.push_back("entanglement");
    }
    summary["unitarity_defect"] = unitarity_defect(ew);

    std::vector<std::string> header = {"cell=" + name,
                                       "exp_gamma=" + fmt_double(eg),
                                       "metric=" + spec.label(),
                                       "metric_kind=" + spec.kind_name(),
                                       "anneal_seed=" + std::to_string(seed),
                                       "master_seed=" + std::to_string(cfg.master_seed)};
    if (spec.kind == MetricSpec::Kind::RandomXY) header.push_back("metric_seed=" + std::to_string(spec.seed));
    std::string cols;
    for (const auto& c : computed) cols += (cols.empty() ? "" : ",") + c;
    header.push_back("computed=" + cols);
    for (auto& h : tolerance_header()) header.push_back(h);
    out.files.emplace_back("series_" + name + ".csv", series_csv(merge_series(blp, rhp, ent), header));
    summary["status"] = "ok";
  } catch (const Error& e) {
    res.status = e.code() == ErrorCode::BrokenRegime ? "skipped" : "failed";
    res.message = e.what();
    summary["status"] = res.status;
    summary["message"] = res.message;
  }
  out.files.emplace_back("summary_" + name + ".json", summary.dump(2));
  res.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

bool RunResult::any_failed() const {
  for (const auto& c : cells) {
    if (c.status == "failed") return true;
  }
  return toy_status == "failed";
}

std::string resolve_output_dir(const std::optional<std::string>& cli_out, const ExperimentConfig& cfg) {
  if (cli_out && !cli_out->empty()) return *cli_out;
  if (const char* env = std::getenv("PTWALK_OUTPUT_DIR"); env != nullptr && *env != '\0') return env;
  return cfg.output_dir;
}

std::string cell_name(double exp_gamma, const std::string& metric) {
  return "eg" + fmt_double(exp_gamma) + "_" + metric;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("sha256 failed");
  }
  EVP_MD_CTX_free(ctx);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return os.str();
}

RunResult run(const ExperimentConfig& cfg) {
  cfg.validate();
  RunResult result;
  result.output_dir = cfg.output_dir;
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);

  std::vector<std::pair<std::string, std::string>> files;
  // thread count and location do not affect results; keep them out of the bundle
  ExperimentConfig recorded = cfg;
  recorded.threads = 0;
  recorded.output_dir = ".";
  files.emplace_back("config.json", config_to_json(recorded));

  std::vector<CellJob> jobs;
  if (cfg.study != Study::Toy) {
    for (std::size_t g = 0; g < cfg.exp_gammas.size(); ++g) {
      for (std::size_t m = 0; m < cfg.metrics.size(); ++m) jobs.push_back({g, m});
    }
  }
  std::vector<CellOutput> outputs(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) outputs[i] = run_cell(cfg, jobs[i]);
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads =
      std::min<std::size_t>(jobs.size(), cfg.threads > 0 ? static_cast<std::size_t>(cfg.threads) : hw);
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  json timing = json::object();
  for (auto& o : outputs) {
    timing[cell_name(o.result.exp_gamma, o.result.metric)] = o.result.runtime_seconds;
    for (auto& f : o.files) files.push_back(std::move(f));
    result.cells.push_back(std::move(o.result));
  }

  if (includes(cfg.study, Study::Toy)) {
    const auto start = std::chrono::steady_clock::now();
    json summary;
    try {
      const ToyResult toy = run_toy(cfg.toy);
      json runs = json::array();
      for (const auto& r : toy.runs) {
        double dev = 0.0;
        for (double s : r.entropy) dev = std::max(dev, std::abs(s - 1.0));
        runs.push_back({{"name", r.name},
                        {"product", r.product},
                        {"realignment_defect", r.defect},
                        {"pseudo_hermiticity_residual", r.pseudo_hermiticity},
                        {"max_abs_S_minus_1", dev}});
      }
      summary = {{"status", "ok"},
                 {"variant", cfg.toy.variant == ToyConfig::Variant::PtPhase ? "pt_phase" : "as_printed"},
                 {"generator", cfg.toy.generator == ToyConfig::Generator::LocalSum ? "local_sum" : "kronecker"},
                 {"dt", cfg.toy.dt},
                 {"t_max", cfg.toy.t_max},
                 {"nonproduct_strength", cfg.toy.nonproduct_strength},
                 {"entropy_base", 2},
                 {"runs", runs}};
      files.emplace_back("toy.csv", toy_csv(toy, {"study=toy", "time=continuous", "dt=" + fmt_double(cfg.toy.dt),
                                                  "t_max=" + fmt_double(cfg.toy.t_max), "entropy_base=2"}));
      result.toy_status = "ok";
    } catch (const Error& e) {
      summary = {{"status", "failed"}, {"message", e.what()}};
      result.toy_status = "failed";
    }
    files.emplace_back("toy.json", summary.dump(2));
    result.toy_ran = true;
    timing["toy"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  json artifacts = json::array();
  for (const auto& [name, data] : files) {
    write_file(dir / name, data);
    artifacts.push_back({{"path", name}, {"sha256", sha256_hex(data)}, {"bytes", data.size()}});
    result.artifacts.push_back(name);
  }
  json cells = json::array();
  for (const auto& c : result.cells) {
    json cell{{"cell", cell_name(c.exp_gamma, c.metric)}, {"exp_gamma", c.exp_gamma},
              {"metric", c.metric}, {"status", c.status}};
    if (!c.message.empty()) cell["message"] = c.message;
    cells.push_back(cell);
  }
  const json manifest{{"format", "ptwalk-bundle-1"},
                      {"study", to_string(cfg.study)},
                      {"master_seed", cfg.master_seed},
                      {"cells", cells},
                      {"toy", result.toy_ran ? json(result.toy_status) : json(nullptr)},
                      {"artifacts", artifacts}};
  write_file(dir / "manifest.json", manifest.dump(2));
  write_file(dir / "timing.json", timing.dump(2));
  return result;
}

}  // namespace ptwalk
