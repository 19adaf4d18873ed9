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
#include "ptwalk/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ptwalk/errors.hpp"

namespace ptwalk {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::ConfigInvalid, field + ": " + why);
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) bad(where.empty() ? "<root>" : where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) bad(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
  }
}

std::string path_of(const std::string& where, const char* key) {
  return where.empty() ? std::string(key) : where + "." + key;
}

double get_double(const json& j, const std::string& where, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) bad(path_of(where, key), "expected a number");
  return j[key].get<double>();
}

std::int64_t get_int(const json& j, const std::string& where, const char* key, std::int64_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) bad(path_of(where, key), "expected an integer");
  return j[key].get<std::int64_t>();
}

std::uint64_t get_seed(const json& j, const std::string& where, const char* key, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_unsigned()) bad(path_of(where, key), "expected a non-negative integer");
  return j[key].get<std::uint64_t>();
}

std::string get_string(const json& j, const std::string& where, const char* key, std::string fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string()) bad(path_of(where, key), "expected a string");
  return j[key].get<std::string>();
}

std::vector<double> get_doubles(const json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) bad(field + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

MetricSpec parse_metric(const json& j, const std::string& where) {
  check_keys(j, where, {"name", "kind", "seed", "lower", "upper", "x", "y"});
  const std::string kind = get_string(j, where, "kind", "");
  const std::string name = get_string(j, where, "name", "");
  if (kind == "flat") return MetricSpec::flat(name.empty() ? "flat" : name);
  if (kind == "random_xy") {
    if (!j.contains("seed")) bad(where + ".seed", "required for random_xy");
    return MetricSpec::random_xy(get_seed(j, where, "seed", 0), name,
                                 get_double(j, where, "lower", 0.2),
                                 get_double(j, where, "upper", 2.0));
  }
  if (kind == "explicit") {
    if (!j.contains("x") || !j.contains("y")) bad(where, "explicit metric needs x and y tables");
    return MetricSpec::explicit_xy(get_doubles(j["x"], where + ".x"), get_doubles(j["y"], where + ".y"),
                                   name.empty() ? "explicit" : name);
  }
  bad(where + ".kind", "expected one of flat, random_xy, explicit");
}

json metric_to_json(const MetricSpec& m) {
  json j{{"name", m.label()}, {"kind", m.kind_name()}};
  if (m.kind == MetricSpec::Kind::RandomXY) {
    j["seed"] = m.seed;
    j["lower"] = m.lower;
    j["upper"] = m.upper;
  } else if (m.kind == MetricSpec::Kind::Explicit) {
    j["x"] = m.x;
    j["y"] = m.y;
  }
  return j;
}

void parse_anneal(const json& j, AnnealSchedule& a) {
  const std::string w = "anneal";
  check_keys(j, w, {"initial_temperature", "cooling_factor", "steps_per_temperature",
                    "temperature_levels", "proposal_stddev", "restarts"});
  a.initial_temperature = get_double(j, w, "initial_temperature", a.initial_temperature);
  a.cooling_factor = get_double(j, w, "cooling_factor", a.cooling_factor);
  a.steps_per_temperature = static_cast<int>(get_int(j, w, "steps_per_temperature", a.steps_per_temperature));
  a.temperature_levels = static_cast<int>(get_int(j, w, "temperature_levels", a.temperature_levels));
  a.proposal_stddev = get_double(j, w, "proposal_stddev", a.proposal_stddev);
  a.restarts = static_cast<int>(get_int(j, w, "restarts", a.restarts));
}

void parse_weights(const json& j, const std::string& field, double (&out)[4]) {
  const auto v = get_doubles(j, field);
  if (v.size() != 4) bad(field, "expected 4 weights (w0_A, w1_A, w0_B, w1_B)");
  for (int i = 0; i < 4; ++i) out[i] = v[static_cast<std::size_t>(i)];
}

void parse_toy(const json& j, ToyConfig& t) {
  const std::string w = "toy";
  check_keys(j, w, {"variant", "generator", "a_diag", "a_off", "b_diag", "b_off", "g1_weights",
                    "g2_weights", "nonproduct_strength", "t_max", "dt"});
  const std::string variant = get_string(j, w, "variant", "pt_phase");
  if (variant == "pt_phase") t.variant = ToyConfig::Variant::PtPhase;
  else if (variant == "as_printed") t.variant = ToyConfig::Variant::AsPrinted;
  else bad("toy.variant", "expected pt_phase or as_printed");
  const std::string gen = get_string(j, w, "generator", "local_sum");
  if (gen == "local_sum") t.generator = ToyConfig::Generator::LocalSum;
  else if (gen == "kronecker") t.generator = ToyConfig::Generator::Kronecker;
  else bad("toy.generator", "expected local_sum or kronecker");
  t.a_diag = get_double(j, w, "a_diag", t.a_diag);
  t.a_off = get_double(j, w, "a_off", t.a_off);
  t.b_diag = get_double(j, w, "b_diag", t.b_diag);
  t.b_off = get_double(j, w, "b_off", t.b_off);
  if (j.contains("g1_weights")) parse_weights(j["g1_weights"], "toy.g1_weights", t.g1_weights);
  if (j.contains("g2_weights")) parse_weights(j["g2_weights"], "toy.g2_weights", t.g2_weights);
  t.nonproduct_strength = get_double(j, w, "nonproduct_strength", t.nonproduct_strength);
  t.t_max = get_double(j, w, "t_max", t.t_max);
  t.dt = get_double(j, w, "dt", t.dt);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Study parse_study(const std::string& name) {
  if (name == "blp") return Study::Blp;
  if (name == "rhp") return Study::Rhp;
  if (name == "entanglement") return Study::Entanglement;
  if (name == "toy") return Study::Toy;
  if (name == "all") return Study::All;
  bad("study", "expected one of blp, rhp, entanglement, toy, all (got '" + name + "')");
}

std::string to_string(Study s) {
  switch (s) {
    case Study::Blp: return "blp";
    case Study::Rhp: return "rhp";
    case Study::Entanglement: return "entanglement";
    case Study::Toy: return "toy";
    case Study::All: return "all";
  }
  return "all";
}

bool includes(Study selected, Study s) { return selected == Study::All || selected == s; }

void ExperimentConfig::validate() const {
  for (const char* f : {"theta1", "theta2"}) {
    const double v = std::string(f) == "theta1" ? walk.theta1 : walk.theta2;
    if (!std::isfinite(v)) bad(std::string("walk.") + f, "must be finite");
  }
  if (walk.lattice_size <= 0 || walk.lattice_size % 2 == 0) {
    bad("walk.lattice_size", "must be a positive odd integer");
  }
  if (t_max < 0) bad("t_max", "must be non-negative");
  if (walk.lattice_size < 2 * t_max + 1) {
    bad("walk.lattice_size", "must be at least 2 * t_max + 1 = " + std::to_string(2 * t_max + 1));
  }
  if (exp_gammas.empty()) bad("gammas", "must list at least one value of e^gamma");
  for (std::size_t i = 0; i < exp_gammas.size(); ++i) {
    if (!(exp_gammas[i] > 0.0) || !std::isfinite(exp_gammas[i])) {
      bad("gammas[" + std::to_string(i) + "]", "e^gamma must be positive and finite");
    }
  }
  if (metrics.empty()) bad("metrics", "must list at least one metric");
  std::set<std::string> labels;
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    const MetricSpec& m = metrics[i];
    const std::string f = "metrics[" + std::to_string(i) + "]";
    if (!labels.insert(m.label()).second) bad(f + ".name", "duplicate metric name '" + m.label() + "'");
    if (m.kind == MetricSpec::Kind::RandomXY && !(m.lower > 0.0 && m.upper >= m.lower)) {
      bad(f, "random_xy needs 0 < lower <= upper");
    }
    if (m.kind == MetricSpec::Kind::Explicit &&
        (m.x.size() != static_cast<std::size_t>(walk.lattice_size) || m.y.size() != m.x.size())) {
      bad(f, "explicit tables need lattice_size entries each");
    }
  }
  if (threads < 0) bad("threads", "must be non-negative");
  if (!(std::abs(initial_coin.norm() - 1.0) <= 1e-9)) bad("initial_state", "must have unit norm");
  anneal.validate();
  toy.validate();
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad("<root>", std::string("malformed JSON: ") + e.what());
  }
  check_keys(j, "", {"walk", "gammas", "metrics", "t_max", "study", "output_dir", "master_seed",
                     "threads", "initial_state", "anneal", "toy"});
  ExperimentConfig cfg;
  if (j.contains("walk")) {
    const json& w = j["walk"];
    check_keys(w, "walk", {"theta1", "theta2", "lattice_size"});
    cfg.walk.theta1 = get_double(w, "walk", "theta1", cfg.walk.theta1);
    cfg.walk.theta2 = get_double(w, "walk", "theta2", cfg.walk.theta2);
    cfg.walk.lattice_size = static_cast<int>(get_int(w, "walk", "lattice_size", cfg.walk.lattice_size));
  }
  if (j.contains("gammas")) cfg.exp_gammas = get_doubles(j["gammas"], "gammas");
  if (j.contains("metrics")) {
    if (!j["metrics"].is_array()) bad("metrics", "expected an array");
    cfg.metrics.clear();
    for (std::size_t i = 0; i < j["metrics"].size(); ++i) {
      cfg.metrics.push_back(parse_metric(j["metrics"][i], "metrics[" + std::to_string(i) + "]"));
    }
  }
  cfg.t_max = static_cast<int>(get_int(j, "", "t_max", cfg.t_max));
  cfg.study = parse_study(get_string(j, "", "study", to_string(cfg.study)));
  cfg.output_dir = get_string(j, "", "output_dir", cfg.output_dir);
  cfg.master_seed = get_seed(j, "", "master_seed", cfg.master_seed);
  cfg.threads = static_cast<int>(get_int(j, "", "threads", cfg.threads));
  if (j.contains("initial_state")) {
    const json& s = j["initial_state"];
    check_keys(s, "initial_state", {"re", "im"});
    const auto re = s.contains("re") ? get_doubles(s["re"], "initial_state.re") : std::vector<double>{0, 0};
    const auto im = s.contains("im") ? get_doubles(s["im"], "initial_state.im") : std::vector<double>{0, 0};
    if (re.size() != 2 || im.size() != 2) bad("initial_state", "re and im need 2 entries each");
    Vector2c v(cplx(re[0], im[0]), cplx(re[1], im[1]));
    if (v.norm() == 0.0) bad("initial_state", "must be non-zero");
    cfg.initial_coin = v.normalized();
  }
  if (j.contains("anneal")) parse_anneal(j["anneal"], cfg.anneal);
  if (j.contains("toy")) parse_toy(j["toy"], cfg.toy);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("--config", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json metrics = json::array();
  for (const auto& m : cfg.metrics) metrics.push_back(metric_to_json(m));
  const AnnealSchedule& a = cfg.anneal;
  const ToyConfig& t = cfg.toy;
  json j{
      {"walk", {{"theta1", cfg.walk.theta1}, {"theta2", cfg.walk.theta2}, {"lattice_size", cfg.walk.lattice_size}}},
      {"gammas", cfg.exp_gammas},
      {"metrics", metrics},
      {"t_max", cfg.t_max},
      {"study", to_string(cfg.study)},
      {"output_dir", cfg.output_dir},
      {"master_seed", cfg.master_seed},
      {"threads", cfg.threads},
      {"initial_state",
       {{"re", {cfg.initial_coin(0).real(), cfg.initial_coin(1).real()}},
        {"im", {cfg.initial_coin(0).imag(), cfg.initial_coin(1).imag()}}}},
      {"anneal",
       {{"initial_temperature", a.initial_temperature},
        {"cooling_factor", a.cooling_factor},
        {"steps_per_temperature", a.steps_per_temperature},
        {"temperature_levels", a.temperature_levels},
        {"proposal_stddev", a.proposal_stddev},
        {"restarts", a.restarts}}},
      {"toy",
       {{"variant", t.variant == ToyConfig::Variant::PtPhase ? "pt_phase" : "as_printed"},
        {"generator", t.generator == ToyConfig::Generator::LocalSum ? "local_sum" : "kronecker"},
        {"a_diag", t.a_diag},
        {"a_off", t.a_off},
        {"b_diag", t.b_diag},
        {"b_off", t.b_off},
        {"g1_weights", std::vector<double>(std::begin(t.g1_weights), std::end(t.g1_weights))},
        {"g2_weights", std::vector<double>(std::begin(t.g2_weights), std::end(t.g2_weights))},
        {"nonproduct_strength", t.nonproduct_strength},
        {"t_max", t.t_max},
        {"dt", t.dt}}},
  };
  return j.dump(2);
}

std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t gamma_index, std::size_t metric_index) {
  return splitmix64(splitmix64(master_seed ^ (gamma_index * 0x100000001b3ULL)) + metric_index);
}

}  // namespace ptwalk
