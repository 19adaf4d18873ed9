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
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ptwalk/errors.hpp"
#include "ptwalk/experiments.hpp"
#include "ptwalk/format.hpp"

namespace ptwalk {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kHermitianSpreadTol = 1e-8;
constexpr double kSeparationFactor = 1e3;
constexpr double kBlpAgreementTol = 2e-2;
constexpr double kToyConstancyTol = 1e-9;
constexpr double kToyDeviationTol = 1e-3;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingArtifacts, "cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Columns of a series CSV keyed by header name; '#' lines skipped.
std::map<std::string, std::vector<double>> read_series(const fs::path& p) {
  std::istringstream in(read_file(p));
  std::string line;
  std::vector<std::string> names;
  std::map<std::string, std::vector<double>> cols;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (names.empty()) {
      names = fields;
      continue;
    }
    for (std::size_t i = 0; i < names.size() && i < fields.size(); ++i) {
      if (names[i] == "flags") continue;
      cols[names[i]].push_back(std::strtod(fields[i].c_str(), nullptr));
    }
  }
  return cols;
}

// max_t (max_m x - min_m x) over equally long series.
double series_spread(const std::vector<const std::vector<double>*>& series) {
  if (series.size() < 2) return 0.0;
  std::size_t n = series.front()->size();
  for (const auto* s : series) n = std::min(n, s->size());
  double worst = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    double lo = (*series.front())[t];
    double hi = lo;
    for (const auto* s : series) {
      lo = std::min(lo, (*s)[t]);
      hi = std::max(hi, (*s)[t]);
    }
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

struct GammaGroup {
  std::vector<std::map<std::string, std::vector<double>>> series;
  std::vector<double> n_max;
  std::vector<std::string> computed;
};

}  // namespace

Report report(const std::string& dir_name) {
  const fs::path dir(dir_name);
  if (!fs::exists(dir / "manifest.json")) {
    throw Error(ErrorCode::MissingArtifacts, "no manifest.json in '" + dir_name + "'");
  }
  json manifest;
  try {
    manifest = json::parse(read_file(dir / "manifest.json"));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MissingArtifacts, std::string("unreadable manifest: ") + e.what());
  }

  Report rep;
  auto add = [&](ReportRow row) {
    if (row.verdict == "FAIL") rep.any_fail = true;
    rep.rows.push_back(std::move(row));
  };

  for (const auto& a : manifest.at("artifacts")) {
    const fs::path p = dir / a.at("path").get<std::string>();
    if (!fs::exists(p)) throw Error(ErrorCode::MissingArtifacts, "listed artifact missing: " + p.string());
    if (sha256_hex(read_file(p)) != a.at("sha256").get<std::string>()) {
      add({"bundle", a.at("path").get<std::string>(), "sha256", 0.0, 0.0, "FAIL"});
    }
  }

  std::map<double, GammaGroup> groups;
  for (const auto& c : manifest.at("cells")) {
    const std::string cell = c.at("cell").get<std::string>();
    if (c.at("status") != "ok") {
      add({"walk", cell, "status " + c.at("status").get<std::string>(), 0.0, 0.0, "INFO"});
      continue;
    }
    const json summary = json::parse(read_file(dir / ("summary_" + cell + ".json")));
    GammaGroup& g = groups[c.at("exp_gamma").get<double>()];
    g.series.push_back(read_series(dir / ("series_" + cell + ".csv")));
    if (summary.contains("N_max")) g.n_max.push_back(summary.at("N_max").get<double>());
    g.computed.clear();
    if (summary.contains("N_max")) g.computed.push_back("blp");
    if (summary.contains("final_I_RHP")) g.computed.push_back("rhp");
    if (summary.contains("final_S")) g.computed.push_back("entanglement");
  }

  auto spread_of = [](const GammaGroup& g, const std::string& col) {
    std::vector<const std::vector<double>*> s;
    for (const auto& m : g.series) {
      if (auto it = m.find(col); it != m.end()) s.push_back(&it->second);
    }
    return series_spread(s);
  };

  std::map<std::string, double> reference;
  const bool have_reference = groups.count(1.0) > 0 && groups.at(1.0).series.size() >= 2;
  if (have_reference) {
    reference["I_RHP"] = spread_of(groups.at(1.0), "I_RHP");
    reference["S"] = spread_of(groups.at(1.0), "S");
  }

  const std::pair<const char*, const char*> walk_columns[] = {{"rhp", "I_RHP"}, {"entanglement", "S"}};
  for (const auto& [eg, g] : groups) {
    const std::string scope = "e^gamma=" + fmt_double(eg);
    if (g.series.size() < 2) {
      add({"walk", scope, "fewer than two metrics", 0.0, 0.0, "INFO"});
      continue;
    }
    for (const auto& [study, col] : walk_columns) {
      if (std::find(g.computed.begin(), g.computed.end(), study) == g.computed.end()) continue;
      const double spread = spread_of(g, col);
      const std::string q = std::string(col) + " metric spread";
      if (eg == 1.0) {
        add({study, scope, q, spread, kHermitianSpreadTol, spread < kHermitianSpreadTol ? "PASS" : "FAIL"});
      } else {
        const double thr = have_reference ? kSeparationFactor * reference[col]
                                          : kSeparationFactor * kHermitianSpreadTol;
        add({study, scope, q, spread, thr, spread > thr ? "DISTINCT" : "FAIL"});
      }
    }
    if (g.n_max.size() >= 2) {
      const auto [lo, hi] = std::minmax_element(g.n_max.begin(), g.n_max.end());
      const double spread = *hi - *lo;
      add({"blp", scope, "N_max metric spread", spread, kBlpAgreementTol,
           spread <= kBlpAgreementTol ? "PASS" : "FAIL"});
    }
  }

  if (fs::exists(dir / "toy.json")) {
    const json toy = json::parse(read_file(dir / "toy.json"));
    if (toy.at("status") != "ok") {
      add({"toy", "toy", "status failed", 0.0, 0.0, "FAIL"});
    } else {
      for (const auto& r : toy.at("runs")) {
        const double dev = r.at("max_abs_S_minus_1").get<double>();
        const std::string scope = "metric " + r.at("name").get<std::string>();
        if (r.at("product").get<bool>()) {
          add({"toy", scope, "max |S - 1| (product)", dev, kToyConstancyTol,
               dev <= kToyConstancyTol ? "PASS" : "FAIL"});
        } else {
          add({"toy", scope, "max |S - 1| (non-product)", dev, kToyDeviationTol,
               dev > kToyDeviationTol ? "DISTINCT" : "FAIL"});
        }
      }
    }
  }

  std::ostringstream text;
  text << std::left << std::setw(14) << "study" << std::setw(18) << "scope" << std::setw(28)
       << "quantity" << std::setw(14) << "value" << std::setw(14) << "threshold" << "verdict\n";
  json rows = json::array();
  for (const auto& r : rep.rows) {
    std::ostringstream v, t;
    v << std::setprecision(4) << r.value;
    t << std::setprecision(4) << r.threshold;
    text << std::setw(14) << r.study << std::setw(18) << r.scope << std::setw(28) << r.quantity
         << std::setw(14) << v.str() << std::setw(14) << t.str() << r.verdict << '\n';
    rows.push_back({{"study", r.study}, {"scope", r.scope}, {"quantity", r.quantity},
                    {"value", r.value}, {"threshold", r.threshold}, {"verdict", r.verdict}});
  }
  rep.text = text.str();
  rep.json = json{{"rows", rows}, {"any_fail", rep.any_fail}}.dump(2);
  return rep;
}

}  // namespace ptwalk
