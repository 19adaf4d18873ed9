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
#include "ptwalk/measures.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ptwalk/errors.hpp"
#include "ptwalk/format.hpp"

namespace ptwalk {

namespace {

constexpr int kBaselinePairs = 100;

// Sum of |eigenvalues| of the Hermitian part of a 2x2 matrix.
double trace_norm_2x2_hermitian(const Matrix2c& x) {
  const double a = x(0, 0).real();
  const double d = x(1, 1).real();
  const cplx b = 0.5 * (x(0, 1) + std::conj(x(1, 0)));
  const double m = 0.5 * (a + d);
  const double r = std::hypot(0.5 * (a - d), std::abs(b));
  return 2.0 * std::max(std::abs(m), r);
}

Eigen::Vector3d random_in_ball(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  Eigen::Vector3d v(normal(rng), normal(rng), normal(rng));
  const double n = v.norm();
  if (n == 0.0) return Eigen::Vector3d::Zero();
  return v / n * std::cbrt(unit(rng));
}

StatePair random_pair(std::mt19937_64& rng) {
  StatePair p;
  p.r = random_in_ball(rng);
  p.s = random_in_ball(rng);
  return p;
}

std::vector<StatePair> antipodal_pairs() {
  std::vector<StatePair> out;
  for (int axis = 0; axis < 3; ++axis) {
    for (double sign : {1.0, -1.0}) {
      StatePair p;
      p.r = sign * Eigen::Vector3d::Unit(axis);
      p.s = -p.r;
      out.push_back(p);
    }
  }
  return out;
}

struct Candidate {
  StatePair pair;
  double value = -1.0;
};

struct RestartResult {
  Candidate best;
  std::vector<AnnealTracePoint> trace;
};

RestartResult anneal_once(const std::vector<ChannelMatrix>& maps, const AnnealSchedule& sch,
                          int restart, const Candidate& start, bool record_trace) {
  std::mt19937_64 rng(sch.seed + static_cast<std::uint64_t>(restart));
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;

  Candidate current = start;
  if (restart > 0) {
    current.pair = random_pair(rng);
    current.value = blp_total(maps, current.pair);
  }
  RestartResult res{current, {}};

  double temperature = sch.initial_temperature;
  for (int level = 0; level < sch.temperature_levels; ++level) {
    const double stddev = sch.proposal_stddev * std::sqrt(temperature / sch.initial_temperature);
    int accepted = 0;
    for (int step = 0; step < sch.steps_per_temperature; ++step) {
      StatePair prop = current.pair;
      for (int i = 0; i < 3; ++i) {
        prop.r(i) += stddev * normal(rng);
        prop.s(i) += stddev * normal(rng);
      }
      prop.r = project_to_ball(prop.r);
      prop.s = project_to_ball(prop.s);
      const double value = blp_total(maps, prop);
      const double gain = value - current.value;
      // Draw unconditionally so the stream does not depend on the branch taken.
      const double u = unit(rng);
      if (gain >= 0.0 || u < std::exp(gain / temperature)) {
        current = {prop, value};
        ++accepted;
        if (value > res.best.value) res.best = current;
      }
    }
    if (record_trace) res.trace.push_back({restart, level, temperature, accepted, res.best.value});
    temperature *= sch.cooling_factor;
  }
  return res;
}

}  // namespace

double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "trace_distance: dimensions differ");
  }
  if (rho.rows() == 2 && rho.cols() == 2) {
    return 0.5 * trace_norm_2x2_hermitian(Matrix2c(rho - sigma));
  }
  return 0.5 * trace_norm(rho - sigma);
}

Matrix2c density_from_bloch(const Eigen::Vector3d& r) {
  Matrix2c m;
  m << 1.0 + r(2), cplx(r(0), -r(1)), cplx(r(0), r(1)), 1.0 - r(2);
  return 0.5 * m;
}

Eigen::Vector3d bloch_from_density(const Matrix2c& rho) {
  return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

Eigen::Vector3d project_to_ball(const Eigen::Vector3d& r) {
  const double n = r.norm();
  return n > 1.0 ? Eigen::Vector3d(r / n) : r;
}

std::string flag_string(unsigned flags) {
  std::string out;
  auto add = [&](unsigned bit, const char* name) {
    if (flags & bit) {
      if (!out.empty()) out += '|';
      out += name;
    }
  };
  add(kFlagIllConditioned, "ill_conditioned");
  add(kFlagImpureInitial, "impure_initial");
  add(kFlagNegativeG, "negative_g");
  return out;
}

MeasureSeries blp_series(const EuclideanWalk& ew, const StatePair& pair, int t_max) {
  return blp_series(channel_series(ew, t_max), pair);
}

MeasureSeries blp_series(const std::vector<ChannelMatrix>& maps, const StatePair& pair) {
  MeasureSeries out;
  const Matrix2c rho = pair.rho();
  const Matrix2c sigma = pair.sigma();
  double previous = 0.0;
  double total = 0.0;
  for (std::size_t t = 0; t < maps.size(); ++t) {
    const double d = trace_distance(apply_channel(maps[t].L, rho), apply_channel(maps[t].L, sigma));
    MeasureRow row;
    row.t = static_cast<int>(t);
    if (t > 0) {
      row.delta = d - previous;
      if (row.delta > 0.0) total += row.delta;
    }
    row.blp = total;
    previous = d;
    out.rows.push_back(row);
  }
  return out;
}

double blp_total(const std::vector<ChannelMatrix>& maps, const StatePair& pair) {
  const Matrix2c diff = pair.rho() - pair.sigma();
  double previous = 0.0;
  double total = 0.0;
  for (std::size_t t = 0; t < maps.size(); ++t) {
    // The maps are linear, so D(t) only needs the image of rho - sigma.
    const double d = 0.5 * trace_norm_2x2_hermitian(apply_channel(maps[t].L, diff));
    if (t > 0 && d > previous) total += d - previous;
    previous = d;
  }
  return total;
}

void AnnealSchedule::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw Error(ErrorCode::ConfigInvalid, "anneal." + field + ": " + why);
  };
  if (!(initial_temperature > 0.0)) fail("initial_temperature", "must be positive");
  if (!(cooling_factor > 0.0 && cooling_factor < 1.0)) fail("cooling_factor", "must lie in (0, 1)");
  if (steps_per_temperature <= 0) fail("steps_per_temperature", "must be positive");
  if (temperature_levels <= 0) fail("temperature_levels", "must be positive");
  if (!(proposal_stddev > 0.0)) fail("proposal_stddev", "must be positive");
  if (restarts <= 0) fail("restarts", "must be positive");
}

BlpOptimum maximize_blp(const EuclideanWalk& ew, const AnnealSchedule& schedule, int t_max,
                        bool record_trace) {
  return maximize_blp(channel_series(ew, t_max), schedule, record_trace);
}

BlpOptimum maximize_blp(const std::vector<ChannelMatrix>& maps, const AnnealSchedule& schedule,
                        bool record_trace) {
  schedule.validate();

  std::mt19937_64 baseline_rng(schedule.seed);
  Candidate start;
  auto consider = [&](const StatePair& p) {
    const double v = blp_total(maps, p);
    if (v > start.value) start = {p, v};
  };
  for (const auto& p : antipodal_pairs()) consider(p);
  for (int i = 0; i < kBaselinePairs; ++i) consider(random_pair(baseline_rng));

  std::vector<std::future<RestartResult>> jobs;
  for (int r = 0; r < schedule.restarts; ++r) {
    jobs.push_back(std::async(std::launch::async, anneal_once, std::cref(maps),
                              std::cref(schedule), r, start, record_trace));
  }

  BlpOptimum out;
  out.baseline_best = start.value;
  Candidate best = start;
  for (auto& job : jobs) {
    RestartResult res = job.get();
    if (res.best.value > best.value) best = res.best;
    out.trace.insert(out.trace.end(), res.trace.begin(), res.trace.end());
  }
  out.pair = best.pair;
  out.series = blp_series(maps, best.pair);
  out.n_max = out.series.rows.back().blp;
  return out;
}

MeasureSeries rhp_series(const EuclideanWalk& ew, int t_max) {
  return rhp_series(channel_series(ew, t_max));
}

MeasureSeries rhp_series(const std::vector<ChannelMatrix>& maps) {
  MeasureSeries out;
  double total = 0.0;
  for (std::size_t t = 0; t < maps.size(); ++t) {
    MeasureRow row;
    row.t = static_cast<int>(t);
    if (t > 0) {
      const ChannelMatrix step = intermediate_map(maps[t], maps[t - 1]);
      const double raw = trace_norm(choi_matrix(step)) - 1.0;
      if (raw < -kNegativeGTolerance) row.flags |= kFlagNegativeG;
      row.g = std::max(raw, 0.0);
      row.condition_number = step.condition_number;
      if (step.ill_conditioned) row.flags |= kFlagIllConditioned;
      total += row.g;
    }
    row.rhp = total;
    out.rows.push_back(row);
  }
  return out;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  const ComplexMatrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p > kPsdClamp) s -= p * std::log2(p);
  }
  return std::max(s, 0.0);
}

MeasureSeries entanglement_series(const EuclideanWalk& ew, const Matrix2c& rho0, int t_max) {
  const CoinTrajectory traj = coin_trajectory(ew, rho0, t_max);
  const double purity = (rho0 * rho0).trace().real();
  const unsigned flags = std::abs(purity - 1.0) > 1e-10 ? kFlagImpureInitial : kFlagNone;
  MeasureSeries out;
  for (std::size_t t = 0; t < traj.states.size(); ++t) {
    MeasureRow row;
    row.t = static_cast<int>(t);
    row.entropy = von_neumann_entropy(traj.states[t]);
    row.flags = flags;
    out.rows.push_back(row);
  }
  return out;
}

MeasureSeries merge_series(const MeasureSeries& blp, const MeasureSeries& rhp,
                           const MeasureSeries& ent) {
  const std::size_t n = std::max({blp.rows.size(), rhp.rows.size(), ent.rows.size()});
  MeasureSeries out;
  out.rows.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    MeasureRow& row = out.rows[t];
    row.t = static_cast<int>(t);
    if (t < blp.rows.size()) {
      row.delta = blp.rows[t].delta;
      row.blp = blp.rows[t].blp;
      row.flags |= blp.rows[t].flags;
    }
    if (t < rhp.rows.size()) {
      row.g = rhp.rows[t].g;
      row.rhp = rhp.rows[t].rhp;
      row.condition_number = rhp.rows[t].condition_number;
      row.flags |= rhp.rows[t].flags;
    }
    if (t < ent.rows.size()) {
      row.entropy = ent.rows[t].entropy;
      row.flags |= ent.rows[t].flags;
    }
  }
  return out;
}

std::string series_csv(const MeasureSeries& s, const std::vector<std::string>& header) {
  std::ostringstream os;
  for (const auto& h : header) os << "# " << h << '\n';
  os << "t,delta,N,g,I_RHP,S,condition_number,flags\n";
  for (const auto& r : s.rows) {
    os << r.t << ',' << fmt_double(r.delta) << ',' << fmt_double(r.blp) << ',' << fmt_double(r.g)
       << ',' << fmt_double(r.rhp) << ',' << fmt_double(r.entropy) << ','
       << fmt_double(r.condition_number) << ',' << flag_string(r.flags) << '\n';
  }
  return os.str();
}

std::string anneal_trace_csv(const std::vector<AnnealTracePoint>& trace) {
  std::ostringstream os;
  os << "restart,level,temperature,accepted,best\n";
  for (const auto& p : trace) {
    os << p.restart << ',' << p.level << ',' << fmt_double(p.temperature) << ',' << p.accepted
       << ',' << fmt_double(p.best) << '\n';
  }
  return os.str();
}

}  // namespace ptwalk
