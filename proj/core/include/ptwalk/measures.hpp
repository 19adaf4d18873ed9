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

#include "ptwalk/dynamics.hpp"
#include "ptwalk/linalg.hpp"

namespace ptwalk {

// ||rho - sigma||_1 / 2
double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);

Matrix2c density_from_bloch(const Eigen::Vector3d& r);
Eigen::Vector3d bloch_from_density(const Matrix2c& rho);

// Projects onto the closed unit ball.
Eigen::Vector3d project_to_ball(const Eigen::Vector3d& r);

struct StatePair {
  Eigen::Vector3d r = Eigen::Vector3d::UnitZ();
  Eigen::Vector3d s = -Eigen::Vector3d::UnitZ();

  Matrix2c rho() const { return density_from_bloch(r); }
  Matrix2c sigma() const { return density_from_bloch(s); }
};

enum MeasureFlag : unsigned {
  kFlagNone = 0,
  kFlagIllConditioned = 1u << 0,  // L(t-1, 0) needed a truncated pseudo-inverse
  kFlagImpureInitial = 1u << 1,   // S(t) is not an entanglement measure
  kFlagNegativeG = 1u << 2,       // g(t) below -1e-9 before clamping
};

std::string flag_string(unsigned flags);

struct MeasureRow {
  int t = 0;
  double delta = 0.0;  // D(t) - D(t-1)
  double blp = 0.0;    // N(t)
  double g = 0.0;
  double rhp = 0.0;  // I_RHP(t)
  double entropy = 0.0;
  double condition_number = 1.0;
  unsigned flags = kFlagNone;
};

struct MeasureSeries {
  std::vector<MeasureRow> rows;  // index = step, 0..t_max
};

inline constexpr double kNegativeGTolerance = 1e-9;

MeasureSeries blp_series(const EuclideanWalk& ew, const StatePair& pair, int t_max);
MeasureSeries blp_series(const std::vector<ChannelMatrix>& maps, const StatePair& pair);

// Accumulated BLP N(t_max) only, from precomputed L(t, 0).
double blp_total(const std::vector<ChannelMatrix>& maps, const StatePair& pair);

struct AnnealSchedule {
  double initial_temperature = 0.05;
  double cooling_factor = 0.9;
  int steps_per_temperature = 40;
  int temperature_levels = 60;
  double proposal_stddev = 0.25;  // at the initial temperature; shrinks as sqrt(T/T0)
  int restarts = 5;
  std::uint64_t seed = 1;

  void validate() const;  // throws ConfigInvalid
};

struct AnnealTracePoint {
  int restart = 0;
  int level = 0;
  double temperature = 0.0;
  int accepted = 0;
  double best = 0.0;
};

struct BlpOptimum {
  StatePair pair;
  double n_max = 0.0;
  double baseline_best = 0.0;  // best of the random and antipodal starting pairs
  MeasureSeries series;
  std::vector<AnnealTracePoint> trace;
};

BlpOptimum maximize_blp(const EuclideanWalk& ew, const AnnealSchedule& schedule, int t_max,
                        bool record_trace = false);
BlpOptimum maximize_blp(const std::vector<ChannelMatrix>& maps, const AnnealSchedule& schedule,
                        bool record_trace = false);

// g(t) = ||C(L(t, t-1))||_1 - 1 and I_RHP(t) = sum_{k<=t} g(k), over the
// matrix-unit channel basis.
MeasureSeries rhp_series(const EuclideanWalk& ew, int t_max);
MeasureSeries rhp_series(const std::vector<ChannelMatrix>& maps);

// Entropy in bits; eigenvalues below 1e-12 are dropped.
double von_neumann_entropy(const ComplexMatrix& rho);

MeasureSeries entanglement_series(const EuclideanWalk& ew, const Matrix2c& rho0, int t_max);

// Row-wise union; BLP columns from blp, RHP from rhp, entropy from ent, flags OR-ed.
MeasureSeries merge_series(const MeasureSeries& blp, const MeasureSeries& rhp,
                           const MeasureSeries& ent);

std::string series_csv(const MeasureSeries& s, const std::vector<std::string>& header = {});
std::string anneal_trace_csv(const std::vector<AnnealTracePoint>& trace);

}  // namespace ptwalk
