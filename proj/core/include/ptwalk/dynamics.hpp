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

#include <string>
#include <vector>

#include "ptwalk/linalg.hpp"
#include "ptwalk/metric.hpp"
#include "ptwalk/walk.hpp"

namespace ptwalk {

// Walk carried to the Euclidean picture by eta: W_eta(k) = eta(k) W_c(k) eta(k)^{-1}.
struct EuclideanWalk {
  WalkParams params;
  BlockOperator metric;
  BlockOperator eta;
  BlockOperator eta_inv;
  BlockOperator w_eta;
};

EuclideanWalk build_euclidean_walk(const WalkParams& p, const MetricSpec& spec);
// Takes a ready metric; skips the regime check at gamma = 0.
EuclideanWalk build_euclidean_walk(const WalkParams& p, const BlockOperator& metric);

// max_k |W_eta(k)^dagger W_eta(k) - I|_F
double unitarity_defect(const EuclideanWalk& ew);

// (1/L) sum_k W_eta(k)^t rho0 W_eta(k)^{dagger t}, accumulated in grid order.
Matrix2c reduced_coin_state(const EuclideanWalk& ew, const Matrix2c& rho0, int t);

struct CoinTrajectory {
  std::vector<Matrix2c> states;  // index = step, 0..t_max
};

CoinTrajectory coin_trajectory(const EuclideanWalk& ew, const Matrix2c& rho0, int t_max);

// Row-major vectorization: L vec(rho) = vec(Lambda(rho)).
struct ChannelMatrix {
  int t_from = 0;
  int t_to = 0;
  Matrix4c L = Matrix4c::Identity();
  double condition_number = 1.0;
  bool ill_conditioned = false;
};

inline constexpr double kIllConditionedThreshold = 1e12;
inline constexpr double kPinvCutoff = 1e-12;

ChannelMatrix channel_matrix(const EuclideanWalk& ew, int t);

// L(t, 0) for t = 0..t_max, built by applying the dynamics to the four matrix units.
std::vector<ChannelMatrix> channel_series(const EuclideanWalk& ew, int t_max);

// L(t+1, t) = L(t+1, 0) pinv(L(t, 0)). Near-singular L(t, 0) is flagged, not fatal.
ChannelMatrix intermediate_map(const ChannelMatrix& next, const ChannelMatrix& current);
ChannelMatrix intermediate_map(const EuclideanWalk& ew, int t);

// Throws IllConditioned if the map was flagged.
void require_well_conditioned(const ChannelMatrix& m);

Matrix2c apply_channel(const Matrix4c& L, const Matrix2c& rho);

// Choi matrix (Lambda x id)(|Phi><Phi|) with |Phi> = (|00> + |11>)/sqrt(2).
Matrix4c choi_matrix(const Matrix4c& L);
inline Matrix4c choi_matrix(const ChannelMatrix& m) { return choi_matrix(m.L); }

Matrix4c unitary_channel(const Matrix2c& v);
Matrix4c transpose_channel();

// CSV: t, re/im of rho00, rho01, rho10, rho11. Header lines start with '#'.
std::string trajectory_csv(const CoinTrajectory& traj, const std::vector<std::string>& header = {});
// JSON array of {t_from, t_to, condition_number, ill_conditioned, re, im}.
std::string channels_json(const std::vector<ChannelMatrix>& maps);

}  // namespace ptwalk
