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
#include "ptwalk/dynamics.hpp"

#include <limits>
#include <sstream>

#include <json.hpp>

#include "ptwalk/errors.hpp"
#include "ptwalk/format.hpp"

namespace ptwalk {

namespace {

Matrix2c matrix_unit(int i, int j) {
  Matrix2c e = Matrix2c::Zero();
  e(i, j) = 1.0;
  return e;
}

Matrix2c averaged_conjugation(const std::vector<Matrix2c>& powers, const Matrix2c& rho) {
  Matrix2c acc = Matrix2c::Zero();
  for (const auto& p : powers) acc += p * rho * p.adjoint();
  return acc / static_cast<double>(powers.size());
}

void advance(std::vector<Matrix2c>& powers, const BlockOperator& w) {
  for (std::size_t n = 0; n < powers.size(); ++n) powers[n] = w[n] * powers[n];
}

Vector4c vec4(const Matrix2c& m) { return Vector4c(m(0, 0), m(0, 1), m(1, 0), m(1, 1)); }

Matrix2c devec4(const Vector4c& v) {
  Matrix2c m;
  m << v(0), v(1), v(2), v(3);
  return m;
}

Matrix4c channel_from_powers(const std::vector<Matrix2c>& powers) {
  Matrix4c L;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      L.col(2 * i + j) = vec4(averaged_conjugation(powers, matrix_unit(i, j)));
    }
  }
  return L;
}

}  // namespace

EuclideanWalk build_euclidean_walk(const WalkParams& p, const MetricSpec& spec) {
  return build_euclidean_walk(p, build_metric(p, spec));
}

EuclideanWalk build_euclidean_walk(const WalkParams& p, const BlockOperator& metric) {
  // At gamma = 0 the walk is unitary and a = +-1 grid points are plain degeneracies.
  if (p.gamma != 0.0 && !is_unbroken(p)) {
    throw Error(ErrorCode::BrokenRegime, "build_euclidean_walk: walk is outside the unbroken regime");
  }
  const BlockOperator w = walk_operator(p);
  if (metric.size() != w.size()) {
    throw Error(ErrorCode::ShapeMismatch, "build_euclidean_walk: metric has wrong block count");
  }
  EuclideanWalk ew{p, metric, eta(metric), BlockOperator{w.grid}, BlockOperator{w.grid}};
  for (std::size_t n = 0; n < w.size(); ++n) {
    ew.eta_inv[n] = ew.eta[n].inverse();
    ew.w_eta[n] = ew.eta[n] * w[n] * ew.eta_inv[n];
  }
  return ew;
}

double unitarity_defect(const EuclideanWalk& ew) {
  double worst = 0.0;
  for (const auto& b : ew.w_eta.blocks) {
    worst = std::max(worst, (b.adjoint() * b - Matrix2c::Identity()).norm());
  }
  return worst;
}

Matrix2c reduced_coin_state(const EuclideanWalk& ew, const Matrix2c& rho0, int t) {
  if (t < 0) throw Error(ErrorCode::ConfigInvalid, "reduced_coin_state: negative step");
  check_light_cone(ew.params.lattice_size, t);
  std::vector<Matrix2c> powers(ew.w_eta.size(), Matrix2c::Identity());
  for (int s = 0; s < t; ++s) advance(powers, ew.w_eta);
  return averaged_conjugation(powers, rho0);
}

CoinTrajectory coin_trajectory(const EuclideanWalk& ew, const Matrix2c& rho0, int t_max) {
  if (t_max < 0) throw Error(ErrorCode::ConfigInvalid, "coin_trajectory: negative t_max");
  check_light_cone(ew.params.lattice_size, t_max);
  CoinTrajectory traj;
  traj.states.reserve(static_cast<std::size_t>(t_max) + 1);
  std::vector<Matrix2c> powers(ew.w_eta.size(), Matrix2c::Identity());
  traj.states.push_back(rho0);
  for (int t = 1; t <= t_max; ++t) {
    advance(powers, ew.w_eta);
    traj.states.push_back(averaged_conjugation(powers, rho0));
  }
  return traj;
}

ChannelMatrix channel_matrix(const EuclideanWalk& ew, int t) {
  if (t < 0) throw Error(ErrorCode::ConfigInvalid, "channel_matrix: negative step");
  check_light_cone(ew.params.lattice_size, t);
  std::vector<Matrix2c> powers(ew.w_eta.size(), Matrix2c::Identity());
  for (int s = 0; s < t; ++s) advance(powers, ew.w_eta);
  ChannelMatrix out;
  out.t_to = t;
  out.L = channel_from_powers(powers);
  out.condition_number = condition_number(out.L);
  out.ill_conditioned = !(out.condition_number <= kIllConditionedThreshold);
  return out;
}

std::vector<ChannelMatrix> channel_series(const EuclideanWalk& ew, int t_max) {
  if (t_max < 0) throw Error(ErrorCode::ConfigInvalid, "channel_series: negative t_max");
  check_light_cone(ew.params.lattice_size, t_max);
  std::vector<ChannelMatrix> out;
  out.reserve(static_cast<std::size_t>(t_max) + 1);
  std::vector<Matrix2c> powers(ew.w_eta.size(), Matrix2c::Identity());
  for (int t = 0; t <= t_max; ++t) {
    if (t > 0) advance(powers, ew.w_eta);
    ChannelMatrix m;
    m.t_to = t;
    m.L = t == 0 ? Matrix4c::Identity() : channel_from_powers(powers);
    m.condition_number = condition_number(m.L);
    m.ill_conditioned = !(m.condition_number <= kIllConditionedThreshold);
    out.push_back(m);
  }
  return out;
}

ChannelMatrix intermediate_map(const ChannelMatrix& next, const ChannelMatrix& current) {
  Eigen::JacobiSVD<Matrix4c> svd(current.L, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = kPinvCutoff * sv(0);
  Eigen::Vector4d inv_sv = Eigen::Vector4d::Zero();
  for (int i = 0; i < 4; ++i) {
    if (sv(i) > cutoff) inv_sv(i) = 1.0 / sv(i);
  }
  const Matrix4c pinv = svd.matrixV() * inv_sv.cast<cplx>().asDiagonal() * svd.matrixU().adjoint();

  ChannelMatrix out;
  out.t_from = current.t_to;
  out.t_to = next.t_to;
  out.L = next.L * pinv;
  out.condition_number = sv(3) > 0.0 ? sv(0) / sv(3) : std::numeric_limits<double>::infinity();
  out.ill_conditioned = !(out.condition_number <= kIllConditionedThreshold);
  return out;
}

ChannelMatrix intermediate_map(const EuclideanWalk& ew, int t) {
  return intermediate_map(channel_matrix(ew, t + 1), channel_matrix(ew, t));
}

void require_well_conditioned(const ChannelMatrix& m) {
  if (m.ill_conditioned) {
    throw Error(ErrorCode::IllConditioned, "channel matrix L(" + std::to_string(m.t_to) + "," +
                                               std::to_string(m.t_from) + ") has condition number " +
                                               std::to_string(m.condition_number));
  }
}

Matrix2c apply_channel(const Matrix4c& L, const Matrix2c& rho) { return devec4(L * vec4(rho)); }

Matrix4c choi_matrix(const Matrix4c& L) {
  // Swap of the middle two qubits, embedded as I2 x kernel x I2 on 16-dim vec space.
  Matrix4c kernel = Matrix4c::Zero();
  kernel(0, 0) = kernel(1, 2) = kernel(2, 1) = kernel(3, 3) = 1.0;
  const ComplexMatrix u23 = kron(kron(Matrix2c::Identity(), kernel), Matrix2c::Identity());

  Vector4c phi(1.0, 0.0, 0.0, 1.0);
  phi /= std::sqrt(2.0);
  const ComplexMatrix phi_proj = phi * phi.adjoint();
  const ComplexVector out = u23 * kron(L, Matrix4c::Identity()) * u23 * vec(phi_proj);
  return devec(out);
}

Matrix4c unitary_channel(const Matrix2c& v) { return kron(v, v.conjugate()); }

Matrix4c transpose_channel() {
  Matrix4c L = Matrix4c::Zero();
  L(0, 0) = L(1, 2) = L(2, 1) = L(3, 3) = 1.0;
  return L;
}

std::string trajectory_csv(const CoinTrajectory& traj, const std::vector<std::string>& header) {
  std::ostringstream os;
  for (const auto& h : header) os << "# " << h << '\n';
  os << "t,re_00,im_00,re_01,im_01,re_10,im_10,re_11,im_11\n";
  for (std::size_t t = 0; t < traj.states.size(); ++t) {
    os << t;
    const Matrix2c& r = traj.states[t];
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) os << ',' << fmt_double(r(i, j).real()) << ',' << fmt_double(r(i, j).imag());
    }
    os << '\n';
  }
  return os.str();
}

std::string channels_json(const std::vector<ChannelMatrix>& maps) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& m : maps) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (int i = 0; i < 4; ++i) {
      nlohmann::json rr = nlohmann::json::array();
      nlohmann::json ii = nlohmann::json::array();
      for (int j = 0; j < 4; ++j) {
        rr.push_back(m.L(i, j).real());
        ii.push_back(m.L(i, j).imag());
      }
      re.push_back(rr);
      im.push_back(ii);
    }
    arr.push_back({{"t_from", m.t_from},
                   {"t_to", m.t_to},
                   {"condition_number", m.condition_number},
                   {"ill_conditioned", m.ill_conditioned},
                   {"re", re},
                   {"im", im}});
  }
  return arr.dump(2);
}

}  // namespace ptwalk
