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
#include "ptwalk/walk.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ptwalk/errors.hpp"

namespace ptwalk {

namespace {
constexpr double kExceptionalGuard = 1e-12;
}

void check_light_cone(int lattice_size, int t) {
  if (t < 0) throw Error(ErrorCode::ConfigInvalid, "negative step count");
  if (lattice_size < 2 * t + 1) {
    throw Error(ErrorCode::LightConeViolation,
                "lattice size " + std::to_string(lattice_size) + " < 2*" + std::to_string(t) +
                    "+1");
  }
}

void WalkParams::validate(int t_max) const {
  if (!std::isfinite(theta1) || !std::isfinite(theta2) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::ConfigInvalid, "walk parameters must be finite");
  }
  if (lattice_size <= 0 || lattice_size % 2 == 0) {
    throw Error(ErrorCode::ConfigInvalid,
                "lattice_size must be odd and positive, got " + std::to_string(lattice_size));
  }
  check_light_cone(lattice_size, t_max);
}

MomentumGrid::MomentumGrid(int lattice_size) {
  if (lattice_size <= 0) {
    throw Error(ErrorCode::ConfigInvalid, "momentum grid needs a positive lattice size");
  }
  spacing_ = 2.0 * std::numbers::pi / lattice_size;
  points_.reserve(static_cast<std::size_t>(lattice_size));
  for (int n = 0; n < lattice_size; ++n) points_.push_back(-std::numbers::pi + n * spacing_);
}

Matrix2c coin(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix2c m;
  m << c, kI * s, kI * s, c;
  return m;
}

Matrix2c shift_block(double k) {
  Matrix2c m = Matrix2c::Zero();
  m(0, 0) = std::polar(1.0, k);
  m(1, 1) = std::polar(1.0, -k);
  return m;
}

Matrix2c gain_loss(double gamma) {
  Matrix2c m = Matrix2c::Zero();
  m(0, 0) = std::exp(gamma);
  m(1, 1) = std::exp(-gamma);
  return m;
}

Matrix2c walk_block(double k, const WalkParams& p) {
  const Matrix2c half = coin(p.theta1 / 2.0);
  const Matrix2c s = shift_block(k);
  return half * s * gain_loss(-p.gamma) * coin(p.theta2) * s * gain_loss(p.gamma) * half;
}

double spectral_a(double k, const WalkParams& p) {
  return std::cos(2.0 * k) * std::cos(p.theta1) * std::cos(p.theta2) -
         std::cosh(2.0 * p.gamma) * std::sin(p.theta1) * std::sin(p.theta2);
}

double gamma_pt(double theta1, double theta2) {
  const double denom = std::sin(theta1) * std::sin(theta2);
  if (denom == 0.0) {
    throw Error(ErrorCode::NoBreaking, "gamma_pt: sin(theta1) sin(theta2) vanishes");
  }
  double arg = (std::cos(theta1) * std::cos(theta2) - 1.0) / denom;
  if (arg < 1.0 - 1e-12) {
    throw Error(ErrorCode::NoBreaking,
                "gamma_pt: acosh argument " + std::to_string(arg) +
                    " < 1 (theta1 and theta2 need opposite signs)");
  }
  arg = std::max(arg, 1.0);
  return 0.5 * std::acosh(arg);
}

bool is_unbroken(const WalkParams& p) {
  const MomentumGrid grid(p.lattice_size);
  for (double k : grid.points()) {
    if (!(std::abs(spectral_a(k, p)) < 1.0 - kExceptionalGuard)) return false;
  }
  return true;
}

BlockOperator walk_operator(const WalkParams& p) {
  BlockOperator w{MomentumGrid(p.lattice_size)};
  for (std::size_t n = 0; n < w.size(); ++n) w[n] = walk_block(w.grid[n], p);
  return w;
}

BlockOperator hamiltonian(const WalkParams& p) {
  if (!is_unbroken(p)) {
    throw Error(ErrorCode::BrokenRegime, "hamiltonian: |a(k)| >= 1 somewhere on the grid");
  }
  BlockOperator h{MomentumGrid(p.lattice_size)};
  for (std::size_t n = 0; n < h.size(); ++n) {
    h[n] = herm_log_unitary_like(walk_block(h.grid[n], p));
  }
  return h;
}

}  // namespace ptwalk
