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

#include <cstddef>
#include <vector>

#include "ptwalk/linalg.hpp"

namespace ptwalk {

// Parameters of the split-step gain/loss walk. gamma is the exponent, so the
// gain factor is e^gamma; lattice_size must be odd.
struct WalkParams {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double gamma = 0.0;
  int lattice_size = 101;

  // Throws ConfigInvalid for non-finite values or an even/non-positive
  // lattice, LightConeViolation if lattice_size < 2 * t_max + 1.
  void validate(int t_max = 0) const;
};

void check_light_cone(int lattice_size, int t);

// k_n = -pi + n * 2pi/L, n = 0..L-1.
class MomentumGrid {
 public:
  explicit MomentumGrid(int lattice_size);

  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t n) const { return points_[n]; }
  double spacing() const noexcept { return spacing_; }
  const std::vector<double>& points() const noexcept { return points_; }

 private:
  std::vector<double> points_;
  double spacing_;
};

// One 2x2 coin-space block per momentum.
struct BlockOperator {
  MomentumGrid grid;
  std::vector<Matrix2c> blocks;

  explicit BlockOperator(MomentumGrid g) : grid(std::move(g)), blocks(grid.size()) {}

  std::size_t size() const noexcept { return blocks.size(); }
  Matrix2c& operator[](std::size_t n) { return blocks[n]; }
  const Matrix2c& operator[](std::size_t n) const { return blocks[n]; }
};

// [[cos t, i sin t], [i sin t, cos t]]
Matrix2c coin(double theta);
// diag(e^{ik}, e^{-ik})
Matrix2c shift_block(double k);
// diag(e^gamma, e^{-gamma})
Matrix2c gain_loss(double gamma);

// C(theta1/2) S(k) G(-gamma) C(theta2) S(k) G(gamma) C(theta1/2)
Matrix2c walk_block(double k, const WalkParams& p);

// Half-trace of the walk block; eigenvalues are a +- sqrt(a^2 - 1).
double spectral_a(double k, const WalkParams& p);

// Non-Hermiticity at which a(k = 0) reaches 1. Throws NoBreaking when the
// coin angles admit no breaking point.
double gamma_pt(double theta1, double theta2);

// |a(k)| < 1 - 1e-12 on every grid point.
bool is_unbroken(const WalkParams& p);

BlockOperator walk_operator(const WalkParams& p);

// Blockwise H_c(k) = i log W_c(k). Throws BrokenRegime outside the unbroken
// regime.
BlockOperator hamiltonian(const WalkParams& p);

}  // namespace ptwalk
