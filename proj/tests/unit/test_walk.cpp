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
#include <functional>

#include <doctest.h>

#include "helpers.hpp"
#include "oracle_values.hpp"
#include "ptwalk/errors.hpp"
#include "ptwalk/walk.hpp"

using namespace ptwalk;
using testing::max_abs;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ConfigInvalid;
}

}  // namespace

TEST_CASE("factor matrices") {
  const Matrix2c c = coin(0.37);
  CHECK(max_abs(c.adjoint() * c - Matrix2c::Identity()) < 1e-15);
  CHECK(std::abs(c.determinant() - 1.0) < 1e-15);
  CHECK(max_abs(shift_block(0.4) * shift_block(-0.4) - Matrix2c::Identity()) < 1e-15);
  CHECK(std::abs(gain_loss(0.3)(0, 0) - std::exp(0.3)) < 1e-15);
  CHECK(max_abs(coin(0.0) - Matrix2c::Identity()) == 0.0);
}

TEST_CASE("reference values of the factors") {
  Matrix2c isx;
  isx << 0.0, kI, kI, 0.0;
  CHECK(max_abs(coin(M_PI / 2) - isx) < 1e-15);
  CHECK(std::abs(coin(M_PI / 4)(0, 1) - cplx(0.0, 0.7071067811865476)) < 1e-15);
  CHECK(max_abs(shift_block(M_PI) + Matrix2c::Identity()) < 1e-15);
  CHECK(std::abs(shift_block(M_PI / 2)(1, 1) + kI) < 1e-15);
  CHECK(std::abs(gain_loss(std::log(1.2))(1, 1) - 1.0 / 1.2) < 1e-15);
  CHECK(max_abs(gain_loss(-0.4) - gain_loss(0.4).inverse()) < 1e-15);
}

TEST_CASE("PT relation and spectral symmetries") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int i = 0; i < 50; ++i) {
    const WalkParams p{u(rng), u(rng), 0.3 * u(rng), 101};
    const double k = u(rng);
    const Matrix2c w = walk_block(k, p);
    CHECK(max_abs(w.conjugate() * w - Matrix2c::Identity()) < 1e-10);
    CHECK(std::abs(spectral_a(k, p) - spectral_a(-k, p)) < 1e-14);
    CHECK(std::abs(spectral_a(k, p) - spectral_a(k + M_PI, p)) < 1e-12);
  }
}

TEST_CASE("spectral_a reference values") {
  const WalkParams p = testing::params(1.0);
  CHECK(spectral_a(0.0, p) == doctest::Approx(std::cos(3 * M_PI / 28)).epsilon(1e-14));
  CHECK(spectral_a(0.0, p) == doctest::Approx(0.943883).epsilon(1e-6));
  const EigenSystem es = eig(walk_block(0.0, p));
  for (Eigen::Index i = 0; i < 2; ++i) {
    CHECK(std::abs(std::abs(std::arg(es.eigenvalues(i))) - 3 * M_PI / 28) < 1e-12);
  }
  CHECK(std::abs(spectral_a(0.0, WalkParams{0.6, -0.6, 0.0, 101}) - 1.0) < 1e-15);
  CHECK(std::abs(spectral_a(0.0, testing::params(1.3499)) - 1.0) < 1e-3);
  CHECK(gamma_pt(0.6, -0.6) == doctest::Approx(0.0));
  CHECK_FALSE(is_unbroken(testing::params(1.5)));
  CHECK_THROWS_AS(gamma_pt(M_PI / 4, M_PI / 7), Error);
}

TEST_CASE("momentum grid is the half-shifted grid") {
  const MomentumGrid g(5);
  CHECK(g.size() == 5);
  CHECK(g[0] == doctest::Approx(-M_PI));
  CHECK(g.spacing() == doctest::Approx(2 * M_PI / 5));
  CHECK(g[4] == doctest::Approx(-M_PI + 8 * M_PI / 5));
}

TEST_CASE("walk block has unit determinant and trace 2a") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int i = 0; i < 50; ++i) {
    const WalkParams p{u(rng), u(rng), 0.2 * u(rng), 101};
    const double k = u(rng);
    const Matrix2c w = walk_block(k, p);
    CHECK(std::abs(w.determinant() - 1.0) < 1e-12);
    CHECK(std::abs(w.trace() - 2.0 * spectral_a(k, p)) < 1e-12);
  }
  // gamma = 0 is unitary
  const Matrix2c w0 = walk_block(0.3, testing::params(1.0));
  CHECK(max_abs(w0.adjoint() * w0 - Matrix2c::Identity()) < 1e-14);
}

TEST_CASE("breaking point") {
  const double g = gamma_pt(testing::kTheta1, testing::kTheta2);
  CHECK(std::exp(g) == doctest::Approx(oracle::kExpGammaPt).epsilon(1e-13));
  CHECK(std::exp(g) >= 1.345);
  CHECK(std::exp(g) <= 1.355);
  WalkParams p = testing::params(1.0);
  p.gamma = g;
  CHECK(std::abs(spectral_a(0.0, p) - 1.0) < 1e-10);

  CHECK(code_of([] { gamma_pt(0.0, 0.5); }) == ErrorCode::NoBreaking);
  CHECK(code_of([] { gamma_pt(M_PI / 2, M_PI / 2); }) == ErrorCode::NoBreaking);
}

TEST_CASE("unbroken regime classification") {
  CHECK(is_unbroken(testing::params(1.0)));
  CHECK(is_unbroken(testing::params(1.2)));
  CHECK(is_unbroken(testing::params(1.3)));
  CHECK_FALSE(is_unbroken(testing::params(1.4)));
  CHECK(code_of([] { hamiltonian(testing::params(1.4)); }) == ErrorCode::BrokenRegime);
}

TEST_CASE("hamiltonian generates the walk and has real spectrum") {
  for (double eg : {1.0, 1.2, 1.3}) {
    const WalkParams p = testing::params(eg, 31);
    const BlockOperator h = hamiltonian(p);
    const BlockOperator w = walk_operator(p);
    for (std::size_t n = 0; n < h.size(); ++n) {
      CHECK(max_abs(expm_minus_i(h[n]) - w[n]) < 1e-11);
      const EigenSystem es = eig(h[n]);
      const double eps = std::acos(spectral_a(h.grid[n], p));
      for (Eigen::Index i = 0; i < 2; ++i) {
        CHECK(std::abs(es.eigenvalues(i).imag()) < 1e-10);
        CHECK(std::abs(std::abs(es.eigenvalues(i).real()) - eps) < 1e-10);
      }
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK(code_of([] { WalkParams{0.1, 0.2, 0.0, 100}.validate(); }) == ErrorCode::ConfigInvalid);
  CHECK(code_of([] { WalkParams{NAN, 0.2, 0.0, 101}.validate(); }) == ErrorCode::ConfigInvalid);
  CHECK(code_of([] { WalkParams{0.1, 0.2, 0.0, 21}.validate(11); }) == ErrorCode::LightConeViolation);
  WalkParams{0.1, 0.2, 0.0, 21}.validate(10);
  CHECK(code_of([] { check_light_cone(21, 11); }) == ErrorCode::LightConeViolation);
}
