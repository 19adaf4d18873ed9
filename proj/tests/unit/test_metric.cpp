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
#include <doctest.h>

#include "helpers.hpp"
#include "oracle_values.hpp"
#include "ptwalk/errors.hpp"
#include "ptwalk/metric.hpp"

using namespace ptwalk;
using testing::max_abs;

namespace {

MetricSpec oracle_explicit(int lattice) {
  std::vector<double> x, y;
  for (int n = 0; n < lattice; ++n) {
    x.push_back(0.5 + (n % 7) / 5.0);
    y.push_back(0.3 + (n % 5) / 4.0);
  }
  return MetricSpec::explicit_xy(x, y);
}

void check_block(const Matrix2c& g, const double (&expected)[8], double tol) {
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CHECK(std::abs(g(i, j).real() - expected[4 * i + 2 * j]) < tol);
      CHECK(std::abs(g(i, j).imag() - expected[4 * i + 2 * j + 1]) < tol);
    }
  }
}

}  // namespace

TEST_CASE("closed-form left eigenvectors") {
  for (double eg : {1.0, 1.1, 1.2, 1.3, 1.34}) {
    const WalkParams p = testing::params(eg);
    const BlockOperator h = hamiltonian(p);
    for (std::size_t n = 0; n < h.size(); ++n) {
      const LeftEigenPair le = left_eigvecs(h.grid[n], p);
      const Matrix2c hd = h[n].adjoint();
      CHECK(std::abs(le.r_plus.norm() - 1.0) < 1e-12);
      CHECK(std::abs(le.r_minus.norm() - 1.0) < 1e-12);
      CHECK((hd * le.r_plus - le.eps * le.r_plus).norm() < 1e-9);
      CHECK((hd * le.r_minus + le.eps * le.r_minus).norm() < 1e-9);
    }
  }
}

TEST_CASE("left eigenvectors at a Hermitian point are orthonormal") {
  const WalkParams p = testing::params(1.0);
  const LeftEigenPair le = left_eigvecs(0.4, p);
  CHECK(std::abs(le.r_plus.dot(le.r_minus)) < 1e-12);
}

TEST_CASE("left_eigvecs errors") {
  try {
    // a(pi/2) = -1 lies between grid points, so the grid itself is unbroken
    left_eigvecs(M_PI / 2, WalkParams{M_PI / 5, M_PI / 5, 0.0, 101});
    FAIL("expected DegenerateAtK");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateAtK);
  }
  try {
    left_eigvecs(0.1, testing::params(1.4));
    FAIL("expected BrokenRegime");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BrokenRegime);
  }
}

TEST_CASE("build_metric matches the numerical oracle") {
  const WalkParams p = testing::params(1.2);
  const BlockOperator g = build_metric(p, oracle_explicit(101));
  check_block(g[0], oracle::kMetric12Block0, 1e-12);
  check_block(g[17], oracle::kMetric12Block17, 1e-12);
  check_block(g[50], oracle::kMetric12Block50, 1e-12);
  check_block(g[88], oracle::kMetric12Block88, 1e-12);
}

TEST_CASE("metric blocks are unit-trace and make H pseudo-Hermitian") {
  for (double eg : {1.0, 1.2, 1.3}) {
    const WalkParams p = testing::params(eg);
    const BlockOperator h = hamiltonian(p);
    for (const MetricSpec& spec : {MetricSpec::flat(), MetricSpec::random_xy(11), MetricSpec::random_xy(23),
                                   oracle_explicit(101)}) {
      const BlockOperator g = build_metric(p, spec);
      const BlockOperator root = eta(g);
      for (std::size_t n = 0; n < g.size(); ++n) {
        CHECK(std::abs(g[n].trace() - 1.0) < 1e-12);
        CHECK(hermiticity_defect(g[n]) < 1e-14);
        CHECK(pseudo_hermiticity_residual(h[n], g[n]) <= 1e-9);
        CHECK((root[n] * root[n] - g[n]).norm() <= 1e-10);
      }
    }
  }
}

TEST_CASE("flat metric at gamma = 0 is proportional to the identity") {
  const BlockOperator g = build_metric(testing::params(1.0), MetricSpec::flat());
  for (const auto& b : g.blocks) CHECK(max_abs(b - 0.5 * Matrix2c::Identity()) < 1e-14);
}

TEST_CASE("random metrics are seeded") {
  const WalkParams p = testing::params(1.2);
  const BlockOperator a = build_metric(p, MetricSpec::random_xy(11));
  const BlockOperator b = build_metric(p, MetricSpec::random_xy(11));
  const BlockOperator c = build_metric(p, MetricSpec::random_xy(12));
  double same = 0.0, diff = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    same = std::max(same, max_abs(a[n] - b[n]));
    diff = std::max(diff, max_abs(a[n] - c[n]));
  }
  CHECK(same == 0.0);
  CHECK(diff > 1e-3);
}

TEST_CASE("metric spec validation") {
  const WalkParams p = testing::params(1.2, 11);
  CHECK_THROWS_AS(build_metric(p, MetricSpec::explicit_xy({1.0}, {1.0})), Error);
  CHECK_THROWS_AS(build_metric(p, MetricSpec::random_xy(1, "", 0.0, 1.0)), Error);
  CHECK_THROWS_AS(build_metric(testing::params(1.4), MetricSpec::flat()), Error);
}

TEST_CASE("generalized dagger") {
  std::mt19937_64 rng(8);
  const auto inst = testing::random_pseudo_hermitian(rng, 3);
  const ComplexMatrix a = testing::random_matrix(rng, 3, 3);
  const ComplexMatrix b = testing::random_matrix(rng, 3, 3);
  const ComplexMatrix& g = inst.g;
  CHECK(max_abs(generalized_dagger(generalized_dagger(a, g), g) - a) < 1e-10);
  CHECK(max_abs(generalized_dagger(a * b, g) - generalized_dagger(b, g) * generalized_dagger(a, g)) < 1e-9);
  // H is self-adjoint under its own metric
  CHECK(max_abs(generalized_dagger(inst.h, g) - inst.h) < 1e-10);
  // identity metric reduces to the ordinary adjoint
  CHECK(max_abs(generalized_dagger(a, ComplexMatrix::Identity(3, 3)) - a.adjoint()) < 1e-14);
  try {
    generalized_dagger(a, ComplexMatrix::Zero(3, 3));
    FAIL("expected SingularMetric");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularMetric);
  }
}

TEST_CASE("metric trace norm") {
  std::mt19937_64 rng(12);
  const ComplexMatrix x = testing::random_matrix(rng, 2, 2);
  CHECK(g_trace_norm(x, ComplexMatrix::Identity(2, 2)) == doctest::Approx(trace_norm(x)));

  // rho built from a G-orthonormal basis has tr(rho G) = 1, so rho G has unit norm
  const auto inst = testing::random_pseudo_hermitian(rng, 3);
  const ComplexMatrix& b = inst.psi_basis;
  const ComplexMatrix rho = 0.5 * b.col(0) * b.col(0).adjoint() + 0.3 * b.col(1) * b.col(1).adjoint() +
                            0.2 * b.col(2) * b.col(2).adjoint();
  CHECK(std::abs((rho * inst.g).trace() - 1.0) < 1e-12);
  CHECK(g_trace_norm(rho * inst.g, inst.g) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("metric transport between compatible metrics") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = testing::random_pseudo_hermitian(rng, 3);
    auto other = inst;
    std::uniform_real_distribution<double> u(0.2, 3.0);
    for (Eigen::Index i = 0; i < 3; ++i) other.d(i) = u(rng);
    const ComplexMatrix vinv = inst.v.inverse();
    const ComplexMatrix g2 = vinv.adjoint() * other.d.cast<cplx>().asDiagonal() * vinv;

    const MetricTransport mt = metric_transport(inst.g, g2, inst.h);
    CHECK(max_abs(mt.t * inst.h - inst.h * mt.t) < 1e-9);
    CHECK(max_abs(mt.t.adjoint() * inst.g * mt.t - g2) < 1e-9);
    CHECK(max_abs(mt.u.adjoint() * mt.u - ComplexMatrix::Identity(3, 3)) < 1e-9);
    // eta' = U eta T
    CHECK(max_abs(herm_sqrt(0.5 * (g2 + g2.adjoint())) - mt.u * herm_sqrt(inst.g) * mt.t) < 1e-9);
  }
}

TEST_CASE("metric transport relates Euclidean walks") {
  const WalkParams p = testing::params(1.2, 31);
  const BlockOperator h = hamiltonian(p);
  const BlockOperator w = walk_operator(p);
  const BlockOperator g = build_metric(p, MetricSpec::flat());
  const BlockOperator g2 = build_metric(p, MetricSpec::random_xy(5));
  const BlockMetricTransport mt = metric_transport(g, g2, h);
  const BlockOperator e = eta(g);
  const BlockOperator e2 = eta(g2);
  for (std::size_t n = 0; n < h.size(); ++n) {
    const Matrix2c we = e[n] * w[n] * e[n].inverse();
    const Matrix2c we2 = e2[n] * w[n] * e2[n].inverse();
    CHECK(max_abs(we2 - mt.u[n] * we * mt.u[n].adjoint()) < 1e-9);
  }
}

TEST_CASE("metric transport rejects incompatible metrics") {
  std::mt19937_64 rng(30);
  const auto inst = testing::random_pseudo_hermitian(rng, 2);
  try {
    metric_transport(inst.g, ComplexMatrix::Identity(2, 2), inst.h);
    FAIL("expected IncompatibleMetrics");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IncompatibleMetrics);
  }
}

TEST_CASE("separability defect") {
  CHECK(separability_defect(build_metric(testing::params(1.0), MetricSpec::flat())) < 1e-12);
  CHECK(separability_defect(build_metric(testing::params(1.2), MetricSpec::flat())) > 1e-3);
  CHECK(separability_defect(build_metric(testing::params(1.2), MetricSpec::random_xy(11))) > 1e-3);
}

TEST_CASE("metric action and metric trace on random instances") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    const auto inst = testing::random_pseudo_hermitian(rng, n);
    const ComplexMatrix xi = testing::random_unitary(rng, n);
    CHECK(verify_metric_action(inst.g, inst.psi_basis, xi, 7, 8) < 1e-10);

    const ComplexMatrix a = testing::random_matrix(rng, n, n);
    CHECK(std::abs(metric_trace(a, inst.g, inst.v) - a.trace()) < 1e-9 * (1.0 + std::abs(a.trace())));
  }
}
