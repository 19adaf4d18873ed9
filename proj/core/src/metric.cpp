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
#include "ptwalk/metric.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "ptwalk/errors.hpp"

namespace ptwalk {

namespace {

constexpr double kExceptionalGuard = 1e-12;
constexpr double kTransportTol = 1e-9;

// Null vector of the 2x2 singular matrix m, from whichever row is larger.
Vector2c null_vector(const Matrix2c& m) {
  const Vector2c from_row0(-m(0, 1), m(0, 0));
  const Vector2c from_row1(-m(1, 1), m(1, 0));
  return from_row0.norm() >= from_row1.norm() ? from_row0 : from_row1;
}

// Eigenvector of W^dagger = exp(i H^dagger) for the H^dagger eigenvalue
// lambda, used where the closed form degenerates to a near-zero vector.
Vector2c eigvec_from_walk(double k, const WalkParams& p, double lambda) {
  const Matrix2c wd = walk_block(k, p).adjoint();
  return null_vector(wd - std::polar(1.0, lambda) * Matrix2c::Identity());
}

Vector2c closed_form_or_fallback(const Vector2c& r, double scale, double k, const WalkParams& p,
                                 double lambda) {
  if (r.norm() > 1e-8 * scale) return r.normalized();
  return eigvec_from_walk(k, p, lambda).normalized();
}

ComplexMatrix checked_inverse(const ComplexMatrix& g, const char* who) {
  Eigen::FullPivLU<ComplexMatrix> lu(g);
  if (!lu.isInvertible() || lu.rcond() < 1e-14) {
    throw Error(ErrorCode::SingularMetric, std::string(who) + ": metric is singular");
  }
  return lu.inverse();
}

void check_metric_block(const Matrix2c& g) {
  if (hermiticity_defect(g) > 1e-10 * std::max(1.0, g.norm())) {
    throw Error(ErrorCode::NotPositive, "metric block is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix2c> es(0.5 * (g + g.adjoint()), Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues().minCoeff() > 0.0)) {
    throw Error(ErrorCode::NotPositive, "metric block is not positive-definite");
  }
}

}  // namespace

LeftEigenPair left_eigvecs(double k, const WalkParams& p) {
  if (!is_unbroken(p)) {
    throw Error(ErrorCode::BrokenRegime, "left_eigvecs: walk is outside the unbroken regime");
  }
  const double a = spectral_a(k, p);
  if (std::abs(a) >= 1.0 - kExceptionalGuard) {
    throw Error(ErrorCode::DegenerateAtK, "left_eigvecs: |a(k)| >= 1 - 1e-12");
  }
  LeftEigenPair out;
  out.k = k;
  out.eps = std::acos(a);
  out.d1 = std::cosh(2.0 * p.gamma) * std::cos(p.theta1) * std::sin(p.theta2) +
           std::sin(p.theta1) * std::cos(p.theta2) * std::cos(2.0 * k);
  // Sign tied to the G(-gamma) ... G(gamma) ordering of walk_block.
  out.d2 = std::sin(p.theta2) * std::sinh(2.0 * p.gamma);
  out.d3 = std::cos(p.theta2) * std::sin(2.0 * k);

  const double s = std::sin(out.eps);
  const double head = out.d1 + out.d2;
  const double scale = 1.0 + std::abs(out.d1) + std::abs(out.d2) + std::abs(out.d3);
  out.r_plus = closed_form_or_fallback(Vector2c(head, -out.d3 - s), scale, k, p, out.eps);
  out.r_minus = closed_form_or_fallback(Vector2c(head, -out.d3 + s), scale, k, p, -out.eps);
  return out;
}

MetricSpec MetricSpec::flat(std::string name) {
  MetricSpec s;
  s.kind = Kind::Flat;
  s.name = std::move(name);
  return s;
}

MetricSpec MetricSpec::random_xy(std::uint64_t seed, std::string name, double lower,
                                 double upper) {
  MetricSpec s;
  s.kind = Kind::RandomXY;
  s.seed = seed;
  s.lower = lower;
  s.upper = upper;
  s.name = std::move(name);
  return s;
}

MetricSpec MetricSpec::explicit_xy(std::vector<double> x, std::vector<double> y,
                                   std::string name) {
  MetricSpec s;
  s.kind = Kind::Explicit;
  s.x = std::move(x);
  s.y = std::move(y);
  s.name = std::move(name);
  return s;
}

std::string MetricSpec::kind_name() const {
  switch (kind) {
    case Kind::Flat: return "flat";
    case Kind::RandomXY: return "random_xy";
    case Kind::Explicit: return "explicit";
  }
  return "unknown";
}

std::string MetricSpec::label() const {
  if (!name.empty()) return name;
  if (kind == Kind::RandomXY) return "random_xy_s" + std::to_string(seed);
  return kind_name();
}

BlockOperator build_metric(const WalkParams& p, const MetricSpec& spec) {
  if (!is_unbroken(p)) {
    throw Error(ErrorCode::BrokenRegime, "build_metric: walk is outside the unbroken regime");
  }
  BlockOperator g{MomentumGrid(p.lattice_size)};
  const std::size_t n = g.size();

  std::vector<double> x(n, 1.0);
  std::vector<double> y(n, 1.0);
  switch (spec.kind) {
    case MetricSpec::Kind::Flat:
      break;
    case MetricSpec::Kind::RandomXY: {
      if (!(spec.lower > 0.0) || !(spec.upper >= spec.lower)) {
        throw Error(ErrorCode::ConfigInvalid, "random_xy needs 0 < lower <= upper");
      }
      // Single stream drawn in grid order: x(k_0), y(k_0), x(k_1), ...
      std::mt19937_64 rng(spec.seed);
      std::uniform_real_distribution<double> dist(spec.lower, spec.upper);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = dist(rng);
        y[i] = dist(rng);
      }
      break;
    }
    case MetricSpec::Kind::Explicit:
      if (spec.x.size() != n || spec.y.size() != n) {
        throw Error(ErrorCode::ConfigInvalid,
                    "explicit metric tables need one (x, y) pair per grid point");
      }
      x = spec.x;
      y = spec.y;
      for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
          throw Error(ErrorCode::ConfigInvalid, "explicit metric weights must be positive");
        }
      }
      break;
  }

  for (std::size_t i = 0; i < n; ++i) {
    const LeftEigenPair le = left_eigvecs(g.grid[i], p);
    Matrix2c block = x[i] * (le.r_plus * le.r_plus.adjoint() +
                             y[i] * le.r_minus * le.r_minus.adjoint());
    block /= block.trace().real();
    g[i] = 0.5 * (block + block.adjoint());
  }
  return g;
}

BlockOperator eta(const BlockOperator& g) {
  BlockOperator out{g.grid};
  for (std::size_t i = 0; i < g.size(); ++i) {
    check_metric_block(g[i]);
    out[i] = herm_sqrt(g[i]);
  }
  return out;
}

ComplexMatrix generalized_dagger(const ComplexMatrix& x, const ComplexMatrix& g) {
  return checked_inverse(g, "generalized_dagger") * x.adjoint() * g;
}

double g_trace_norm(const ComplexMatrix& x, const ComplexMatrix& g) {
  const ComplexMatrix root = herm_sqrt(g);
  const ComplexMatrix root_inv = checked_inverse(root, "g_trace_norm");
  return trace_norm(root * x * root_inv);
}

double pseudo_hermiticity_residual(const ComplexMatrix& h, const ComplexMatrix& g) {
  return (h.adjoint() * g - g * h).norm();
}

MetricTransport metric_transport(const ComplexMatrix& g, const ComplexMatrix& g_prime,
                                 const ComplexMatrix& h) {
  const EigenSystem es = eig(h, false);
  const ComplexMatrix& v = es.right;
  const ComplexMatrix d = v.adjoint() * g * v;
  const ComplexMatrix d_prime = v.adjoint() * g_prime * v;
  const Eigen::Index n = h.rows();

  // Compatible metrics are diagonal in the eigenbasis of H.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double off = std::max(std::abs(d(i, j)) / std::sqrt(std::abs(d(i, i) * d(j, j))),
                                  std::abs(d_prime(i, j)) /
                                      std::sqrt(std::abs(d_prime(i, i) * d_prime(j, j))));
      if (off > kTransportTol) {
        throw Error(ErrorCode::IncompatibleMetrics,
                    "metric_transport: metric is not diagonal in the eigenbasis of H");
      }
    }
  }
  ComplexVector t_diag(n);
  for (Eigen::Index i = 0; i < n; ++i) t_diag(i) = std::sqrt(d_prime(i, i).real() / d(i, i).real());

  const ComplexMatrix v_inv = v.inverse();
  MetricTransport out;
  out.t = v * t_diag.asDiagonal() * v_inv;
  const ComplexMatrix t_inv = v * t_diag.cwiseInverse().asDiagonal() * v_inv;
  const ComplexMatrix root = herm_sqrt(g);
  const ComplexMatrix root_prime = herm_sqrt(g_prime);
  out.u = root_prime * t_inv * checked_inverse(root, "metric_transport");

  const double unitarity =
      (out.u.adjoint() * out.u - ComplexMatrix::Identity(n, n)).norm();
  if (unitarity > kTransportTol) {
    throw Error(ErrorCode::IncompatibleMetrics,
                "metric_transport: U deviates from unitarity by " + std::to_string(unitarity));
  }
  return out;
}

BlockMetricTransport metric_transport(const BlockOperator& g, const BlockOperator& g_prime,
                                      const BlockOperator& h) {
  if (g.size() != g_prime.size() || g.size() != h.size()) {
    throw Error(ErrorCode::ShapeMismatch, "metric_transport: block counts differ");
  }
  BlockMetricTransport out{BlockOperator{h.grid}, BlockOperator{h.grid}};
  for (std::size_t i = 0; i < h.size(); ++i) {
    const MetricTransport mt = metric_transport(g[i], g_prime[i], h[i]);
    out.t[i] = mt.t;
    out.u[i] = mt.u;
  }
  return out;
}

double separability_defect(const BlockOperator& g) {
  if (g.size() == 0) return 0.0;
  Matrix2c mean = Matrix2c::Zero();
  std::vector<Matrix2c> normalized(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    normalized[i] = g[i] / g[i].trace();
    mean += normalized[i];
  }
  mean /= static_cast<double>(g.size());
  double worst = 0.0;
  for (const auto& b : normalized) worst = std::max(worst, (b - mean).norm());
  return worst;
}

double verify_metric_action(const ComplexMatrix& g, const ComplexMatrix& psi_basis,
                            const ComplexMatrix& basis, std::uint64_t seed, int samples) {
  const Eigen::Index n = g.rows();
  if (g.cols() != n || basis.rows() != n || basis.cols() != n || psi_basis.rows() != n ||
      psi_basis.cols() != n) {
    throw Error(ErrorCode::ShapeMismatch, "verify_metric_action: dimension mismatch");
  }
  const Eigen::PartialPivLU<ComplexMatrix> coeffs(psi_basis);
  // <a|b> in the metric space: coefficient vectors in psi_basis, Euclidean product.
  auto metric_inner = [&](const ComplexVector& a, const ComplexVector& b) {
    return coeffs.solve(a).dot(coeffs.solve(b));
  };
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    ComplexVector psi(n);
    for (auto& c : psi) c = cplx(normal(rng), normal(rng));
    const ComplexVector direct = g * psi;
    ComplexVector expanded = ComplexVector::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const ComplexVector xi = basis.col(k);
      expanded += metric_inner(xi, psi) * xi;
    }
    worst = std::max(worst, (direct - expanded).norm() / direct.norm());
  }
  return worst;
}

cplx metric_trace(const ComplexMatrix& a, const ComplexMatrix& g, const ComplexMatrix& psi_basis) {
  cplx sum = 0.0;
  for (Eigen::Index i = 0; i < psi_basis.cols(); ++i) {
    ComplexVector psi = psi_basis.col(i);
    psi /= std::sqrt(psi.dot(g * psi).real());
    const ComplexVector phi = g * psi;
    sum += phi.dot(a * psi);
  }
  return sum;
}

}  // namespace ptwalk
