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
#include "ptwalk/linalg.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ptwalk/errors.hpp"

namespace ptwalk {

namespace {

constexpr double kPairingGap = 1e-9;
constexpr double kBranchGuard = 1e-9;

void require_square(const ComplexMatrix& a, const char* who) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorCode::ShapeMismatch,
                std::string(who) + ": expected a non-empty square matrix, got " +
                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

void require_hermitian(const ComplexMatrix& a, const char* who) {
  const double scale = std::max(1.0, a.norm());
  if (hermiticity_defect(a) > 1e-10 * scale) {
    throw Error(ErrorCode::NotPositive, std::string(who) + ": input is not Hermitian");
  }
}

}  // namespace

EigenSystem eig(const ComplexMatrix& a, bool want_left) {
  require_square(a, "eig");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, true);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::DegeneratePairing, "eig: eigen solver did not converge");
  }
  EigenSystem out;
  out.eigenvalues = solver.eigenvalues();
  out.right = solver.eigenvectors();
  for (Eigen::Index j = 0; j < out.right.cols(); ++j) out.right.col(j).normalize();
  if (!want_left) return out;

  const Eigen::Index n = a.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(out.eigenvalues(i) - out.eigenvalues(j)) < kPairingGap) {
        throw Error(ErrorCode::DegeneratePairing,
                    "eig: eigenvalues " + std::to_string(i) + " and " + std::to_string(j) +
                        " are closer than 1e-9; left/right pairing is ambiguous");
      }
    }
  }

  Eigen::ComplexEigenSolver<ComplexMatrix> adj(a.adjoint(), true);
  if (adj.info() != Eigen::Success) {
    throw Error(ErrorCode::DegeneratePairing, "eig: adjoint eigen solver did not converge");
  }
  ComplexMatrix left(n, n);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double d = std::abs(std::conj(adj.eigenvalues()(j)) - out.eigenvalues(i));
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    ComplexVector phi = adj.eigenvectors().col(best);
    const cplx overlap = phi.dot(out.right.col(i));  // <phi|psi>
    if (std::abs(overlap) < 1e-14) {
      throw Error(ErrorCode::DegeneratePairing, "eig: left/right overlap vanishes");
    }
    left.col(i) = phi / std::conj(overlap);
  }
  out.left = std::move(left);
  return out;
}

double eig_residual(const ComplexMatrix& a, const EigenSystem& es) {
  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
  double worst = 0.0;
  for (Eigen::Index j = 0; j < es.right.cols(); ++j) {
    const ComplexVector v = es.right.col(j);
    const double r = (a * v - es.eigenvalues(j) * v).norm() / (scale * v.norm());
    worst = std::max(worst, r);
  }
  return worst;
}

ComplexMatrix herm_sqrt(const ComplexMatrix& a) {
  require_square(a, "herm_sqrt");
  require_hermitian(a, "herm_sqrt");
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  Eigen::VectorXd w = solver.eigenvalues();
  if (w.minCoeff() < -1e-8) {
    throw Error(ErrorCode::NotPositive,
                "herm_sqrt: minimum eigenvalue " + std::to_string(w.minCoeff()) + " < -1e-8");
  }
  for (auto& x : w) x = x > 0.0 ? std::sqrt(x) : 0.0;
  const ComplexMatrix& v = solver.eigenvectors();
  return v * w.cast<cplx>().asDiagonal() * v.adjoint();
}

ComplexMatrix herm_log_unitary_like(const ComplexMatrix& a) {
  require_square(a, "herm_log_unitary_like");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, true);
  const ComplexVector& lambda = solver.eigenvalues();
  const ComplexMatrix& v = solver.eigenvectors();
  ComplexVector h(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double phase = std::arg(lambda(i));
    if (std::numbers::pi - std::abs(phase) < kBranchGuard) {
      throw Error(ErrorCode::BranchAmbiguity,
                  "herm_log_unitary_like: eigenvalue phase within 1e-9 of +-pi");
    }
    // exp(-i h) = lambda  =>  h = i log(lambda)
    h(i) = kI * cplx(std::log(std::abs(lambda(i))), phase);
  }
  Eigen::FullPivLU<ComplexMatrix> lu(v);
  if (lu.rcond() < 1e-12) {
    throw Error(ErrorCode::DegeneratePairing,
                "herm_log_unitary_like: eigenvectors nearly dependent (defective input)");
  }
  return v * h.asDiagonal() * lu.inverse();
}

ComplexMatrix expm_minus_i(const ComplexMatrix& h) {
  require_square(h, "expm_minus_i");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(h, true);
  const ComplexMatrix& v = solver.eigenvectors();
  ComplexVector e = (-kI * solver.eigenvalues()).array().exp();
  return v * e.asDiagonal() * v.inverse();
}

ComplexVector vec(const ComplexMatrix& m) {
  require_square(m, "vec");
  const Eigen::Index n = m.rows();
  ComplexVector out(n * n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) out(r * n + c) = m(r, c);
  }
  return out;
}

ComplexMatrix devec(const ComplexVector& v) {
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (n == 0 || n * n != v.size()) {
    throw Error(ErrorCode::ShapeMismatch,
                "devec: length " + std::to_string(v.size()) + " is not a perfect square");
  }
  ComplexMatrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) out(r, c) = v(r * n + c);
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, Eigen::Index dim_a, Eigen::Index dim_b,
                            Subsystem keep) {
  if (dim_a <= 0 || dim_b <= 0 || rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b) {
    throw Error(ErrorCode::ShapeMismatch, "partial_trace: operator is not (dA*dB)-square");
  }
  if (keep == Subsystem::B) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
    for (Eigen::Index a = 0; a < dim_a; ++a) out += rho.block(a * dim_b, a * dim_b, dim_b, dim_b);
    return out;
  }
  ComplexMatrix out(dim_a, dim_a);
  for (Eigen::Index a = 0; a < dim_a; ++a) {
    for (Eigen::Index c = 0; c < dim_a; ++c) {
      out(a, c) = rho.block(a * dim_b, c * dim_b, dim_b, dim_b).trace();
    }
  }
  return out;
}

double trace_norm(const ComplexMatrix& a) {
  require_square(a, "trace_norm");
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues().sum();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double hermiticity_defect(const ComplexMatrix& a) { return (a - a.adjoint()).norm(); }

double condition_number(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

}  // namespace ptwalk
