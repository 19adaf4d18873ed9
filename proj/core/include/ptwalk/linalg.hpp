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

#include <complex>
#include <optional>

#include <Eigen/Dense>

namespace ptwalk {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector2c = Eigen::Vector2cd;
using Vector4c = Eigen::Vector4cd;

inline constexpr cplx kI{0.0, 1.0};

// Negative eigenvalues of a PSD input above this are treated as rounding dust.
inline constexpr double kPsdClamp = 1e-12;

struct EigenSystem {
  ComplexVector eigenvalues;
  ComplexMatrix right;                // columns, unit Euclidean norm
  std::optional<ComplexMatrix> left;  // columns, <left_i|right_j> = delta_ij
};

// Right eigenpairs of a square matrix. With want_left the left eigenvectors
// (right eigenvectors of A^dagger) are paired to the right ones by conjugate
// eigenvalue and rescaled to a biorthonormal set. Throws DegeneratePairing if
// two eigenvalues are closer than 1e-9.
EigenSystem eig(const ComplexMatrix& a, bool want_left = false);

// Largest relative residual |A v - lambda v| / (|A| |v|) over the pairs.
double eig_residual(const ComplexMatrix& a, const EigenSystem& es);

// Unique positive semidefinite square root of a Hermitian matrix.
ComplexMatrix herm_sqrt(const ComplexMatrix& a);

// H such that exp(-i H) = A, principal branch of each eigenvalue phase.
ComplexMatrix herm_log_unitary_like(const ComplexMatrix& a);

// exp(-i H) through the eigendecomposition of a diagonalizable H.
ComplexMatrix expm_minus_i(const ComplexMatrix& h);

// Row-major stacking: vec([[a,b],[c,d]]) = (a,b,c,d).
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix devec(const ComplexVector& v);

enum class Subsystem { A, B };

// Partial trace of a (dA*dB)-square operator, keeping the named factor.
ComplexMatrix partial_trace(const ComplexMatrix& rho, Eigen::Index dim_a,
                            Eigen::Index dim_b, Subsystem keep);

// Sum of singular values.
double trace_norm(const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

double hermiticity_defect(const ComplexMatrix& a);

// Ratio of largest to smallest singular value (infinity when singular).
double condition_number(const ComplexMatrix& a);

}  // namespace ptwalk
