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

#include "ptwalk/linalg.hpp"
#include "ptwalk/walk.hpp"

namespace ptwalk {

// Closed-form left eigenvectors of H_c(k) (right eigenvectors of H_c(k)^dagger).
// r_plus belongs to the eigenvalue +eps, r_minus to -eps; both have unit
// Euclidean norm.
struct LeftEigenPair {
  double k = 0.0;
  Vector2c r_plus;
  Vector2c r_minus;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double eps = 0.0;  // arccos(a(k)), in (0, pi)
};

LeftEigenPair left_eigvecs(double k, const WalkParams& p);

// Block metric family G(k) = x(k) (|r+><r+| + y(k) |r-><r-|), rescaled to
// unit trace per block.
struct MetricSpec {
  enum class Kind { Flat, RandomXY, Explicit };

  Kind kind = Kind::Flat;
  std::uint64_t seed = 0;
  double lower = 0.2;
  double upper = 2.0;
  std::vector<double> x;  // Explicit only, one entry per grid point
  std::vector<double> y;
  std::string name;  // free-form label used in output file names

  static MetricSpec flat(std::string name = "G1");
  static MetricSpec random_xy(std::uint64_t seed, std::string name = {}, double lower = 0.2,
                              double upper = 2.0);
  static MetricSpec explicit_xy(std::vector<double> x, std::vector<double> y,
                                std::string name = "explicit");

  std::string label() const;
  std::string kind_name() const;
};

BlockOperator build_metric(const WalkParams& p, const MetricSpec& spec);

// Blockwise positive square root. Throws NotPositive unless every block is
// Hermitian positive-definite.
BlockOperator eta(const BlockOperator& g);

// G^{-1} X^dagger G. Throws SingularMetric.
ComplexMatrix generalized_dagger(const ComplexMatrix& x, const ComplexMatrix& g);

// tr sqrt(X# X), evaluated as the Euclidean trace norm of eta X eta^{-1}.
double g_trace_norm(const ComplexMatrix& x, const ComplexMatrix& g);

// |H^dagger G - G H|_F
double pseudo_hermiticity_residual(const ComplexMatrix& h, const ComplexMatrix& g);

// Map between two metrics compatible with the same H: T commutes with H,
// T^dagger G T = G', and U = eta' T^{-1} eta^{-1} is unitary.
struct MetricTransport {
  ComplexMatrix t;
  ComplexMatrix u;
};

struct BlockMetricTransport {
  BlockOperator t;
  BlockOperator u;
};

// Throws IncompatibleMetrics if either metric fails to make H pseudo-Hermitian
// or the resulting U is not unitary to 1e-9.
MetricTransport metric_transport(const ComplexMatrix& g, const ComplexMatrix& g_prime,
                                 const ComplexMatrix& h);
BlockMetricTransport metric_transport(const BlockOperator& g, const BlockOperator& g_prime,
                                      const BlockOperator& h);

// max_k |G(k)/tr G(k) - mean|_F. Zero iff every normalized block coincides.
double separability_defect(const BlockOperator& g);

// Residual of G psi = sum_n <xi_n|psi>_G |xi_n> over random psi, relative to
// |G psi|. The metric inner product is evaluated independently of G from
// expansion coefficients in psi_basis, whose columns are taken to be
// orthonormal under the metric. basis columns must be Euclidean-orthonormal.
double verify_metric_action(const ComplexMatrix& g, const ComplexMatrix& psi_basis,
                            const ComplexMatrix& basis, std::uint64_t seed = 1, int samples = 16);

// Trace in the metric space: sum_i <psi_i|A|psi_i>_G over the columns of
// psi_basis after G-normalization. The columns must be G-orthogonal.
cplx metric_trace(const ComplexMatrix& a, const ComplexMatrix& g, const ComplexMatrix& psi_basis);

}  // namespace ptwalk
