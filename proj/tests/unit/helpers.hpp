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

#include <cmath>
#include <complex>
#include <random>

#include "ptwalk/dynamics.hpp"
#include "ptwalk/linalg.hpp"
#include "ptwalk/walk.hpp"

namespace testing {

using ptwalk::cplx;
using ptwalk::ComplexMatrix;
using ptwalk::ComplexVector;

inline constexpr double kTheta1 = M_PI / 4;
inline constexpr double kTheta2 = -M_PI / 7;

inline ptwalk::WalkParams params(double exp_gamma, int lattice = 101) {
  return {kTheta1, kTheta2, std::log(exp_gamma), lattice};
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

inline ComplexMatrix random_unitary(std::mt19937_64& rng, Eigen::Index n) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(rng, n, n));
  return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

inline ComplexMatrix random_density(std::mt19937_64& rng, Eigen::Index n) {
  const ComplexMatrix a = random_matrix(rng, n, n);
  ComplexMatrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// H = V diag(lambda) V^{-1} with real distinct lambda, metric G = V^{-dagger} D V^{-1}.
struct PseudoHermitianInstance {
  ComplexMatrix h;
  ComplexMatrix v;         // right eigenvectors
  Eigen::VectorXd lambda;  // real spectrum
  Eigen::VectorXd d;       // positive metric weights
  ComplexMatrix g;
  ComplexMatrix psi_basis;  // V D^{-1/2}: orthonormal under G
};

inline PseudoHermitianInstance random_pseudo_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> u(0.3, 2.0);
  PseudoHermitianInstance inst;
  inst.v = ComplexMatrix::Identity(n, n) + 0.4 * random_matrix(rng, n, n);
  inst.lambda.resize(n);
  inst.d.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    inst.lambda(i) = -2.0 + 1.3 * static_cast<double>(i) + 0.5 * u(rng);
    inst.d(i) = u(rng);
  }
  const ComplexMatrix vinv = inst.v.inverse();
  inst.h = inst.v * inst.lambda.cast<cplx>().asDiagonal() * vinv;
  inst.g = vinv.adjoint() * inst.d.cast<cplx>().asDiagonal() * vinv;
  inst.g = 0.5 * (inst.g + inst.g.adjoint()).eval();
  inst.psi_basis = inst.v * inst.d.cwiseSqrt().cwiseInverse().cast<cplx>().asDiagonal();
  return inst;
}

// Dense full-lattice oracle: positions x = -(L-1)/2 .. (L-1)/2, state index
// 2 * (x + (L-1)/2) + c. Coin 0 moves right; the wrap-around bond carries a
// factor -1, matching the half-integer momentum grid for odd L.
struct DenseLattice {
  int L;
  ComplexMatrix fourier;  // (F x I2), F[x, n] = exp(-i k_n x) / sqrt(L)

  explicit DenseLattice(int lattice) : L(lattice) {
    const ptwalk::MomentumGrid grid(L);
    ComplexMatrix f(L, L);
    for (int xi = 0; xi < L; ++xi)
      for (int n = 0; n < L; ++n)
        f(xi, n) = std::polar(1.0 / std::sqrt(static_cast<double>(L)), -grid[n] * position(xi));
    fourier = ptwalk::kron(f, ComplexMatrix::Identity(2, 2));
  }

  int position(int index) const { return index - (L - 1) / 2; }

  ComplexMatrix local(const ComplexMatrix& coin_op) const {
    return ptwalk::kron(ComplexMatrix::Identity(L, L), coin_op);
  }

  ComplexMatrix shift() const {
    ComplexMatrix s = ComplexMatrix::Zero(2 * L, 2 * L);
    for (int xi = 0; xi < L; ++xi) {
      const int right = (xi + 1) % L;
      const int left = (xi + L - 1) % L;
      s(2 * right, 2 * xi) = xi == L - 1 ? -1.0 : 1.0;
      s(2 * left + 1, 2 * xi + 1) = xi == 0 ? -1.0 : 1.0;
    }
    return s;
  }

  // Position-space walk built from its factors.
  ComplexMatrix walk(const ptwalk::WalkParams& p) const {
    const ComplexMatrix s = shift();
    return local(ptwalk::coin(p.theta1 / 2)) * s * local(ptwalk::gain_loss(-p.gamma)) *
           local(ptwalk::coin(p.theta2)) * s * local(ptwalk::gain_loss(p.gamma)) *
           local(ptwalk::coin(p.theta1 / 2));
  }

  ComplexMatrix from_blocks(const ptwalk::BlockOperator& b) const {
    ComplexMatrix bd = ComplexMatrix::Zero(2 * L, 2 * L);
    for (int n = 0; n < L; ++n) bd.block(2 * n, 2 * n, 2, 2) = b[static_cast<std::size_t>(n)];
    return fourier * bd * fourier.adjoint();
  }

  // Coin state after t steps of eta W eta^{-1} from |0><0| x rho0, with
  // eta taken as the dense square root of the dense metric.
  ComplexMatrix reduced_state(const ptwalk::WalkParams& p, const ptwalk::BlockOperator& metric,
                              const ComplexMatrix& rho0, int t) const {
    const ComplexMatrix g = from_blocks(metric);
    const ComplexMatrix eta = ptwalk::herm_sqrt(0.5 * (g + g.adjoint()));
    const ComplexMatrix w_eta = eta * walk(p) * eta.inverse();
    ComplexMatrix origin = ComplexMatrix::Zero(L, L);
    origin((L - 1) / 2, (L - 1) / 2) = 1.0;
    ComplexMatrix rho = ptwalk::kron(origin, rho0);
    for (int s = 0; s < t; ++s) rho = w_eta * rho * w_eta.adjoint();
    return ptwalk::partial_trace(rho, L, 2, ptwalk::Subsystem::B);
  }
};

}  // namespace testing
