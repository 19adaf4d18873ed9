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
#include "ptwalk/toy.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ptwalk/errors.hpp"
#include "ptwalk/format.hpp"
#include "ptwalk/measures.hpp"

namespace ptwalk {

namespace {

constexpr double kRealSpectrumTol = 1e-9;

Matrix2c toy_block(ToyConfig::Variant v, double diag, double off) {
  Matrix2c h;
  if (v == ToyConfig::Variant::PtPhase) {
    h << std::polar(1.0, diag), off, off, std::polar(1.0, -diag);
  } else {
    h << std::exp(diag), off, off, std::exp(-diag);
  }
  return h;
}

void require_real_spectrum(const ComplexVector& ev, const char* what) {
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i).imag()) > kRealSpectrumTol * std::max(1.0, std::abs(ev(i)))) {
      throw Error(ErrorCode::SpectrumNotReal, std::string(what) + " has a complex eigenvalue");
    }
  }
}

// exp(s A) for diagonalizable A.
Matrix4c expm_scaled(const Matrix4c& a, double s) {
  const EigenSystem es = eig(a, false);
  ComplexVector d(es.eigenvalues.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = std::exp(s * es.eigenvalues(i));
  return es.right * d.asDiagonal() * es.right.inverse();
}

}  // namespace

void ToyConfig::validate() const {
  if (!(dt > 0.0)) throw Error(ErrorCode::ConfigInvalid, "toy.dt: must be positive");
  if (!(t_max >= 0.0)) throw Error(ErrorCode::ConfigInvalid, "toy.t_max: must be non-negative");
  for (double w : g1_weights) {
    if (!(w > 0.0)) throw Error(ErrorCode::ConfigInvalid, "toy.g1_weights: must be positive");
  }
  for (double w : g2_weights) {
    if (!(w > 0.0)) throw Error(ErrorCode::ConfigInvalid, "toy.g2_weights: must be positive");
  }
  if (!std::isfinite(nonproduct_strength)) {
    throw Error(ErrorCode::ConfigInvalid, "toy.nonproduct_strength: must be finite");
  }
}

Matrix2c toy_h_a(const ToyConfig& cfg) { return toy_block(cfg.variant, cfg.a_diag, cfg.a_off); }
Matrix2c toy_h_b(const ToyConfig& cfg) { return toy_block(cfg.variant, cfg.b_diag, cfg.b_off); }

Matrix4c toy_hamiltonian(const ToyConfig& cfg) {
  const Matrix2c a = toy_h_a(cfg);
  const Matrix2c b = toy_h_b(cfg);
  if (cfg.generator == ToyConfig::Generator::Kronecker) return kron(a, b);
  return kron(a, Matrix2c::Identity()) + kron(Matrix2c::Identity(), b);
}

Matrix2c single_qubit_metric(const Matrix2c& h, double w0, double w1) {
  const EigenSystem es = eig(h, true);
  require_real_spectrum(es.eigenvalues, "single-qubit Hamiltonian");
  const ComplexMatrix& left = *es.left;
  Matrix2c g = w0 * left.col(0) * left.col(0).adjoint() / left.col(0).squaredNorm() +
               w1 * left.col(1) * left.col(1).adjoint() / left.col(1).squaredNorm();
  g /= g.trace().real();
  return 0.5 * (g + g.adjoint());
}

double realignment_defect(const Matrix4c& g) {
  Matrix4c r;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) r(2 * a + ap, 2 * b + bp) = g(2 * a + b, 2 * ap + bp);
  Eigen::JacobiSVD<Matrix4c> svd(r);
  const auto& sv = svd.singularValues();
  return sv(0) > 0.0 ? sv(1) / sv(0) : 0.0;
}

ToyResult run_toy(const ToyConfig& cfg) {
  cfg.validate();
  const Matrix2c ha = toy_h_a(cfg);
  const Matrix2c hb = toy_h_b(cfg);
  const Matrix4c h = toy_hamiltonian(cfg);
  require_real_spectrum(eig(h, false).eigenvalues, "toy Hamiltonian");

  const Matrix4c g1 = kron(single_qubit_metric(ha, cfg.g1_weights[0], cfg.g1_weights[1]),
                           single_qubit_metric(hb, cfg.g1_weights[2], cfg.g1_weights[3]));
  const Matrix4c g2 = kron(single_qubit_metric(ha, cfg.g2_weights[0], cfg.g2_weights[1]),
                           single_qubit_metric(hb, cfg.g2_weights[2], cfg.g2_weights[3]));
  const Matrix4c t = expm_scaled(kron(ha, hb), cfg.nonproduct_strength);
  Matrix4c g3 = t.adjoint() * g1 * t;
  g3 /= g3.trace().real();
  g3 = 0.5 * (g3 + g3.adjoint()).eval();

  ToyResult out;
  out.config = cfg;
  const int steps = static_cast<int>(std::llround(cfg.t_max / cfg.dt));
  for (int n = 0; n <= steps; ++n) out.times.push_back(n * cfg.dt);

  Vector4c bell(1.0, 0.0, 0.0, 1.0);
  bell /= std::sqrt(2.0);

  const std::pair<const char*, const Matrix4c*> metrics[] = {{"G1", &g1}, {"G2", &g2}, {"G3", &g3}};
  for (const auto& [name, g] : metrics) {
    ToyMetricRun run;
    run.name = name;
    run.metric = *g;
    run.defect = realignment_defect(*g);
    run.product = g != &g3;
    run.pseudo_hermiticity = (h.adjoint() * *g - *g * h).norm();

    const Matrix4c root = herm_sqrt(*g);
    Matrix4c h_eta = root * h * root.inverse();
    h_eta = 0.5 * (h_eta + h_eta.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h_eta);
    const Vector4c coeff = es.eigenvectors().adjoint() * bell;
    for (double time : out.times) {
      Vector4c phase;
      for (int i = 0; i < 4; ++i) phase(i) = std::polar(1.0, -es.eigenvalues()(i) * time) * coeff(i);
      const Vector4c psi = es.eigenvectors() * phase;
      const ComplexMatrix rho_a = partial_trace(psi * psi.adjoint(), 2, 2, Subsystem::A);
      run.entropy.push_back(von_neumann_entropy(rho_a));
    }
    out.runs.push_back(std::move(run));
  }
  return out;
}

std::string toy_csv(const ToyResult& r, const std::vector<std::string>& header) {
  std::ostringstream os;
  for (const auto& h : header) os << "# " << h << '\n';
  os << 't';
  for (const auto& run : r.runs) os << ",S_" << run.name;
  os << '\n';
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    os << fmt_double(r.times[i]);
    for (const auto& run : r.runs) os << ',' << fmt_double(run.entropy[i]);
    os << '\n';
  }
  return os.str();
}

}  // namespace ptwalk
