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

#include <string>
#include <vector>

#include "ptwalk/linalg.hpp"

namespace ptwalk {

// Two-qubit example: H_A = [[e^{+a}, b], [b, e^{-a}]] and the same form for
// H_B. In the PT-phase variant the diagonal is e^{+-i a}.
struct ToyConfig {
  enum class Variant { PtPhase, AsPrinted };
  enum class Generator { LocalSum, Kronecker };  // H_A x I + I x H_B, or H_A x H_B

  Variant variant = Variant::PtPhase;
  Generator generator = Generator::LocalSum;
  double a_diag = 1.2;
  double a_off = 1.2;
  double b_diag = 2.3;
  double b_off = 1.4;

  // Eigenbasis weights of the single-qubit metrics, (w_0, w_1) per factor.
  double g1_weights[4] = {1.0, 1.0, 1.0, 1.0};
  double g2_weights[4] = {1.0, 0.4, 1.0, 2.5};
  // s in T = exp(s H_A x H_B) for the non-product metric.
  double nonproduct_strength = 0.1;

  double t_max = 10.0;
  double dt = 0.05;

  void validate() const;  // throws ConfigInvalid
};

Matrix2c toy_h_a(const ToyConfig& cfg);
Matrix2c toy_h_b(const ToyConfig& cfg);
Matrix4c toy_hamiltonian(const ToyConfig& cfg);

// sum_i w_i |l_i><l_i| over left eigenvectors of h, rescaled to unit trace.
// Throws SpectrumNotReal.
Matrix2c single_qubit_metric(const Matrix2c& h, double w0, double w1);

// sigma_2 / sigma_1 of the realigned 4x4 matrix; 0 exactly for G_A x G_B.
double realignment_defect(const Matrix4c& g);

struct ToyMetricRun {
  std::string name;
  bool product = true;
  Matrix4c metric;
  double defect = 0.0;
  double pseudo_hermiticity = 0.0;
  std::vector<double> entropy;  // bits, one per time point
};

struct ToyResult {
  ToyConfig config;
  std::vector<double> times;
  std::vector<ToyMetricRun> runs;  // G1 and G2 (product), G3 (non-product)
};

// Evolves (|00> + |11>)/sqrt(2) under eta H eta^{-1} for each metric.
ToyResult run_toy(const ToyConfig& cfg);

std::string toy_csv(const ToyResult& r, const std::vector<std::string>& header = {});

}  // namespace ptwalk
