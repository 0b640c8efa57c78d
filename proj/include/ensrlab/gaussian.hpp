// Copyright 2026 The ensrlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENSRLAB_GAUSSIAN_HPP_
#define ENSRLAB_GAUSSIAN_HPP_

#include <cstddef>
#include <vector>

#include "ensrlab/prob_core.hpp"

namespace ensrlab {

// Zero-mean jointly Gaussian (X, Y) with correlation coefficient rho; for
// this pair the maximal correlation equals |rho|.
struct GaussianPair {
  double var_x = 1.0;
  double var_y = 1.0;
  double rho = 0.0;
};

// Additive filter Z = Y + gamma * N with standard Gaussian noise.
struct AdditiveFilter {
  double gamma = 0.0;
};

struct GammaEps {
  double gamma = 0.0;
  bool infinite = false;  // eps <= 0: no finite noise reaches strict zero
  bool zero = false;      // eps >= rho^2: no noise needed
};

// Positive root of rho^2 var(Y) / (var(Y) + gamma^2) = eps.
GammaEps gamma_eps(const GaussianPair& gp, double eps);

// 1 - eps/rho^2, the common value of the strong and weak curves for a
// jointly Gaussian pair under Gaussian noise; eps clamps to [0, rho^2].
double m_eps_gaussian(const GaussianPair& gp, double eps);

// Finite-alphabet stand-in for a continuous pair: quantile-edged bins with
// conditional-mean representatives, masses from analytic cdf differences.
struct QuantizedPair {
  Alphabet grid_x;
  Alphabet grid_y;
  Alphabet grid_z;
  JointDistribution joint_xz;
  JointDistribution joint_yz;
  double moment_error = 0.0;  // worst relative variance mismatch
  bool coverage_ok = false;   // moment_error within 1e-3
};

// Quantizes (X, Z_gamma) and (Y, Z_gamma) for a jointly Gaussian pair.
QuantizedPair quantize_gaussian(const GaussianPair& gp, double gamma,
                                std::size_t bins = 256);
QuantizedPair quantize_gaussian(const GaussianPair& gp,
                                const AdditiveFilter& filter,
                                std::size_t bins = 256);

enum class RefDist { kGaussian, kLaplace, kUniform };

// X = Y + Laplace(scale) with Y drawn from a named zero-mean family; the
// reference construction for the non-Gaussian checks.
struct TransformedSpec {
  RefDist y_kind = RefDist::kGaussian;
  double var_y = 1.0;
  double laplace_scale = 1.0;
};

struct QuantizedTriple {
  Alphabet grid_x, grid_y, grid_z;
  JointDistribution joint_xy;
  JointDistribution joint_xz;
  JointDistribution joint_yz;
};

QuantizedTriple quantize_transformed(const TransformedSpec& spec, double gamma,
                                     std::size_t bins = 256);

struct GaussianCurveRow {
  double eps = 0.0;
  double closed_form = 0.0;  // 1 - eps/rho^2
  double numeric = 0.0;      // quantized minimum over gamma
  double gamma_used = 0.0;
  bool ok = false;           // |closed - numeric| <= 0.02
};

struct GaussianCurveReport {
  std::vector<GaussianCurveRow> rows;
  double bias_estimate = 0.0;  // grid-doubling difference at the first eps
  bool pass = false;
};

// Quantized numeric inf over gamma of the ENSR under rho_m^2(X;Z) <= eps
// matches the closed form for a jointly Gaussian pair.
GaussianCurveReport verify_gaussian_curve(const GaussianPair& gp,
                                          const std::vector<double>& eps_grid,
                                          std::size_t bins = 256);

struct SandwichRow {
  double eps = 0.0;
  double numeric = 0.0;
  double lower = 0.0;  // 1 - eps/rho^2
  double upper = 0.0;  // 1 - eps/rho_m^2
  bool ok = false;     // numeric in [lower - slack, upper + slack]
};

struct SandwichReport {
  double rho_sq = 0.0;    // estimated from the quantized (X, Y) joint
  double rho_m_sq = 0.0;  // same
  double gap_bound = 0.0; // eps (1/rho^2 - 1/rho_m^2) at the largest eps
  std::vector<SandwichRow> rows;
  bool pass = false;
};

// Sandwich for X = Y_G + Laplace(scale) with Gaussian Y; both correlation
// quantities are estimated from the quantized joint.
SandwichReport verify_correlation_sandwich(double laplace_scale,
                                           double var_y,
                                           const std::vector<double>& eps_grid,
                                           std::size_t bins = 256);

struct MonotonicityReport {
  bool rho_decreasing = false;
  bool mmse_increasing = false;
  double max_rho_increase = 0.0;   // over consecutive gamma grid points
  double max_mmse_decrease = 0.0;
  double max_mmse_formula_error = 0.0;  // vs var(Y) g^2/(var(Y)+g^2), ENSR scale
  bool pass = false;
};

// gamma -> rho_m^2(X;Z_gamma) falls and gamma -> mmse(Y|Z_gamma) rises on a
// log-spaced gamma grid, within quantization noise.
MonotonicityReport verify_monotonicity(const GaussianPair& gp,
                                       std::size_t gamma_points = 20,
                                       std::size_t bins = 256);

struct WorstCaseRow {
  double eps = 0.0;
  double numeric = 0.0;
  double gaussian_value = 0.0;  // 1 - eps/rho_m^2 at the estimated rho_m
  bool ok = false;              // numeric <= gaussian + 0.02
};

struct WorstCaseReport {
  double rho_m_sq = 0.0;
  std::vector<WorstCaseRow> rows;
  bool pass = false;
};

// Among pairs with matched maximal correlation the Gaussian one has the
// largest curve; checked for a non-Gaussian Y from the reference family.
WorstCaseReport verify_gaussian_worst_case(RefDist y_kind, double var_y,
                                           double laplace_scale,
                                           const std::vector<double>& eps_grid,
                                           std::size_t bins = 256);

// Standard normal cdf and quantile (used by the quantizers and exposed for
// tests).
double std_normal_cdf(double x);
double std_normal_quantile(double u);

}  // namespace ensrlab

#endif  // ENSRLAB_GAUSSIAN_HPP_
