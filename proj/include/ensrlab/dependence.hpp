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

#ifndef ENSRLAB_DEPENDENCE_HPP_
#define ENSRLAB_DEPENDENCE_HPP_

#include <cstddef>
#include <vector>

#include "ensrlab/prob_core.hpp"

namespace ensrlab {

// Spectrum of the normalized joint matrix Q(u,v) = P(u,v)/sqrt(P(u)P(v)).
// The top singular value of Q is always 1; the second one is the maximal
// correlation, and its singular vectors yield the optimal function pair.
struct SpectralReport {
  std::vector<double> singular_values;  // descending, sigma_1 ~ 1
  double rho_m = 0.0;                   // sigma_2, or 0 when degenerate
  double sigma_min = 0.0;               // smallest singular value
  std::vector<double> optimal_f;        // over the row alphabet, zero mean, unit variance
  std::vector<double> optimal_g;        // over the column alphabet
  bool degenerate = false;              // a variable is constant after pruning
  int sigma2_multiplicity = 1;          // ties at sigma_2 within 1e-9
};

// Maximal correlation of the (row, column) pair via Jacobi SVD of Q.
// Zero-mass symbols are pruned first; their f/g entries are reported as 0.
SpectralReport maximal_correlation(const JointDistribution& j);

// Value-only rho_m^2, with a closed trace shortcut when either alphabet is
// binary and a deflated power iteration for large matrices. Agrees with
// maximal_correlation to solver precision; this is the hot-loop variant.
double rho_m_sq(const JointDistribution& j);

// E[E^2[f(U)|V]] / var(f(U)) for a centered version of f: the objective
// whose supremum over f equals rho_m^2.
double renyi_value(const JointDistribution& j, const std::vector<double>& f);

struct WeakIndependenceResult {
  bool weakly_independent = false;
  double sigma_min = 0.0;  // of the conditional expectation operator
  std::size_t rank = 0;    // of the transition matrix
};

// True iff the conditional pmfs {P(X = . | Y = y)} are linearly dependent,
// detected through the smallest singular value of the conditional
// expectation operator f(X) -> E[f(X)|Y].
WeakIndependenceResult weak_independence_test(const Channel& x_given_y,
                                              const std::vector<double>& pmf_y);

struct SdpiCheck {
  double lhs = 0.0;  // rho_m^2(X;Z)
  double rhs = 0.0;  // rho_m^2(X;Y) * rho_m^2(Y;Z)
  double rho_sq_xy = 0.0;
  double rho_sq_yz = 0.0;
  bool holds = false;
};

// Strong data processing inequality for maximal correlation along X-Y-Z.
SdpiCheck verify_sdpi(const JointDistribution& j_xy, const Channel& filter);

// Kronecker product of two joints over index-coded alphabets {0,1,...}.
// The numeric codes only label the product symbols; maximal correlation is
// invariant to the relabeling.
JointDistribution kron(const JointDistribution& j1, const JointDistribution& j2);

struct TensorResult {
  double rho_product = 0.0;    // rho_m of the Kronecker joint
  double max_component = 0.0;  // max of the component rho_m values
  double rho_1 = 0.0;
  double rho_2 = 0.0;
};

// Maximal correlation of a product of independent pairs equals the largest
// component value; computed both ways for verification.
TensorResult tensor_rho_m(const JointDistribution& j1,
                          const JointDistribution& j2);

}  // namespace ensrlab

#endif  // ENSRLAB_DEPENDENCE_HPP_
