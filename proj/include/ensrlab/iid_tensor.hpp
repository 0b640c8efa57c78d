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

#ifndef ENSRLAB_IID_TENSOR_HPP_
#define ENSRLAB_IID_TENSOR_HPP_

#include <cstdint>
#include <vector>

#include "ensrlab/filter_search.hpp"
#include "ensrlab/prob_core.hpp"

namespace ensrlab {

// n i.i.d. copies of a base pair observed through per-coordinate filters.
// Desk scale: n <= 3 and |X|^n |Y|^n <= 4096 cells.
struct ProductProblem {
  JointDistribution base;        // (X, Y), rows = X
  int n = 2;
  std::vector<Channel> filters;  // one per coordinate, input = Y alphabet
  double eps = 0.0;
};

// Kronecker power of the base joint; for n >= 2 the product symbols carry
// index codes as numeric values (only the labeling matters downstream).
JointDistribution product_joint(const JointDistribution& base, int n);

// Product of per-coordinate channels over index-coded alphabets.
Channel kron_channel(const Channel& a, const Channel& b);

// The n-letter ENSR (1/(n var Y)) sum_i mmse(Y_i | Z^n), computed directly
// from the joint of (Y_i, Z^n); no per-coordinate shortcut is taken.
double product_objective(const ProductProblem& prob);

// rho_m^2(X^n; Z^n) of the memoryless arrangement, by Kronecker SVD.
double product_strong_leakage(const ProductProblem& prob);

struct TensorizationReport {
  int trials = 0;
  int violations = 0;          // product ENSR below single-letter - 1e-3
  double min_margin = 0.0;     // min(product ENSR - single-letter value)
  double single_letter = 0.0;  // solve(eps).ensr on the base pair
  double replicated = 0.0;     // objective with the optimum on every coordinate
  double replicated_gap = 0.0;
  double max_tensor_gap = 0.0;  // max |rho_kron - max component| seen
  bool pass = false;
};

// Random feasible memoryless filter pairs never beat the single-letter
// optimum, and replicating that optimum attains it (n = 2).
TensorizationReport verify_memoryless_tensorization(
    const JointDistribution& base, double eps, int trials,
    const SearchConfig& config = {});

struct WeakAllocationReport {
  int trials = 0;
  int violations = 0;
  double min_margin = 0.0;
  double w_single = 0.0;
  bool pass = false;
};

// Weak-mode version over random budget allocations eps_1 + eps_2 = 2 eps
// with per-coordinate feasibility eta^2_{Z_i}(X_i) <= eps_i; the averaged
// ENSR stays above W_eps by convexity. The per-coordinate condition is the
// sufficient one; the n-letter constraint set is a priori larger.
WeakAllocationReport verify_weak_allocation(const JointDistribution& base,
                                            double eps, int trials,
                                            const SearchConfig& config = {});

struct SigmaMinProductCheck {
  double base_sigma_min = 0.0;
  double product_sigma_min = 0.0;
  double expected = 0.0;  // base^n
  bool ok = false;
};

// The smallest singular value of the n-fold conditional expectation
// operator is the n-th power of the single-letter one (n = 2 here).
SigmaMinProductCheck verify_sigma_min_product(const Channel& x_given_y,
                                              const std::vector<double>& pmf_y);

}  // namespace ensrlab

#endif  // ENSRLAB_IID_TENSOR_HPP_
