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

#ifndef ENSRLAB_SVD_HPP_
#define ENSRLAB_SVD_HPP_

#include <vector>

#include "ensrlab/matrix.hpp"

namespace ensrlab {

// A = U diag(sigma) V^T with sigma sorted descending, U and V with
// orthonormal columns. U is rows x k, V is cols x k, k = min(rows, cols).
struct SvdResult {
  Matrix u;
  std::vector<double> sigma;
  Matrix v;
  int sweeps = 0;
};

// One-sided Jacobi SVD for small dense matrices (the alphabets here stay
// below a few hundred symbols). Columns are orthogonalized pairwise until
// every off-diagonal entry of the implicit A^T A falls below
// 1e-12 * sqrt(diag_p * diag_q), at most 100 sweeps.
SvdResult jacobi_svd(const Matrix& a);

// Singular values only, descending.
std::vector<double> singular_values(const Matrix& a);

// Largest singular value of A - u1 sigma1 v1^T when (sigma1, u1, v1) is a
// known exact singular triple, computed by power iteration on the deflated
// operator. Used for the second singular value of quantized joints that are
// too large for a comfortable Jacobi pass.
double deflated_top_singular_value(const Matrix& a,
                                   const std::vector<double>& u1,
                                   const std::vector<double>& v1,
                                   double sigma1);

}  // namespace ensrlab

#endif  // ENSRLAB_SVD_HPP_
