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

#ifndef ENSRLAB_BISO_HPP_
#define ENSRLAB_BISO_HPP_

#include <utility>
#include <vector>

#include "ensrlab/prob_core.hpp"

namespace ensrlab {

// Binary-input symmetric-output channel P(X|Y) with Y ~ Ber(p) on {0,1}:
// P(x|1) = P(-x|0) over a sign-symmetric real support. A 0 symbol is split
// into two labels that keep the numeric value 0 and half the mass each, so
// the support has an even number of labels while every moment is preserved.
struct BisoChannel {
  double p = 0.5;                // P(Y = 1)
  std::vector<double> x_values;  // ascending, sign-symmetric, even count
  Matrix trans;                  // 2 x |X|; row 0 is Y=0, row 1 is Y=1
  bool zero_split = false;
};

struct BisoReport {
  double ex_given_y1 = 0.0;     // E[X | Y = 1]
  double var_x = 0.0;
  double var_y = 0.0;           // p(1-p)
  double var_x_given_y1 = 0.0;  // = var(X|Y=0) by symmetry
  double rho_m_sq = 0.0;        // computed numerically on the induced joint
};

// Validates symmetry (to 1e-12, then enforced exactly by averaging the
// mirrored entries) and performs the zero split.
BisoChannel build_biso(double p, const std::vector<double>& x_values,
                       const Matrix& trans);

// P(X|Y) = BSC(alpha) over {-1,+1}.
BisoChannel make_bsc(double alpha, double p);
// P(X|Y) = BEC(delta) over {-1,0,+1}; the 0 symbol gets split.
BisoChannel make_bec(double delta, double p);

// Joint of (X, Y) with rows = X over the merged numeric support.
JointDistribution induced_joint(const BisoChannel& b);

BisoReport biso_report(const BisoChannel& b);

struct WepsClosed {
  double value = 0.0;
  bool clamped = false;  // raw formula left [0,1]
};

// W_eps = 1 - eps var(X) / (4 var(Y) E^2[X|Y=1]), clamped to [0,1].
WepsClosed w_eps_closed(const BisoChannel& b, double eps);

// (lower, upper) bracket for M_eps: the W closed form below, the erasure
// chord 1 - eps/rho_m^2 above.
std::pair<double, double> m_eps_bounds(const BisoChannel& b, double eps);

// The exact linear relation mmse(Y|Z) = (mmse(X|Z) - var(X|Y=1)) /
// (4 E^2[X|Y=1]); returns (direct, via formula) for any filter on Y.
std::pair<double, double> mmse_linear_relation(const BisoChannel& b,
                                               const Channel& filter);

// (lower, upper) for the privacy-constrained Bayes error of Y; requires
// p >= 1/2 (relabel Y first otherwise). Upper is capped at 1 - p.
std::pair<double, double> p_error_bounds(const BisoChannel& b, double eps);

struct InitialEfficiency {
  double slope = 0.0;      // var(X) / (4 E^2[X|Y=1]): d/deps of var(Y)(1 - W_eps) at 0
  double max_ratio = 0.0;  // 1 / (4 E^2[X|Y=1])
};

InitialEfficiency initial_efficiency(const BisoChannel& b);

}  // namespace ensrlab

#endif  // ENSRLAB_BISO_HPP_
