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

#ifndef ENSRLAB_FILTER_SEARCH_HPP_
#define ENSRLAB_FILTER_SEARCH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ensrlab/dependence.hpp"
#include "ensrlab/prob_core.hpp"

namespace ensrlab {

// Which leakage functional the privacy budget constrains.
//   Strong: rho_m^2(X;Z) <= eps  (no function of X is estimable)
//   Weak:   eta^2_Z(X)  <= eps  (the identity function is not estimable)
enum class ConstraintKind { kStrong, kWeak };

enum class SolveMethod { kGrid, kGradient, kErasure, kClosedForm };

std::string to_string(ConstraintKind kind);
std::string to_string(SolveMethod method);

struct SearchConfig {
  std::uint64_t seed = 0x243F6A8885A308D3ULL;
  double grid_resolution = 0.02;
  int restarts = 32;
  double tolerance = 1e-6;
  std::size_t z_size = 0;  // 0 resolves to |Y| + 1 (sufficient output size)
  int threads = 0;         // 0 resolves to ENSRLAB_THREADS or hardware
  std::vector<Channel> extra_starts;  // optional warm starts
};

struct FilterProblem {
  JointDistribution joint;  // rows = X (private), columns = Y (useful)
  double eps = 0.0;
  ConstraintKind kind = ConstraintKind::kStrong;
  std::size_t z_size = 0;  // 0 resolves to |Y| + 1
};

// Everything the search engine needs to know about one candidate filter.
struct FilterEvaluation {
  double ensr = 0.0;         // mmse(Y|Z)/var(Y)
  double rho_m_sq_xz = 0.0;  // strong leakage
  double eta_sq_xz = 0.0;    // weak leakage
  double eta_sq_yz = 0.0;    // 1 - ensr up to rounding
  double bayes_error = 0.0;  // Pr(MAP estimate of Y from Z is wrong)
};

struct FilterSolution {
  Channel filter;
  double ensr = 1.0;
  double privacy_strong = 0.0;  // rho_m^2(X;Z), recomputed from the filter
  double privacy_weak = 0.0;    // eta^2_Z(X)
  SolveMethod method = SolveMethod::kErasure;
  int restarts_used = 0;
  double eps = 0.0;    // budget after clamping to the feasible range
  double slack = 0.0;  // eps minus the active leakage
  bool clamped = false;
};

enum class CurveKind { kMeps, kWeps, kPerror };

struct CurvePoint {
  double eps = 0.0;
  double value = 0.0;
  FilterSolution solution;
};

struct PrivacyCurve {
  CurveKind kind = CurveKind::kMeps;
  std::vector<CurvePoint> points;  // eps strictly increasing
};

// rho_m^2(X;Y): the largest budget with any bite for the strong constraint.
double strong_cap(const JointDistribution& joint_xy);
// eta^2_Y(X): same for the weak constraint.
double weak_cap(const JointDistribution& joint_xy);

// Objective and both leakage functionals for a fixed filter.
FilterEvaluation evaluate_filter(const JointDistribution& joint_xy,
                                 const Channel& filter);

// The erasure filter passing Y intact w.p. 1 - delta_tilde where
// delta_tilde = 1 - eps/cap; achieves ensr = delta_tilde with the active
// leakage exactly eps. Budgets above the cap clamp to the identity filter.
FilterSolution erasure_filter(const JointDistribution& joint_xy, double eps,
                              ConstraintKind kind = ConstraintKind::kStrong);

// Best filter found for the problem: a dense parameter grid plus local
// refinement when |Y| = 2 and |Z| = 3, otherwise multi-start projected
// gradient descent with an escalating penalty on the constraint. The result
// is always feasible (slack >= -1e-6) and never worse than the erasure
// filter at the same budget.
FilterSolution solve(const FilterProblem& problem,
                     const SearchConfig& config = {});

// Samples eps -> solve(eps).ensr over the grid, reusing one parameter sweep
// (grid engine) or chaining warm starts (gradient engine) so the curve is
// non-increasing.
PrivacyCurve privacy_curve(const JointDistribution& joint_xy,
                           ConstraintKind kind,
                           const std::vector<double>& eps_grid,
                           const SearchConfig& config = {});

// Pr(Ŷ(Z) != Y) under MAP decoding of the row variable from the column
// variable; ties break toward the lowest-index row.
double bayes_error(const JointDistribution& j_yz);

struct PErrorPoint {
  double eps = 0.0;
  double p_error = 0.0;  // minimum Bayes error over weakly feasible filters
  double w_eps = 0.0;    // companion W value from the same sweep
  bool sandwich_ok = false;
  FilterSolution solution;
};

struct PErrorReport {
  std::vector<PErrorPoint> points;
  double var_y = 0.0;
  bool sandwich_ok = false;  // W*var(Y) <= p_error <= 2W*var(Y) at each point
};

// Privacy-constrained Bayes error curve for binary Y.
PErrorReport p_error_curve(const JointDistribution& joint_xy,
                           const std::vector<double>& eps_grid,
                           const SearchConfig& config = {});

struct ConvexityReport {
  bool convex_ok = false;
  double max_violation = 0.0;  // of the chord inequality
  bool chord_ratio_ok = false;
  double max_chord_ratio_violation = 0.0;  // of (1-v)/eps monotonicity
};

// Midpoint convexity and (1 - value)/eps monotonicity of a sampled curve.
ConvexityReport verify_convexity(
    const std::vector<std::pair<double, double>>& points,
    double tolerance = 1e-3);

struct BoundsRow {
  double eps = 0.0;
  double w = 0.0;
  double m = 0.0;
  double upper_trivial = 0.0;    // 1 - eps
  double upper_strong = 0.0;     // 1 - eps/rho_m^2(X;Y)
  double upper_weak = 0.0;       // 1 - eps/eta_Y^2(X)
  bool ok = false;
};

struct BoundsReport {
  double rho_sq_xy = 0.0;
  double eta_sq_xy = 0.0;
  std::vector<BoundsRow> rows;
  bool ok = false;
};

// Checks 0 <= W <= M <= 1 - eps and the chord upper bounds over the grid.
BoundsReport verify_bounds(const JointDistribution& joint_xy,
                           const std::vector<double>& eps_grid,
                           const SearchConfig& config = {});

}  // namespace ensrlab

#endif  // ENSRLAB_FILTER_SEARCH_HPP_
