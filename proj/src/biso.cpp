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

#include "ensrlab/biso.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ensrlab/dependence.hpp"
#include "ensrlab/error.hpp"

namespace ensrlab {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

double ex_given_y1_of(const BisoChannel& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < b.x_values.size(); ++i)
    e += b.trans(1, i) * b.x_values[i];
  return e;
}

void require_nondegenerate(double ex1) {
  if (std::abs(ex1) <= 1e-12)
    throw DegenerateError(
        "E[X|Y=1] = 0: X carries no linear information about Y");
}

double rho_cap(const BisoChannel& b) { return rho_m_sq(induced_joint(b)); }

double check_eps(const BisoChannel& b, double eps) {
  if (eps < 0.0) throw ArgumentError("privacy budget must be nonnegative");
  const double cap = rho_cap(b);
  if (eps > cap + 1e-9)
    throw ArgumentError("privacy budget exceeds rho_m^2(X;Y)");
  return std::min(eps, cap);
}

}  // namespace

BisoChannel build_biso(double p, const std::vector<double>& x_values,
                       const Matrix& trans) {
  if (!(p > 0.0 && p < 1.0))
    throw ArgumentError("Y must be a nondegenerate Bernoulli");
  if (trans.rows() != 2 || trans.cols() != x_values.size())
    throw DimensionError("transition matrix must be 2 x |X|");
  for (std::size_t y = 0; y < 2; ++y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < trans.cols(); ++i) {
      if (trans(y, i) < 0.0)
        throw InvariantError("transition probabilities must be nonnegative");
      sum += trans(y, i);
    }
    if (std::abs(sum - 1.0) > kSymmetryTolerance)
      throw InvariantError("transition rows must sum to 1");
  }

  // Sort the support, splitting any 0 symbol into two half-mass labels.
  std::vector<std::size_t> order(x_values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
    return x_values[a] < x_values[c];
  });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (x_values[order[i]] == x_values[order[i - 1]])
      throw InvariantError("duplicate X values in the input support");

  BisoChannel b;
  b.p = p;
  for (std::size_t idx : order) {
    const double x = x_values[idx];
    if (x == 0.0) {
      b.zero_split = true;
      for (int half = 0; half < 2; ++half) b.x_values.push_back(0.0);
    } else {
      b.x_values.push_back(x);
    }
  }
  if (b.x_values.size() % 2 != 0)
    throw NotBisoError("support is not sign-symmetric");

  b.trans = Matrix(2, b.x_values.size());
  std::size_t col = 0;
  for (std::size_t idx : order) {
    const double x = x_values[idx];
    if (x == 0.0) {
      for (int half = 0; half < 2; ++half) {
        b.trans(0, col) = 0.5 * trans(0, idx);
        b.trans(1, col) = 0.5 * trans(1, idx);
        ++col;
      }
    } else {
      b.trans(0, col) = trans(0, idx);
      b.trans(1, col) = trans(1, idx);
      ++col;
    }
  }

  // Mirror of index i is n-1-i once sorted; the zero twins mirror each other.
  const std::size_t n = b.x_values.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t m = n - 1 - i;
    if (std::abs(b.x_values[i] + b.x_values[m]) > kSymmetryTolerance)
      throw NotBisoError("support is not sign-symmetric");
    if (std::abs(b.trans(1, i) - b.trans(0, m)) > kSymmetryTolerance)
      throw NotBisoError("P(x|1) != P(-x|0): channel is not BISO");
  }
  // Enforce the symmetry exactly; averaging preserves the row sums.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t m = n - 1 - i;
    const double avg = 0.5 * (b.trans(1, i) + b.trans(0, m));
    b.trans(1, i) = avg;
    b.trans(0, m) = avg;
  }
  return b;
}

BisoChannel make_bsc(double alpha, double p) {
  if (alpha < 0.0 || alpha >= 0.5)
    throw ArgumentError("BSC crossover must lie in [0, 1/2)");
  return build_biso(p, {-1.0, 1.0}, Matrix{{1.0 - alpha, alpha},
                                           {alpha, 1.0 - alpha}});
}

BisoChannel make_bec(double delta, double p) {
  if (delta < 0.0 || delta >= 1.0)
    throw ArgumentError("BEC erasure must lie in [0, 1)");
  return build_biso(p, {-1.0, 0.0, 1.0},
                    Matrix{{1.0 - delta, delta, 0.0},
                           {0.0, delta, 1.0 - delta}});
}

JointDistribution induced_joint(const BisoChannel& b) {
  // Merge labels that share a numeric value (the zero twins); functions of
  // the real-valued X cannot tell them apart.
  std::vector<double> values;
  std::vector<double> mass0, mass1;
  for (std::size_t i = 0; i < b.x_values.size(); ++i) {
    if (!values.empty() && b.x_values[i] == values.back()) {
      mass0.back() += b.trans(0, i);
      mass1.back() += b.trans(1, i);
    } else {
      values.push_back(b.x_values[i]);
      mass0.push_back(b.trans(0, i));
      mass1.push_back(b.trans(1, i));
    }
  }
  Matrix p(values.size(), 2);
  for (std::size_t i = 0; i < values.size(); ++i) {
    p(i, 0) = (1.0 - b.p) * mass0[i];
    p(i, 1) = b.p * mass1[i];
  }
  return JointDistribution(Alphabet(values), Alphabet::binary(), std::move(p));
}

BisoReport biso_report(const BisoChannel& b) {
  BisoReport r;
  r.ex_given_y1 = ex_given_y1_of(b);
  r.var_y = b.p * (1.0 - b.p);
  double e2 = 0.0;
  for (std::size_t i = 0; i < b.x_values.size(); ++i)
    e2 += b.trans(1, i) * b.x_values[i] * b.x_values[i];
  r.var_x_given_y1 = e2 - r.ex_given_y1 * r.ex_given_y1;
  const JointDistribution j = induced_joint(b);
  r.var_x = j.row_variance();
  r.rho_m_sq = rho_m_sq(j);
  return r;
}

WepsClosed w_eps_closed(const BisoChannel& b, double eps) {
  const double e = check_eps(b, eps);
  const BisoReport r = biso_report(b);
  require_nondegenerate(r.ex_given_y1);
  const double raw =
      1.0 - e * r.var_x / (4.0 * r.var_y * r.ex_given_y1 * r.ex_given_y1);
  WepsClosed out;
  out.value = std::clamp(raw, 0.0, 1.0);
  out.clamped = raw < 0.0 || raw > 1.0;
  return out;
}

std::pair<double, double> m_eps_bounds(const BisoChannel& b, double eps) {
  const double e = check_eps(b, eps);
  const double cap = rho_cap(b);
  const double upper = cap > 0.0 ? 1.0 - e / cap : 0.0;
  return {w_eps_closed(b, eps).value, upper};
}

std::pair<double, double> mmse_linear_relation(const BisoChannel& b,
                                               const Channel& filter) {
  if (!(filter.input() == Alphabet::binary()))
    throw DimensionError("filter input must be the {0,1} alphabet of Y");
  const BisoReport r = biso_report(b);
  require_nondegenerate(r.ex_given_y1);

  const std::vector<double> p_y = {1.0 - b.p, b.p};
  const double lhs = mmse(joint_from_channel(p_y, filter));
  const double mmse_xz = mmse(compose(induced_joint(b), filter));
  const double rhs = (mmse_xz - r.var_x_given_y1) /
                     (4.0 * r.ex_given_y1 * r.ex_given_y1);
  return {lhs, rhs};
}

std::pair<double, double> p_error_bounds(const BisoChannel& b, double eps) {
  if (b.p < 0.5 - 1e-12)
    throw ScopeError("p_error bounds assume p >= 1/2; relabel Y first");
  const double w = w_eps_closed(b, eps).value;
  const double var_y = b.p * (1.0 - b.p);
  const double lower = var_y * w;
  const double upper = std::min(2.0 * var_y * w, 1.0 - b.p);
  return {lower, upper};
}

InitialEfficiency initial_efficiency(const BisoChannel& b) {
  const BisoReport r = biso_report(b);
  require_nondegenerate(r.ex_given_y1);
  InitialEfficiency e;
  e.max_ratio = 1.0 / (4.0 * r.ex_given_y1 * r.ex_given_y1);
  e.slope = r.var_x * e.max_ratio;
  return e;
}

}  // namespace ensrlab
