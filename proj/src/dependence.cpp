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

#include "ensrlab/dependence.hpp"

#include <algorithm>
#include <cmath>

#include "ensrlab/error.hpp"
#include "ensrlab/svd.hpp"

namespace ensrlab {

namespace {

constexpr double kSigmaMinTolerance = 1e-9;
// Above this many cells the Jacobi pass is replaced by deflated power
// iteration when only the second singular value is needed.
constexpr std::size_t kPowerMethodCells = 64 * 64;

struct Pruned {
  Matrix p;                       // renormalized over surviving symbols
  std::vector<double> pu, pv;     // positive marginals
  std::vector<std::size_t> rows;  // surviving indices into the original
  std::vector<std::size_t> cols;
};

// Division by sqrt(P) requires positive mass, so zero-mass symbols are
// dropped first; they carry no dependence information.
Pruned prune_zero_mass(const JointDistribution& j) {
  Pruned out;
  for (std::size_t i = 0; i < j.row_marginal().size(); ++i)
    if (j.row_marginal()[i] > 0.0) out.rows.push_back(i);
  for (std::size_t k = 0; k < j.col_marginal().size(); ++k)
    if (j.col_marginal()[k] > 0.0) out.cols.push_back(k);
  out.p = Matrix(out.rows.size(), out.cols.size());
  for (std::size_t i = 0; i < out.rows.size(); ++i)
    for (std::size_t k = 0; k < out.cols.size(); ++k)
      out.p(i, k) = j(out.rows[i], out.cols[k]);
  out.pu.resize(out.rows.size());
  out.pv.resize(out.cols.size());
  for (std::size_t i = 0; i < out.rows.size(); ++i)
    out.pu[i] = j.row_marginal()[out.rows[i]];
  for (std::size_t k = 0; k < out.cols.size(); ++k)
    out.pv[k] = j.col_marginal()[out.cols[k]];
  return out;
}

// The square roots are taken separately so near-denormal bin masses (dust
// from quantized continuous tails) cannot underflow the product to 0/0.
Matrix normalized_joint(const Pruned& pr) {
  Matrix q(pr.p.rows(), pr.p.cols());
  for (std::size_t i = 0; i < q.rows(); ++i) {
    const double su = std::sqrt(pr.pu[i]);
    for (std::size_t k = 0; k < q.cols(); ++k)
      q(i, k) = pr.p(i, k) / su / std::sqrt(pr.pv[k]);
  }
  return q;
}

// sum_uv P(u,v)^2 / (P(u)P(v)) = sum of squared singular values of Q,
// written as (P/Pu)(P/Pv) to keep every factor in [0, 1].
double q_frobenius_sq(const Pruned& pr) {
  double s = 0.0;
  for (std::size_t i = 0; i < pr.p.rows(); ++i)
    for (std::size_t k = 0; k < pr.p.cols(); ++k)
      s += (pr.p(i, k) / pr.pu[i]) * (pr.p(i, k) / pr.pv[k]);
  return s;
}

}  // namespace

SpectralReport maximal_correlation(const JointDistribution& j) {
  SpectralReport rep;
  rep.optimal_f.assign(j.row_alphabet().size(), 0.0);
  rep.optimal_g.assign(j.col_alphabet().size(), 0.0);

  const Pruned pr = prune_zero_mass(j);
  if (pr.rows.size() < 2 || pr.cols.size() < 2) {
    rep.degenerate = true;
    rep.singular_values = {1.0};
    rep.sigma_min = 1.0;
    return rep;
  }

  const SvdResult svd = jacobi_svd(normalized_joint(pr));
  rep.singular_values = svd.sigma;
  rep.rho_m = std::clamp(svd.sigma[1], 0.0, 1.0);
  rep.sigma_min = svd.sigma.back();
  rep.sigma2_multiplicity = 0;
  for (double s : svd.sigma)
    if (std::abs(s - svd.sigma[1]) < 1e-9) ++rep.sigma2_multiplicity;

  // f(u) = u2(u)/sqrt(P(u)) is automatically zero mean and unit variance
  // because u2 is a unit vector orthogonal to sqrt(P); re-standardize to
  // absorb rounding.
  if (rep.rho_m > 0.0) {
    std::vector<double> f(pr.rows.size()), g(pr.cols.size());
    for (std::size_t i = 0; i < pr.rows.size(); ++i)
      f[i] = svd.u(i, 1) / std::sqrt(pr.pu[i]);
    for (std::size_t k = 0; k < pr.cols.size(); ++k)
      g[k] = svd.v(k, 1) / std::sqrt(pr.pv[k]);
    auto standardize = [](std::vector<double>& h, const std::vector<double>& w) {
      double mean = 0.0;
      for (std::size_t i = 0; i < h.size(); ++i) mean += w[i] * h[i];
      double var = 0.0;
      for (std::size_t i = 0; i < h.size(); ++i)
        var += w[i] * (h[i] - mean) * (h[i] - mean);
      const double scale = var > 0.0 ? 1.0 / std::sqrt(var) : 1.0;
      for (auto& x : h) x = (x - mean) * scale;
    };
    standardize(f, pr.pu);
    standardize(g, pr.pv);
    for (std::size_t i = 0; i < pr.rows.size(); ++i)
      rep.optimal_f[pr.rows[i]] = f[i];
    for (std::size_t k = 0; k < pr.cols.size(); ++k)
      rep.optimal_g[pr.cols[k]] = g[k];
  }
  return rep;
}

double rho_m_sq(const JointDistribution& j) {
  const Pruned pr = prune_zero_mass(j);
  const std::size_t m = pr.rows.size(), n = pr.cols.size();
  if (m < 2 || n < 2) return 0.0;
  if (m == 2 || n == 2) {
    // With a binary variable Q has exactly two singular values and the top
    // one is 1, so sigma_2^2 = ||Q||_F^2 - 1.
    return std::clamp(q_frobenius_sq(pr) - 1.0, 0.0, 1.0);
  }
  const Matrix q = normalized_joint(pr);
  if (m * n > kPowerMethodCells) {
    std::vector<double> u1(m), v1(n);
    for (std::size_t i = 0; i < m; ++i) u1[i] = std::sqrt(pr.pu[i]);
    for (std::size_t k = 0; k < n; ++k) v1[k] = std::sqrt(pr.pv[k]);
    const double s2 = deflated_top_singular_value(q, u1, v1, 1.0);
    return std::clamp(s2 * s2, 0.0, 1.0);
  }
  const std::vector<double> sigma = singular_values(q);
  return std::clamp(sigma[1] * sigma[1], 0.0, 1.0);
}

double renyi_value(const JointDistribution& j, const std::vector<double>& f) {
  if (f.size() != j.row_alphabet().size())
    throw DimensionError("function size does not match row alphabet");
  const std::vector<double>& pu = j.row_marginal();
  double mean = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) mean += pu[i] * f[i];
  double var = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    var += pu[i] * (f[i] - mean) * (f[i] - mean);
  if (var <= 0.0)
    throw DegenerateError("renyi value undefined for an a.s. constant function");

  const std::vector<double>& pv = j.col_marginal();
  double out = 0.0;
  for (std::size_t v = 0; v < pv.size(); ++v) {
    if (pv[v] == 0.0) continue;
    double cond = 0.0;
    for (std::size_t u = 0; u < f.size(); ++u)
      cond += j(u, v) * (f[u] - mean);
    cond /= pv[v];
    out += pv[v] * cond * cond;
  }
  return out / var;
}

WeakIndependenceResult weak_independence_test(
    const Channel& x_given_y, const std::vector<double>& pmf_y) {
  if (pmf_y.size() != x_given_y.input().size())
    throw DimensionError("pmf size does not match channel input");
  for (double p : pmf_y)
    if (p <= 0.0)
      throw ArgumentError("weak independence test needs positive input pmf");

  const JointDistribution j_yx = joint_from_channel(pmf_y, x_given_y);
  const Pruned pr = prune_zero_mass(transpose(j_yx));  // rows = X, cols = Y
  const std::size_t ny = pr.cols.size();

  const std::vector<double> sigma = singular_values(normalized_joint(pr));
  WeakIndependenceResult out;
  out.rank = 0;
  for (double s : sigma)
    if (s > kSigmaMinTolerance) ++out.rank;
  // The operator f(X) -> E[f(X)|Y] has |Y| singular values; when |Y| > |X|
  // the spectrum is padded with zeros and dependence is automatic.
  out.sigma_min = sigma.size() < ny ? 0.0 : sigma.back();
  out.weakly_independent = out.sigma_min <= kSigmaMinTolerance;
  return out;
}

SdpiCheck verify_sdpi(const JointDistribution& j_xy, const Channel& filter) {
  SdpiCheck c;
  c.rho_sq_xy = rho_m_sq(j_xy);
  c.rho_sq_yz = rho_m_sq(joint_from_channel(j_xy.col_marginal(), filter));
  c.lhs = rho_m_sq(compose(j_xy, filter));
  c.rhs = c.rho_sq_xy * c.rho_sq_yz;
  c.holds = c.lhs <= c.rhs + 1e-8;
  return c;
}

JointDistribution kron(const JointDistribution& j1, const JointDistribution& j2) {
  const std::size_t m1 = j1.row_alphabet().size(), n1 = j1.col_alphabet().size();
  const std::size_t m2 = j2.row_alphabet().size(), n2 = j2.col_alphabet().size();
  if (m1 * m2 * n1 * n2 > 4096)
    throw ResourceError("product joint exceeds the 4096-cell cap");
  auto index_alphabet = [](std::size_t n) {
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = static_cast<double>(i);
    return Alphabet(pts);
  };
  Matrix p(m1 * m2, n1 * n2);
  for (std::size_t i1 = 0; i1 < m1; ++i1)
    for (std::size_t i2 = 0; i2 < m2; ++i2)
      for (std::size_t k1 = 0; k1 < n1; ++k1)
        for (std::size_t k2 = 0; k2 < n2; ++k2)
          p(i1 * m2 + i2, k1 * n2 + k2) = j1(i1, k1) * j2(i2, k2);
  return JointDistribution(index_alphabet(m1 * m2), index_alphabet(n1 * n2),
                           std::move(p));
}

TensorResult tensor_rho_m(const JointDistribution& j1,
                          const JointDistribution& j2) {
  TensorResult t;
  t.rho_1 = std::sqrt(rho_m_sq(j1));
  t.rho_2 = std::sqrt(rho_m_sq(j2));
  t.max_component = std::max(t.rho_1, t.rho_2);
  t.rho_product = std::sqrt(rho_m_sq(kron(j1, j2)));
  return t;
}

}  // namespace ensrlab
