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

#include "ensrlab/prob_core.hpp"

#include <cmath>
#include <string>

#include "ensrlab/error.hpp"

namespace ensrlab {

Alphabet::Alphabet(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw InvariantError("alphabet must be non-empty");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i]))
      throw InvariantError("alphabet values must be finite");
    if (i > 0 && points_[i] <= points_[i - 1])
      throw InvariantError("alphabet values must be strictly increasing");
  }
}

double pmf_mean(const std::vector<double>& pmf, const Alphabet& a) {
  if (pmf.size() != a.size()) throw DimensionError("pmf/alphabet size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) m += pmf[i] * a[i];
  return m;
}

double pmf_variance(const std::vector<double>& pmf, const Alphabet& a) {
  const double m = pmf_mean(pmf, a);
  double s = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    const double d = a[i] - m;
    s += pmf[i] * d * d;
  }
  return s;
}

namespace {

void check_row_stochastic(const Matrix& k) {
  for (std::size_t y = 0; y < k.rows(); ++y) {
    double sum = 0.0;
    for (std::size_t z = 0; z < k.cols(); ++z) {
      if (k(y, z) < 0.0)
        throw InvariantError("channel entries must be nonnegative");
      sum += k(y, z);
    }
    if (std::abs(sum - 1.0) > kProbTolerance)
      throw InvariantError("channel row " + std::to_string(y) +
                           " sums to " + std::to_string(sum));
  }
}

void renormalize_rows(Matrix& k) {
  for (std::size_t y = 0; y < k.rows(); ++y) {
    double sum = 0.0;
    for (std::size_t z = 0; z < k.cols(); ++z) sum += k(y, z);
    for (std::size_t z = 0; z < k.cols(); ++z) k(y, z) /= sum;
  }
}

}  // namespace

Channel::Channel(Alphabet input, Alphabet output, Matrix k)
    : input_(std::move(input)), output_(std::move(output)), k_(std::move(k)) {
  if (k_.rows() != input_.size() || k_.cols() != output_.size())
    throw DimensionError("channel matrix shape does not match alphabets");
  check_row_stochastic(k_);
  renormalize_rows(k_);
}

Channel Channel::identity(const Alphabet& a) {
  Matrix k(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) k(i, i) = 1.0;
  return Channel(a, a, std::move(k));
}

Channel Channel::constant(const Alphabet& input, const Alphabet& output,
                          std::size_t point) {
  if (point >= output.size()) throw ArgumentError("constant output index out of range");
  Matrix k(input.size(), output.size());
  for (std::size_t i = 0; i < input.size(); ++i) k(i, point) = 1.0;
  return Channel(input, output, std::move(k));
}

Channel Channel::erasure(const Alphabet& input, double delta) {
  if (delta < 0.0 || delta > 1.0)
    throw ArgumentError("erasure probability must lie in [0,1]");
  std::vector<double> out = input.points();
  out.push_back(out.back() + 1.0);  // erasure symbol, value is irrelevant
  Alphabet output(std::move(out));
  Matrix k(input.size(), output.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    k(i, i) = 1.0 - delta;
    k(i, output.size() - 1) = delta;
  }
  return Channel(input, output, std::move(k));
}

JointDistribution::JointDistribution(Alphabet row_alphabet,
                                     Alphabet col_alphabet, Matrix p)
    : row_(std::move(row_alphabet)),
      col_(std::move(col_alphabet)),
      p_(std::move(p)) {
  if (p_.rows() != row_.size() || p_.cols() != col_.size())
    throw DimensionError("joint pmf shape does not match alphabets");
  double total = 0.0;
  for (double v : p_.data()) {
    if (v < 0.0) throw InvariantError("joint pmf entries must be nonnegative");
    total += v;
  }
  if (std::abs(total - 1.0) > kProbTolerance)
    throw InvariantError("joint pmf sums to " + std::to_string(total));
  for (double& v : p_.data()) v /= total;

  row_marginal_.assign(row_.size(), 0.0);
  col_marginal_.assign(col_.size(), 0.0);
  for (std::size_t i = 0; i < row_.size(); ++i)
    for (std::size_t j = 0; j < col_.size(); ++j) {
      row_marginal_[i] += p_(i, j);
      col_marginal_[j] += p_(i, j);
    }
  auto positive = [](const std::vector<double>& m) {
    for (double v : m)
      if (v > 0.0) return true;
    return false;
  };
  if (!positive(row_marginal_) || !positive(col_marginal_))
    throw InvariantError("a marginal has no positive mass");
}

double JointDistribution::row_mean() const { return pmf_mean(row_marginal_, row_); }
double JointDistribution::row_variance() const {
  return pmf_variance(row_marginal_, row_);
}
double JointDistribution::col_mean() const { return pmf_mean(col_marginal_, col_); }
double JointDistribution::col_variance() const {
  return pmf_variance(col_marginal_, col_);
}

JointDistribution JointDistribution::independent(const Alphabet& row,
                                                 std::vector<double> row_pmf,
                                                 const Alphabet& col,
                                                 std::vector<double> col_pmf) {
  Matrix p(row.size(), col.size());
  for (std::size_t i = 0; i < row.size(); ++i)
    for (std::size_t j = 0; j < col.size(); ++j)
      p(i, j) = row_pmf[i] * col_pmf[j];
  return JointDistribution(row, col, std::move(p));
}

JointDistribution JointDistribution::diagonal(const Alphabet& a,
                                              std::vector<double> pmf) {
  Matrix p(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) p(i, i) = pmf[i];
  return JointDistribution(a, a, std::move(p));
}

std::pair<std::vector<double>, std::vector<double>> marginals(
    const JointDistribution& j) {
  return {j.row_marginal(), j.col_marginal()};
}

JointDistribution compose(const JointDistribution& j, const Channel& filter) {
  if (!(filter.input() == j.col_alphabet()))
    throw DimensionError("filter input alphabet does not match joint column");
  const std::size_t nu = j.row_alphabet().size();
  const std::size_t nv = j.col_alphabet().size();
  const std::size_t nz = filter.output().size();
  Matrix out(nu, nz);
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t v = 0; v < nv; ++v) {
      const double puv = j(u, v);
      if (puv == 0.0) continue;
      for (std::size_t z = 0; z < nz; ++z) out(u, z) += puv * filter(v, z);
    }
  return JointDistribution(j.row_alphabet(), filter.output(), std::move(out));
}

JointDistribution joint_from_channel(const std::vector<double>& input_pmf,
                                     const Channel& ch) {
  if (input_pmf.size() != ch.input().size())
    throw DimensionError("input pmf size does not match channel input");
  Matrix p(ch.input().size(), ch.output().size());
  for (std::size_t y = 0; y < ch.input().size(); ++y)
    for (std::size_t z = 0; z < ch.output().size(); ++z)
      p(y, z) = input_pmf[y] * ch(y, z);
  return JointDistribution(ch.input(), ch.output(), std::move(p));
}

JointDistribution transpose(const JointDistribution& j) {
  return JointDistribution(j.col_alphabet(), j.row_alphabet(),
                           j.pmf().transposed());
}

ConditionalStats conditional_stats(const JointDistribution& j) {
  const std::size_t nu = j.row_alphabet().size();
  const std::size_t nv = j.col_alphabet().size();
  ConditionalStats s;
  s.cond_mean.assign(nv, 0.0);
  s.cond_var.assign(nv, 0.0);
  s.marginal_v = j.col_marginal();
  s.undefined.assign(nv, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    const double pv = s.marginal_v[v];
    if (pv == 0.0) {
      s.undefined[v] = 1;
      continue;
    }
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t u = 0; u < nu; ++u) {
      const double w = j(u, v) / pv;
      const double x = j.row_alphabet()[u];
      m1 += w * x;
      m2 += w * x * x;
    }
    s.cond_mean[v] = m1;
    s.cond_var[v] = std::max(0.0, m2 - m1 * m1);
  }
  return s;
}

double mmse(const JointDistribution& j) {
  const ConditionalStats s = conditional_stats(j);
  double out = 0.0;
  for (std::size_t v = 0; v < s.marginal_v.size(); ++v)
    out += s.marginal_v[v] * s.cond_var[v];
  return out;
}

double correlation_ratio_sq(const JointDistribution& j) {
  const double var_u = j.row_variance();
  if (var_u <= 0.0)
    throw DegenerateError("correlation ratio undefined for a constant variable");
  const ConditionalStats s = conditional_stats(j);
  const double mean_u = j.row_mean();
  double var_cond_mean = 0.0;
  for (std::size_t v = 0; v < s.marginal_v.size(); ++v) {
    const double d = s.cond_mean[v] - mean_u;
    var_cond_mean += s.marginal_v[v] * d * d;
  }
  return var_cond_mean / var_u;
}

}  // namespace ensrlab
