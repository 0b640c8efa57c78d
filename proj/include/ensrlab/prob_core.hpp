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

#ifndef ENSRLAB_PROB_CORE_HPP_
#define ENSRLAB_PROB_CORE_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "ensrlab/matrix.hpp"

namespace ensrlab {

// Probabilities are validated to this slack and then renormalized exactly
// once at construction; file-sourced pmfs carry rounding.
inline constexpr double kProbTolerance = 1e-12;

// Finite numeric support: strictly increasing distinct reals.
class Alphabet {
 public:
  explicit Alphabet(std::vector<double> points);

  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  const std::vector<double>& points() const { return points_; }

  // 0/1 support, the Bernoulli convention used throughout.
  static Alphabet binary() { return Alphabet({0.0, 1.0}); }
  // {-1, +1} support.
  static Alphabet signs() { return Alphabet({-1.0, 1.0}); }

  bool operator==(const Alphabet& other) const {
    return points_ == other.points_;
  }

 private:
  std::vector<double> points_;
};

// Mean and variance of a pmf over an alphabet.
double pmf_mean(const std::vector<double>& pmf, const Alphabet& a);
double pmf_variance(const std::vector<double>& pmf, const Alphabet& a);

// Row-stochastic transition matrix between two alphabets; rows are inputs.
class Channel {
 public:
  Channel(Alphabet input, Alphabet output, Matrix k);

  const Alphabet& input() const { return input_; }
  const Alphabet& output() const { return output_; }
  const Matrix& matrix() const { return k_; }
  double operator()(std::size_t y, std::size_t z) const { return k_(y, z); }

  static Channel identity(const Alphabet& a);
  // Every input maps to a single output symbol: output independent of input.
  static Channel constant(const Alphabet& input, const Alphabet& output,
                          std::size_t point);
  // Passes the input through with probability 1-delta, otherwise emits a
  // fresh erasure symbol appended after the largest input value.
  static Channel erasure(const Alphabet& input, double delta);

 private:
  Alphabet input_, output_;
  Matrix k_;
};

// Joint pmf of a (row, column) pair of finite real-valued variables.
// Entries are validated nonnegative, the total is checked against 1 within
// kProbTolerance, and the matrix is renormalized exactly once.
class JointDistribution {
 public:
  JointDistribution(Alphabet row_alphabet, Alphabet col_alphabet, Matrix p);

  const Alphabet& row_alphabet() const { return row_; }
  const Alphabet& col_alphabet() const { return col_; }
  const Matrix& pmf() const { return p_; }
  double operator()(std::size_t i, std::size_t j) const { return p_(i, j); }

  const std::vector<double>& row_marginal() const { return row_marginal_; }
  const std::vector<double>& col_marginal() const { return col_marginal_; }

  double row_mean() const;
  double row_variance() const;
  double col_mean() const;
  double col_variance() const;

  // Independent product of two marginals.
  static JointDistribution independent(const Alphabet& row,
                                       std::vector<double> row_pmf,
                                       const Alphabet& col,
                                       std::vector<double> col_pmf);
  // Row variable equals column variable, distributed as `pmf`.
  static JointDistribution diagonal(const Alphabet& a,
                                    std::vector<double> pmf);

 private:
  Alphabet row_, col_;
  Matrix p_;
  std::vector<double> row_marginal_, col_marginal_;
};

// Per-column conditional moments of the row variable. Columns with zero
// marginal are flagged and their stats reported as 0 so that downstream
// sums stay NaN-free.
struct ConditionalStats {
  std::vector<double> cond_mean;     // E[U | V = v]
  std::vector<double> cond_var;      // var(U | V = v)
  std::vector<double> marginal_v;    // P(V = v)
  std::vector<std::uint8_t> undefined;  // 1 where P(V = v) = 0
};

std::pair<std::vector<double>, std::vector<double>> marginals(
    const JointDistribution& j);

// (U,V) joint composed with a V->Z channel under the Markov chain U-V-Z:
// P(u,z) = sum_v P(u,v) k(v,z). The U-marginal is preserved exactly.
JointDistribution compose(const JointDistribution& j, const Channel& filter);

// Joint of (input, output) for a source pmf pushed through a channel;
// rows are the channel inputs.
JointDistribution joint_from_channel(const std::vector<double>& input_pmf,
                                     const Channel& ch);

JointDistribution transpose(const JointDistribution& j);

ConditionalStats conditional_stats(const JointDistribution& j);

// E[var(U|V)]: the minimum mean-squared error of the row variable given the
// column variable.
double mmse(const JointDistribution& j);

// Correlation ratio squared of the row variable on the column variable:
// var(E[U|V]) / var(U). Complements mmse via mmse/var = 1 - eta^2.
double correlation_ratio_sq(const JointDistribution& j);

}  // namespace ensrlab

#endif  // ENSRLAB_PROB_CORE_HPP_
