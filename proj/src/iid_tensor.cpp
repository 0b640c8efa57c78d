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

#include "ensrlab/iid_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ensrlab/dependence.hpp"
#include "ensrlab/error.hpp"
#include "ensrlab/rng.hpp"

namespace ensrlab {

namespace {

Alphabet index_alphabet(std::size_t n) {
  std::vector<double> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = static_cast<double>(i);
  return Alphabet(pts);
}

void check_product_problem(const ProductProblem& prob) {
  if (prob.n < 1 || prob.n > 3)
    throw ArgumentError("product order n must lie in 1..3");
  if (static_cast<int>(prob.filters.size()) != prob.n)
    throw DimensionError("need one filter per coordinate");
  for (const Channel& ch : prob.filters)
    if (!(ch.input() == prob.base.col_alphabet()))
      throw DimensionError("filter input must match the base Y alphabet");
}

// Mixes both filters of a candidate pair toward full erasure until the
// product joint satisfies rho_m^2 <= eps; t = 1 erases everything.
std::vector<Channel> shrink_to_feasible(const JointDistribution& base,
                                        const std::vector<Channel>& filters,
                                        double eps) {
  auto leak = [&](const std::vector<Channel>& f) {
    const JointDistribution xz0 = compose(base, f[0]);
    const JointDistribution xz1 = compose(base, f[1]);
    return rho_m_sq(kron(xz0, xz1));
  };
  if (leak(filters) <= eps) return filters;

  auto mix = [&](double t) {
    std::vector<Channel> out;
    for (const Channel& ch : filters) {
      Matrix k = ch.matrix();
      const std::size_t nz = k.cols();
      for (std::size_t y = 0; y < k.rows(); ++y)
        for (std::size_t z = 0; z < nz; ++z) {
          const double erased = z + 1 == nz ? 1.0 : 0.0;
          k(y, z) = (1.0 - t) * ch(y, z) + t * erased;
        }
      out.emplace_back(ch.input(), ch.output(), std::move(k));
    }
    return out;
  };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    (leak(mix(mid)) <= eps ? hi : lo) = mid;
  }
  return mix(hi);
}

Channel random_filter(Rng& rng, const Alphabet& input, std::size_t z_size) {
  std::vector<double> z_vals(z_size);
  for (std::size_t i = 0; i < z_size; ++i) z_vals[i] = static_cast<double>(i);
  Matrix k(input.size(), z_size);
  for (std::size_t y = 0; y < input.size(); ++y) {
    const auto row = rng.simplex_point(z_size);
    for (std::size_t z = 0; z < z_size; ++z) k(y, z) = row[z];
  }
  return Channel(input, Alphabet(z_vals), std::move(k));
}

}  // namespace

JointDistribution product_joint(const JointDistribution& base, int n) {
  if (n < 1 || n > 3) throw ArgumentError("product order n must lie in 1..3");
  if (n == 1) return base;
  JointDistribution out = kron(base, base);
  if (n == 3) out = kron(out, base);
  return out;
}

Channel kron_channel(const Channel& a, const Channel& b) {
  const std::size_t mi = a.input().size(), mo = a.output().size();
  const std::size_t ni = b.input().size(), no = b.output().size();
  Matrix k(mi * ni, mo * no);
  for (std::size_t i1 = 0; i1 < mi; ++i1)
    for (std::size_t i2 = 0; i2 < ni; ++i2)
      for (std::size_t o1 = 0; o1 < mo; ++o1)
        for (std::size_t o2 = 0; o2 < no; ++o2)
          k(i1 * ni + i2, o1 * no + o2) = a(i1, o1) * b(i2, o2);
  return Channel(index_alphabet(mi * ni), index_alphabet(mo * no),
                 std::move(k));
}

double product_objective(const ProductProblem& prob) {
  check_product_problem(prob);
  const double var_y = prob.base.col_variance();
  if (var_y <= 0.0) throw DegenerateError("ENSR undefined for a constant Y");

  // Joint of (Y^n, Z^n) as a Kronecker product of the per-coordinate pairs.
  std::vector<JointDistribution> yz;
  for (const Channel& ch : prob.filters)
    yz.push_back(joint_from_channel(prob.base.col_marginal(), ch));
  JointDistribution full = yz[0];
  for (int i = 1; i < prob.n; ++i) full = kron(full, yz[i]);

  const std::size_t b = prob.base.col_alphabet().size();
  const std::size_t zn = full.col_alphabet().size();
  double total = 0.0;
  std::size_t stride = 1;
  for (int i = 1; i < prob.n; ++i) stride *= b;
  for (int coord = 0; coord < prob.n; ++coord) {
    Matrix m(b, zn);
    for (std::size_t r = 0; r < full.row_alphabet().size(); ++r) {
      const std::size_t y_i = (r / stride) % b;
      for (std::size_t z = 0; z < zn; ++z) m(y_i, z) += full(r, z);
    }
    total += mmse(JointDistribution(prob.base.col_alphabet(),
                                    full.col_alphabet(), std::move(m)));
    stride = std::max<std::size_t>(1, stride / b);
  }
  return total / (static_cast<double>(prob.n) * var_y);
}

double product_strong_leakage(const ProductProblem& prob) {
  check_product_problem(prob);
  JointDistribution xz = compose(prob.base, prob.filters[0]);
  for (int i = 1; i < prob.n; ++i)
    xz = kron(xz, compose(prob.base, prob.filters[i]));
  return rho_m_sq(xz);
}

TensorizationReport verify_memoryless_tensorization(
    const JointDistribution& base, double eps, int trials,
    const SearchConfig& config) {
  TensorizationReport rep;
  rep.trials = trials;
  rep.min_margin = std::numeric_limits<double>::infinity();

  FilterProblem problem{base, eps, ConstraintKind::kStrong, 0};
  const FilterSolution single = solve(problem, config);
  rep.single_letter = single.ensr;

  ProductProblem replicated{base, 2, {single.filter, single.filter}, eps};
  rep.replicated = product_objective(replicated);
  rep.replicated_gap = std::abs(rep.replicated - rep.single_letter);

  const std::size_t z_size = base.col_alphabet().size() + 1;
  Rng rng(config.seed);
  for (int t = 0; t < trials; ++t) {
    Rng stream = rng.fork(static_cast<std::uint64_t>(t));
    std::vector<Channel> filters{
        random_filter(stream, base.col_alphabet(), z_size),
        random_filter(stream, base.col_alphabet(), z_size)};
    filters = shrink_to_feasible(base, filters, eps);

    const TensorResult tensor = tensor_rho_m(compose(base, filters[0]),
                                             compose(base, filters[1]));
    rep.max_tensor_gap = std::max(
        rep.max_tensor_gap, std::abs(tensor.rho_product - tensor.max_component));

    ProductProblem prob{base, 2, filters, eps};
    const double value = product_objective(prob);
    const double margin = value - rep.single_letter;
    rep.min_margin = std::min(rep.min_margin, margin);
    if (margin < -1e-3) ++rep.violations;
  }
  rep.pass = rep.violations == 0 && rep.replicated_gap <= 1e-9 &&
             rep.max_tensor_gap <= 1e-8;
  return rep;
}

WeakAllocationReport verify_weak_allocation(const JointDistribution& base,
                                            double eps, int trials,
                                            const SearchConfig& config) {
  WeakAllocationReport rep;
  rep.trials = trials;
  rep.min_margin = std::numeric_limits<double>::infinity();

  const double cap = weak_cap(base);
  const double e = std::min(eps, cap);
  FilterProblem problem{base, e, ConstraintKind::kWeak, 0};
  rep.w_single = solve(problem, config).ensr;

  const std::size_t z_size = base.col_alphabet().size() + 1;
  Rng rng(config.seed ^ 0x5bd1e995u);
  for (int t = 0; t < trials; ++t) {
    Rng stream = rng.fork(static_cast<std::uint64_t>(t));
    // eps_1 + eps_2 = 2e with both halves inside [0, cap].
    const double lo = std::max(0.0, 2.0 * e - cap);
    const double hi = std::min(2.0 * e, cap);
    const double eps1 = stream.uniform(lo, hi);
    const double eps2 = 2.0 * e - eps1;

    std::vector<Channel> filters;
    for (const double budget : {eps1, eps2}) {
      Channel f = random_filter(stream, base.col_alphabet(), z_size);
      // Per-coordinate weak feasibility via erasure mixing.
      auto weak_leak = [&](const Channel& ch) {
        return correlation_ratio_sq(compose(base, ch));
      };
      if (weak_leak(f) > budget) {
        double a = 0.0, b = 1.0;
        Matrix original = f.matrix();
        auto mixed = [&](double t2) {
          Matrix k = original;
          for (std::size_t y = 0; y < k.rows(); ++y)
            for (std::size_t z = 0; z < k.cols(); ++z) {
              const double erased = z + 1 == k.cols() ? 1.0 : 0.0;
              k(y, z) = (1.0 - t2) * original(y, z) + t2 * erased;
            }
          return Channel(f.input(), f.output(), std::move(k));
        };
        for (int it = 0; it < 50; ++it) {
          const double mid = 0.5 * (a + b);
          (weak_leak(mixed(mid)) <= budget ? b : a) = mid;
        }
        f = mixed(b);
      }
      filters.push_back(std::move(f));
    }

    ProductProblem prob{base, 2, filters, e};
    const double value = product_objective(prob);
    const double margin = value - rep.w_single;
    rep.min_margin = std::min(rep.min_margin, margin);
    if (margin < -1e-3) ++rep.violations;
  }
  rep.pass = rep.violations == 0;
  return rep;
}

SigmaMinProductCheck verify_sigma_min_product(
    const Channel& x_given_y, const std::vector<double>& pmf_y) {
  SigmaMinProductCheck check;
  check.base_sigma_min = weak_independence_test(x_given_y, pmf_y).sigma_min;

  const Channel doubled = kron_channel(x_given_y, x_given_y);
  std::vector<double> pmf2(pmf_y.size() * pmf_y.size());
  for (std::size_t i = 0; i < pmf_y.size(); ++i)
    for (std::size_t j = 0; j < pmf_y.size(); ++j)
      pmf2[i * pmf_y.size() + j] = pmf_y[i] * pmf_y[j];
  check.product_sigma_min = weak_independence_test(doubled, pmf2).sigma_min;
  check.expected = check.base_sigma_min * check.base_sigma_min;
  check.ok = std::abs(check.product_sigma_min - check.expected) <= 1e-8;
  return check;
}

}  // namespace ensrlab
