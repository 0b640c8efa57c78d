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

#include <cmath>

#include <doctest.h>

#include "ensrlab/dependence.hpp"
#include "ensrlab/error.hpp"
#include "ensrlab/verify.hpp"

namespace ensrlab {
namespace {

JointDistribution bsc_joint(double alpha, double p = 0.5) {
  Matrix m(2, 2);
  m(0, 0) = (1.0 - p) * (1.0 - alpha);
  m(0, 1) = p * alpha;
  m(1, 0) = (1.0 - p) * alpha;
  m(1, 1) = p * (1.0 - alpha);
  return JointDistribution(Alphabet::signs(), Alphabet::binary(), std::move(m));
}

// Correlation of f(U) and g(V) under the joint.
double correlation(const JointDistribution& j, const std::vector<double>& f,
                   const std::vector<double>& g) {
  double ef = 0.0, eg = 0.0, ef2 = 0.0, eg2 = 0.0, efg = 0.0;
  for (std::size_t u = 0; u < f.size(); ++u) {
    ef += j.row_marginal()[u] * f[u];
    ef2 += j.row_marginal()[u] * f[u] * f[u];
  }
  for (std::size_t v = 0; v < g.size(); ++v) {
    eg += j.col_marginal()[v] * g[v];
    eg2 += j.col_marginal()[v] * g[v] * g[v];
  }
  for (std::size_t u = 0; u < f.size(); ++u)
    for (std::size_t v = 0; v < g.size(); ++v) efg += j(u, v) * f[u] * g[v];
  const double denom =
      std::sqrt((ef2 - ef * ef) * (eg2 - eg * eg));
  return (efg - ef * eg) / denom;
}

TEST_SUITE_BEGIN("dependence");

TEST_CASE("independent pairs have zero maximal correlation") {
  const auto j = JointDistribution::independent(
      Alphabet::signs(), {0.3, 0.7}, Alphabet({0.0, 1.0, 2.0}),
      {0.2, 0.5, 0.3});
  const SpectralReport rep = maximal_correlation(j);
  CHECK(rep.rho_m == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(rep.singular_values[0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("a deterministic coupling has maximal correlation one") {
  const auto j = JointDistribution::diagonal(Alphabet({1.0, 2.0, 5.0}),
                                             {0.2, 0.5, 0.3});
  CHECK(maximal_correlation(j).rho_m == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("uniform binary input through BSC(0.1)") {
  const SpectralReport rep = maximal_correlation(bsc_joint(0.1));
  CHECK(rep.rho_m == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(rep.singular_values[0] == doctest::Approx(1.0).epsilon(1e-10));
  // The optimal pair witnesses the supremum.
  CHECK(correlation(bsc_joint(0.1), rep.optimal_f, rep.optimal_g) ==
        doctest::Approx(0.8).epsilon(1e-8));
}

TEST_CASE("optimal functions are standardized") {
  Rng rng(5);
  for (int t = 0; t < 15; ++t) {
    const auto j = random_joint(rng, 2 + t % 3, 2 + (t + 1) % 3);
    const SpectralReport rep = maximal_correlation(j);
    CHECK(rep.singular_values[0] == doctest::Approx(1.0).epsilon(1e-8));
    double mean_f = 0.0, var_f = 0.0;
    for (std::size_t u = 0; u < rep.optimal_f.size(); ++u)
      mean_f += j.row_marginal()[u] * rep.optimal_f[u];
    for (std::size_t u = 0; u < rep.optimal_f.size(); ++u)
      var_f += j.row_marginal()[u] * (rep.optimal_f[u] - mean_f) *
               (rep.optimal_f[u] - mean_f);
    CHECK(std::abs(mean_f) < 1e-8);
    CHECK(var_f == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rep.rho_m >= -1e-12);
    CHECK(rep.rho_m <= 1.0 + 1e-12);
  }
}

TEST_CASE("zero-mass symbols are pruned before the spectral pass") {
  // Same BSC joint with a dead row and column spliced in.
  const JointDistribution padded(
      Alphabet({-1.0, 0.5, 1.0}), Alphabet({0.0, 0.7, 1.0}),
      Matrix{{0.45, 0.0, 0.05}, {0.0, 0.0, 0.0}, {0.05, 0.0, 0.45}});
  const SpectralReport rep = maximal_correlation(padded);
  CHECK(rep.rho_m == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(rep.optimal_f[1] == 0.0);  // pruned symbol
  CHECK(rep.optimal_g[1] == 0.0);
  CHECK(rho_m_sq(padded) == doctest::Approx(0.64).epsilon(1e-10));
}

TEST_CASE("degenerate variables report zero") {
  const auto j = JointDistribution::independent(
      Alphabet({1.0}), {1.0}, Alphabet::binary(), {0.5, 0.5});
  const SpectralReport rep = maximal_correlation(j);
  CHECK(rep.degenerate);
  CHECK(rep.rho_m == 0.0);
}

TEST_CASE("renyi value is maximized by the optimal function") {
  const auto j = bsc_joint(0.1);
  const SpectralReport rep = maximal_correlation(j);
  CHECK(renyi_value(j, rep.optimal_f) == doctest::Approx(0.64).epsilon(1e-8));
}

TEST_CASE("renyi value never beats rho_m^2") {
  Rng rng(17);
  for (int t = 0; t < 6; ++t) {
    const auto j = random_joint(rng, 3, 4);
    const double cap = rho_m_sq(j);
    double best = 0.0;
    for (int s = 0; s < 1000; ++s) {
      std::vector<double> f(3);
      for (auto& v : f) v = rng.uniform(-1.0, 1.0);
      best = std::max(best, renyi_value(j, f));
    }
    CHECK(best <= cap + 1e-9);
    const SpectralReport rep = maximal_correlation(j);
    CHECK(renyi_value(j, rep.optimal_f) == doctest::Approx(cap).epsilon(1e-8));
  }
}

TEST_CASE("renyi value rejects constant functions") {
  const auto j = bsc_joint(0.2);
  CHECK_THROWS_AS(renyi_value(j, {2.0, 2.0}), DegenerateError);
}

TEST_CASE("independent joints give zero renyi value for any f") {
  const auto j = JointDistribution::independent(
      Alphabet::signs(), {0.4, 0.6}, Alphabet::binary(), {0.5, 0.5});
  CHECK(renyi_value(j, {-1.0, 1.0}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("value-only rho_m_sq agrees with the Jacobi report") {
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    const auto j = random_joint(rng, 2 + t % 4, 2 + (t + 2) % 4);
    const SpectralReport rep = maximal_correlation(j);
    CHECK(rho_m_sq(j) ==
          doctest::Approx(rep.rho_m * rep.rho_m).epsilon(1e-9));
  }
}

TEST_CASE("weak independence detection") {
  // BSC(0.1): the two conditional pmfs are linearly independent.
  const Channel bsc(Alphabet::binary(), Alphabet::signs(),
                    Matrix{{0.9, 0.1}, {0.1, 0.9}});
  const auto r1 = weak_independence_test(bsc, {0.5, 0.5});
  CHECK_FALSE(r1.weakly_independent);
  CHECK(r1.rank == 2);
  CHECK(r1.sigma_min > 0.1);

  // |Y| = 3 > |X| = 2: any three 2-vectors are dependent.
  const Channel wide(Alphabet({0.0, 1.0, 2.0}), Alphabet::signs(),
                     Matrix{{0.9, 0.1}, {0.5, 0.5}, {0.2, 0.8}});
  const auto r2 = weak_independence_test(wide, {0.3, 0.3, 0.4});
  CHECK(r2.weakly_independent);
  CHECK(r2.sigma_min == 0.0);

  // Duplicated conditional rows.
  const Channel dup(Alphabet::binary(), Alphabet::signs(),
                    Matrix{{0.6, 0.4}, {0.6, 0.4}});
  const auto r3 = weak_independence_test(dup, {0.5, 0.5});
  CHECK(r3.weakly_independent);
  CHECK(r3.rank == 1);
}

TEST_CASE("weak independence needs a fully supported input pmf") {
  const Channel bsc(Alphabet::binary(), Alphabet::signs(),
                    Matrix{{0.9, 0.1}, {0.1, 0.9}});
  CHECK_THROWS_AS(weak_independence_test(bsc, {1.0, 0.0}), ArgumentError);
  CHECK_THROWS_AS(weak_independence_test(bsc, {0.5, 0.5, 0.0}),
                  DimensionError);
}

TEST_CASE("strong data processing inequality on random chains") {
  Rng rng(47);
  for (int t = 0; t < 25; ++t) {
    const auto j = random_joint(rng, 2 + t % 3, 2 + (t + 1) % 3);
    const auto filter = random_channel(rng, j.col_alphabet(), 3);
    const SdpiCheck c = verify_sdpi(j, filter);
    CHECK(c.holds);
    CHECK(c.lhs <= c.rhs + 1e-8);
  }
}

TEST_CASE("data processing inequality along the chain") {
  Rng rng(53);
  for (int t = 0; t < 20; ++t) {
    const auto j = random_joint(rng, 3, 3);
    const auto filter = random_channel(rng, j.col_alphabet(), 3);
    const double rho_xz = rho_m_sq(compose(j, filter));
    const double rho_xy = rho_m_sq(j);
    const double rho_yz =
        rho_m_sq(joint_from_channel(j.col_marginal(), filter));
    CHECK(rho_xz <= std::min(rho_xy, rho_yz) + 1e-8);
  }
}

TEST_CASE("identity and constant filters give SDPI extremes") {
  const auto j = bsc_joint(0.1);
  const SdpiCheck ident = verify_sdpi(j, Channel::identity(j.col_alphabet()));
  CHECK(ident.lhs == doctest::Approx(ident.rho_sq_xy).epsilon(1e-9));
  CHECK(ident.rho_sq_yz == doctest::Approx(1.0).epsilon(1e-9));

  const SdpiCheck constant = verify_sdpi(
      j, Channel::constant(j.col_alphabet(), Alphabet({0.0}), 0));
  CHECK(constant.lhs == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("binary symmetric chains meet the SDPI with equality") {
  const auto j = bsc_joint(0.1);
  const Channel filter(Alphabet::binary(), Alphabet::binary(),
                       Matrix{{0.8, 0.2}, {0.2, 0.8}});
  const SdpiCheck c = verify_sdpi(j, filter);
  CHECK(c.lhs == doctest::Approx(0.2304).epsilon(1e-9));
  CHECK(c.rhs == doctest::Approx(0.2304).epsilon(1e-9));
}

TEST_CASE("tensorization takes the larger component") {
  const auto j1 = bsc_joint(0.1);
  const auto j2 = bsc_joint(0.3);
  const TensorResult t = tensor_rho_m(j1, j2);
  CHECK(t.rho_1 == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(t.rho_2 == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(t.max_component == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(t.rho_product == doctest::Approx(0.8).epsilon(1e-8));

  const auto eq = tensor_rho_m(j1, j1);
  CHECK(eq.rho_product == doctest::Approx(0.8).epsilon(1e-8));

  const auto indep = JointDistribution::independent(
      Alphabet::signs(), {0.5, 0.5}, Alphabet::binary(), {0.5, 0.5});
  const auto mixed = tensor_rho_m(indep, j2);
  CHECK(mixed.rho_product == doctest::Approx(0.4).epsilon(1e-8));
}

TEST_CASE("tensorization on random pairs") {
  Rng rng(61);
  for (int t = 0; t < 10; ++t) {
    const auto j1 = random_joint(rng, 2, 3);
    const auto j2 = random_joint(rng, 3, 2);
    const TensorResult r = tensor_rho_m(j1, j2);
    CHECK(r.rho_product == doctest::Approx(r.max_component).epsilon(1e-8));
  }
}

TEST_CASE("kron enforces the size cap") {
  Rng rng(67);
  const auto big1 = random_joint(rng, 9, 8);
  const auto big2 = random_joint(rng, 8, 8);
  CHECK_THROWS_AS(kron(big1, big2), ResourceError);
}

TEST_CASE("the estimation floor equals one minus rho_m squared") {
  Rng rng(73);
  for (int t = 0; t < 20; ++t) {
    const auto j = random_joint(rng, 2 + t % 3, 2 + (t + 1) % 4);
    const auto filter = random_channel(rng, j.col_alphabet(), 3);
    const auto j_xz = compose(j, filter);
    const SpectralReport rep = maximal_correlation(j_xz);
    // min_f mmse(f(X)|Z)/var(f(X)) = 1 - rho_m^2, attained by optimal_f.
    const double floor = 1.0 - rep.rho_m * rep.rho_m;
    CHECK(1.0 - renyi_value(j_xz, rep.optimal_f) ==
          doctest::Approx(floor).epsilon(1e-8));
    for (int s = 0; s < 25; ++s) {
      std::vector<double> f(j_xz.row_alphabet().size());
      for (auto& v : f) v = rng.uniform(-1.0, 1.0);
      CHECK(1.0 - renyi_value(j_xz, f) >= floor - 1e-9);
    }
  }
}

TEST_SUITE_END();

}  // namespace
}  // namespace ensrlab
