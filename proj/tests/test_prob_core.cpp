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

#include <doctest.h>

#include "ensrlab/error.hpp"
#include "ensrlab/prob_core.hpp"
#include "ensrlab/verify.hpp"

namespace ensrlab {
namespace {

// BSC(alpha) observed through uniform input, rows = X in {-1,+1}.
JointDistribution bsc_joint(double alpha, double p = 0.5) {
  Matrix m(2, 2);
  m(0, 0) = (1.0 - p) * (1.0 - alpha);
  m(0, 1) = p * alpha;
  m(1, 0) = (1.0 - p) * alpha;
  m(1, 1) = p * (1.0 - alpha);
  return JointDistribution(Alphabet::signs(), Alphabet::binary(), std::move(m));
}

TEST_SUITE_BEGIN("prob_core");

TEST_CASE("marginals of the reference joints") {
  const auto uniform = JointDistribution::independent(
      Alphabet::binary(), {0.5, 0.5}, Alphabet::binary(), {0.5, 0.5});
  auto [mu, mv] = marginals(uniform);
  CHECK(mu[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mv[1] == doctest::Approx(0.5).epsilon(1e-12));

  const auto diag = JointDistribution::diagonal(Alphabet::binary(), {0.3, 0.7});
  auto [du, dv] = marginals(diag);
  CHECK(du[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(dv[1] == doctest::Approx(0.7).epsilon(1e-12));

  const auto bsc = JointDistribution(
      Alphabet::signs(), Alphabet::signs(),
      Matrix{{0.45, 0.05}, {0.05, 0.45}});
  auto [bu, bv] = marginals(bsc);
  CHECK(bu[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(bv[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("compose with identity and constant filters") {
  const auto j = bsc_joint(0.1);
  const auto same = compose(j, Channel::identity(j.col_alphabet()));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k)
      CHECK(same(i, k) == doctest::Approx(j(i, k)).epsilon(1e-14));

  const auto collapsed =
      compose(j, Channel::constant(j.col_alphabet(), Alphabet({7.0}), 0));
  CHECK(collapsed.col_alphabet().size() == 1);
  CHECK(collapsed(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(collapsed(1, 0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("compose chains binary symmetric channels") {
  const auto j = bsc_joint(0.1);
  const Channel second(Alphabet::binary(), Alphabet::binary(),
                       Matrix{{0.8, 0.2}, {0.2, 0.8}});
  const auto chained = compose(j, second);
  // 0.1 * 0.8 + 0.9 * 0.2 = 0.26 crossover.
  CHECK(chained(0, 0) == doctest::Approx(0.5 * 0.74).epsilon(1e-12));
  CHECK(chained(0, 1) == doctest::Approx(0.5 * 0.26).epsilon(1e-12));
  // X-marginal untouched.
  CHECK(chained.row_marginal()[0] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("compose rejects mismatched alphabets") {
  const auto j = bsc_joint(0.1);
  const Channel wrong(Alphabet({0.0, 1.0, 2.0}), Alphabet::binary(),
                      Matrix{{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}});
  CHECK_THROWS_AS(compose(j, wrong), DimensionError);
}

TEST_CASE("mmse of perfect, useless, and noisy observations") {
  const auto diag = JointDistribution::diagonal(Alphabet::signs(), {0.5, 0.5});
  CHECK(mmse(diag) == doctest::Approx(0.0).epsilon(1e-14));

  const auto indep = JointDistribution::independent(
      Alphabet::signs(), {0.5, 0.5}, Alphabet::binary(), {0.25, 0.75});
  CHECK(mmse(indep) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(mmse(bsc_joint(0.1)) == doctest::Approx(0.36).epsilon(1e-12));
}

TEST_CASE("correlation ratio complements the ENSR") {
  const auto indep = JointDistribution::independent(
      Alphabet::signs(), {0.5, 0.5}, Alphabet::binary(), {0.25, 0.75});
  CHECK(correlation_ratio_sq(indep) == doctest::Approx(0.0).epsilon(1e-12));

  const auto diag = JointDistribution::diagonal(Alphabet::signs(), {0.4, 0.6});
  CHECK(correlation_ratio_sq(diag) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(correlation_ratio_sq(bsc_joint(0.1)) ==
        doctest::Approx(0.64).epsilon(1e-12));

  const auto constant = JointDistribution::independent(
      Alphabet({3.0}), {1.0}, Alphabet::binary(), {0.5, 0.5});
  CHECK_THROWS_AS(correlation_ratio_sq(constant), DegenerateError);
}

TEST_CASE("pmf variance basics") {
  CHECK(pmf_variance({0.7, 0.3}, Alphabet::binary()) ==
        doctest::Approx(0.21).epsilon(1e-12));
  CHECK(pmf_variance({1.0}, Alphabet({2.5})) == doctest::Approx(0.0));
  CHECK(pmf_variance({0.5, 0.5}, Alphabet::signs()) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("construction guards") {
  CHECK_THROWS_AS(Alphabet({1.0, 1.0}), InvariantError);
  CHECK_THROWS_AS(Alphabet({2.0, 1.0}), InvariantError);
  CHECK_THROWS_AS(Alphabet(std::vector<double>{}), InvariantError);
  CHECK_THROWS_AS(JointDistribution(Alphabet::binary(), Alphabet::binary(),
                                    Matrix{{0.5, 0.5}, {0.5, 0.5}}),
                  InvariantError);  // sums to 2
  CHECK_THROWS_AS(JointDistribution(Alphabet::binary(), Alphabet::binary(),
                                    Matrix{{0.6, -0.1}, {0.3, 0.2}}),
                  InvariantError);
  CHECK_THROWS_AS(Channel(Alphabet::binary(), Alphabet::binary(),
                          Matrix{{0.9, 0.2}, {0.5, 0.5}}),
                  InvariantError);
}

TEST_CASE("conditional stats flag zero-mass columns") {
  const JointDistribution j(Alphabet::signs(), Alphabet({0.0, 1.0, 2.0}),
                            Matrix{{0.5, 0.0, 0.1}, {0.3, 0.0, 0.1}});
  const ConditionalStats s = conditional_stats(j);
  CHECK(s.undefined[1] == 1);
  CHECK(s.cond_mean[1] == 0.0);
  CHECK(s.cond_var[1] == 0.0);
  CHECK(s.undefined[0] == 0);
}

TEST_CASE("law of total variance on random joints") {
  Rng rng(2026);
  for (int t = 0; t < 25; ++t) {
    const auto j = random_joint(rng, 2 + t % 3, 2 + (t / 3) % 3);
    const ConditionalStats s = conditional_stats(j);
    double e_var = 0.0, var_e = 0.0;
    const double mean = j.row_mean();
    for (std::size_t v = 0; v < s.marginal_v.size(); ++v) {
      e_var += s.marginal_v[v] * s.cond_var[v];
      var_e += s.marginal_v[v] * (s.cond_mean[v] - mean) * (s.cond_mean[v] - mean);
    }
    CHECK(e_var + var_e == doctest::Approx(j.row_variance()).epsilon(1e-10));
    // Complement identity: mmse/var = 1 - eta^2.
    CHECK(mmse(j) / j.row_variance() ==
          doctest::Approx(1.0 - correlation_ratio_sq(j)).epsilon(1e-10));
  }
}

TEST_CASE("data processing for the correlation ratio") {
  Rng rng(77);
  for (int t = 0; t < 20; ++t) {
    const auto j = random_joint(rng, 3, 3);
    const auto filter = random_channel(rng, j.col_alphabet(), 4);
    const auto j_xz = compose(j, filter);
    CHECK(correlation_ratio_sq(j_xz) <=
          correlation_ratio_sq(j) + 1e-10);
    // Composition preserves the X-marginal exactly.
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(j_xz.row_marginal()[i] ==
            doctest::Approx(j.row_marginal()[i]).epsilon(1e-13));
  }
}

TEST_SUITE_END();

}  // namespace
}  // namespace ensrlab
