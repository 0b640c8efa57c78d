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

#include "ensrlab/biso.hpp"
#include "ensrlab/error.hpp"
#include "ensrlab/filter_search.hpp"
#include "ensrlab/verify.hpp"

namespace ensrlab {
namespace {

TEST_SUITE_BEGIN("biso");

TEST_CASE("BSC construction and moments") {
  const BisoChannel b = make_bsc(0.1, 0.5);
  CHECK_FALSE(b.zero_split);
  CHECK(b.x_values.size() == 2);
  const BisoReport r = biso_report(b);
  CHECK(r.ex_given_y1 == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(r.var_y == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(r.var_x == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.var_x_given_y1 == doctest::Approx(0.36).epsilon(1e-12));
  CHECK(r.rho_m_sq == doctest::Approx(0.64).epsilon(1e-10));
}

TEST_CASE("BEC construction splits the zero symbol") {
  const BisoChannel b = make_bec(0.5, 0.5);
  CHECK(b.zero_split);
  CHECK(b.x_values.size() == 4);
  CHECK(b.x_values[1] == 0.0);
  CHECK(b.x_values[2] == 0.0);
  const BisoReport r = biso_report(b);
  CHECK(r.ex_given_y1 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.var_x == doctest::Approx(0.5).epsilon(1e-14));  // 1 - delta at p=1/2
  CHECK(r.rho_m_sq == doctest::Approx(0.5).epsilon(1e-8));

  // The induced joint merges the zero twins back into one numeric symbol.
  const JointDistribution j = induced_joint(b);
  CHECK(j.row_alphabet().size() == 3);
  CHECK(j.row_marginal()[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("asymmetric channels are rejected") {
  CHECK_THROWS_AS(build_biso(0.5, {-1.0, 1.0},
                             Matrix{{0.7, 0.3}, {0.4, 0.6}}),
                  NotBisoError);
  CHECK_THROWS_AS(build_biso(0.5, {-1.0, 2.0},
                             Matrix{{0.7, 0.3}, {0.3, 0.7}}),
                  NotBisoError);
  CHECK_THROWS_AS(build_biso(1.0, {-1.0, 1.0},
                             Matrix{{0.9, 0.1}, {0.1, 0.9}}),
                  ArgumentError);
}

TEST_CASE("symmetry identities hold for every constructed channel") {
  Rng rng(811);
  for (double p : {0.3, 0.5, 0.7}) {
    for (int t = 0; t < 8; ++t) {
      // Random BISO over {-2,-1,0,+1,+2}: choose row 1 freely, mirror row 0.
      auto row1 = rng.simplex_point(5);
      Matrix trans(2, 5);
      for (int i = 0; i < 5; ++i) {
        trans(1, i) = row1[i];
        trans(0, 4 - i) = row1[i];
      }
      const BisoChannel b =
          build_biso(p, {-2.0, -1.0, 0.0, 1.0, 2.0}, trans);
      const BisoReport r = biso_report(b);
      const double var_e = 4.0 * r.var_y * r.ex_given_y1 * r.ex_given_y1;
      CHECK(r.var_x - r.var_x_given_y1 == doctest::Approx(var_e).epsilon(1e-10));

      // E[X|Y=0] = -E[X|Y=1].
      double ex0 = 0.0;
      for (std::size_t i = 0; i < b.x_values.size(); ++i)
        ex0 += b.trans(0, i) * b.x_values[i];
      CHECK(ex0 == doctest::Approx(-r.ex_given_y1).epsilon(1e-12));
    }
  }
}

TEST_CASE("W closed form on the reference channels") {
  const BisoChannel bsc = make_bsc(0.1, 0.5);
  CHECK(w_eps_closed(bsc, 0.32).value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(w_eps_closed(bsc, 0.0).value == doctest::Approx(1.0).epsilon(1e-14));

  const BisoChannel bec = make_bec(0.5, 0.5);
  CHECK(w_eps_closed(bec, 0.25).value == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(w_eps_closed(bsc, -0.1), ArgumentError);
  CHECK_THROWS_AS(w_eps_closed(bsc, 0.9), ArgumentError);
}

TEST_CASE("degenerate BISO with E[X|Y=1] = 0 is an error") {
  const BisoChannel flat =
      build_biso(0.5, {-1.0, 1.0}, Matrix{{0.5, 0.5}, {0.5, 0.5}});
  CHECK_THROWS_AS(w_eps_closed(flat, 0.0), DegenerateError);
  CHECK_THROWS_AS(initial_efficiency(flat), DegenerateError);
}

TEST_CASE("W formula clamps once the budget passes the weak cap") {
  // A skewed BEC leaves a gap between eta^2_Y(X) and rho_m^2(X;Y) (a binary
  // X never does); beyond the weak cap the raw formula goes negative and
  // clamps to 0.
  const BisoChannel bec = make_bec(0.5, 0.3);
  const JointDistribution j = induced_joint(bec);
  const double wcap = weak_cap(j);
  const double cap = strong_cap(j);
  REQUIRE(wcap < cap - 1e-3);
  const WepsClosed at_cap = w_eps_closed(bec, wcap);
  CHECK(at_cap.value == doctest::Approx(0.0).epsilon(1e-9));
  const WepsClosed beyond = w_eps_closed(bec, 0.5 * (wcap + cap));
  CHECK(beyond.value == 0.0);
  CHECK(beyond.clamped);
}

TEST_CASE("M bounds coincide for the symmetric references") {
  const BisoChannel bsc = make_bsc(0.1, 0.5);
  for (double eps : {0.1, 0.32, 0.5}) {
    const auto [lo, hi] = m_eps_bounds(bsc, eps);
    CHECK(lo == doctest::Approx(hi).epsilon(1e-9));
    CHECK(lo == doctest::Approx(1.0 - eps / 0.64).epsilon(1e-9));
  }
  const BisoChannel bec = make_bec(0.5, 0.5);
  const auto [lo, hi] = m_eps_bounds(bec, 0.25);
  CHECK(hi == doctest::Approx(1.0 - 0.25 / 0.5).epsilon(1e-8));
  CHECK(lo == doctest::Approx(hi).epsilon(1e-8));
}

TEST_CASE("M bounds bracket the numeric search when p is skewed") {
  const BisoChannel bec = make_bec(0.5, 0.3);
  const JointDistribution j = induced_joint(bec);
  const double eps = 0.5 * weak_cap(j);
  const auto [lo, hi] = m_eps_bounds(bec, eps);
  CHECK(lo < hi - 1e-3);
  SearchConfig cfg;
  cfg.restarts = 8;
  FilterProblem prob{j, eps, ConstraintKind::kStrong, 0};
  const double m = solve(prob, cfg).ensr;
  CHECK(m >= lo - 1e-3);
  CHECK(m <= hi + 1e-6);
}

TEST_CASE("the linear MMSE relation is an identity") {
  const BisoChannel bsc = make_bsc(0.1, 0.5);
  const auto identity = Channel::identity(Alphabet::binary());
  const auto [l_id, r_id] = mmse_linear_relation(bsc, identity);
  CHECK(l_id == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r_id == doctest::Approx(0.0).epsilon(1e-12));

  const auto constant =
      Channel::constant(Alphabet::binary(), Alphabet({0.0}), 0);
  const auto [l_c, r_c] = mmse_linear_relation(bsc, constant);
  CHECK(l_c == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r_c == doctest::Approx(0.25).epsilon(1e-12));

  Rng rng(821);
  for (double p : {0.3, 0.5, 0.7}) {
    for (const BisoChannel& b : {make_bsc(0.1, p), make_bsc(0.3, p),
                                 make_bec(0.5, p)}) {
      double worst = 0.0;
      for (int t = 0; t < 100; ++t) {
        const Channel f = random_channel(rng, Alphabet::binary(), 3);
        const auto [lhs, rhs] = mmse_linear_relation(b, f);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
      CHECK(worst < 1e-10);
    }
  }
}

TEST_CASE("error probability bounds") {
  const BisoChannel bsc = make_bsc(0.1, 0.5);
  const auto [lo, hi] = p_error_bounds(bsc, 0.32);
  CHECK(lo == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(hi == doctest::Approx(0.25).epsilon(1e-12));

  const auto [lo0, hi0] = p_error_bounds(bsc, 0.0);
  CHECK(lo0 == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(hi0 == doctest::Approx(0.5).epsilon(1e-14));  // capped at 1 - p

  const BisoChannel bec = make_bec(0.5, 0.5);
  const auto [lob, hib] = p_error_bounds(bec, 0.25);
  CHECK(lob == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(hib == doctest::Approx(0.25).epsilon(1e-12));

  CHECK_THROWS_AS(p_error_bounds(make_bsc(0.1, 0.3), 0.1), ScopeError);
}

TEST_CASE("initial efficiency values and slope cross-check") {
  const InitialEfficiency e1 = initial_efficiency(make_bsc(0.1, 0.5));
  CHECK(e1.slope == doctest::Approx(0.390625).epsilon(1e-12));
  CHECK(e1.max_ratio == doctest::Approx(0.390625).epsilon(1e-12));

  const InitialEfficiency e2 = initial_efficiency(make_bsc(0.0, 0.5));
  CHECK(e2.slope == doctest::Approx(0.25).epsilon(1e-12));

  const InitialEfficiency e3 = initial_efficiency(make_bec(0.5, 0.5));
  CHECK(e3.slope == doctest::Approx(0.5).epsilon(1e-12));

  // Slope of eps -> var(Y)(1 - W_eps) at zero.
  const BisoChannel b = make_bsc(0.1, 0.5);
  const double h = 1e-6;
  const double fd =
      0.25 * (1.0 - w_eps_closed(b, h).value) / h;
  CHECK(fd == doctest::Approx(e1.slope).epsilon(1e-6));
}

TEST_CASE("the efficiency ratio is constant across filters") {
  // (var(Y) - mmse(Y|Z)) / (var(X) - mmse(X|Z)) collapses to the max ratio
  // for every filter, a direct consequence of the linear relation.
  Rng rng(829);
  const BisoChannel b = make_bec(0.3, 0.6);
  const BisoReport r = biso_report(b);
  const double max_ratio = initial_efficiency(b).max_ratio;
  const JointDistribution j_xy = induced_joint(b);
  for (int t = 0; t < 40; ++t) {
    const Channel f = random_channel(rng, Alphabet::binary(), 3);
    const double mmse_y = mmse(joint_from_channel({1.0 - b.p, b.p}, f));
    const double mmse_x = mmse(compose(j_xy, f));
    const double denom = r.var_x - mmse_x;
    if (denom < 1e-6) continue;  // nearly constant filter
    CHECK((r.var_y - mmse_y) / denom ==
          doctest::Approx(max_ratio).epsilon(1e-9));
  }
}

TEST_CASE("W closed form matches the weak-mode grid search") {
  SearchConfig cfg;
  cfg.restarts = 8;
  for (double p : {0.5, 0.7}) {
    const BisoChannel b = make_bsc(0.1, p);
    const JointDistribution j = induced_joint(b);
    const double wcap = weak_cap(j);
    for (double f : {0.3, 0.7}) {
      const double eps = f * wcap;
      FilterProblem prob{j, eps, ConstraintKind::kWeak, 0};
      CHECK(solve(prob, cfg).ensr ==
            doctest::Approx(w_eps_closed(b, eps).value).epsilon(1e-3));
    }
  }
}

TEST_CASE("BSC maximal correlation is (1-2a)^2 only at p = 1/2") {
  for (double alpha : {0.05, 0.2, 0.35}) {
    const double tight = (1.0 - 2.0 * alpha) * (1.0 - 2.0 * alpha);
    for (double p : {0.2, 0.35, 0.5, 0.65, 0.8}) {
      const double observed = strong_cap(induced_joint(make_bsc(alpha, p)));
      CHECK(observed <= tight + 1e-10);
      if (p == 0.5)
        CHECK(observed == doctest::Approx(tight).epsilon(1e-10));
      else
        CHECK(observed < tight - 1e-6);
    }
  }
}

TEST_CASE("BEC maximal correlation equals 1 - delta for every p") {
  for (double delta : {0.1, 0.5, 0.9}) {
    for (double p : {0.2, 0.5, 0.8}) {
      CHECK(strong_cap(induced_joint(make_bec(delta, p))) ==
            doctest::Approx(1.0 - delta).epsilon(1e-8));
    }
  }
}

TEST_SUITE_END();

}  // namespace
}  // namespace ensrlab
