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

#include "ensrlab/verify.hpp"

#include <algorithm>
#include <cmath>

#include "ensrlab/biso.hpp"
#include "ensrlab/gaussian.hpp"
#include "ensrlab/iid_tensor.hpp"

namespace ensrlab {

namespace {

ClaimCheck claim_leq(const std::string& name, double observed,
                     double tolerance) {
  return {name, observed, 0.0, tolerance, observed <= tolerance};
}

ClaimCheck claim_near(const std::string& name, double observed,
                      double expected, double tolerance) {
  return {name, observed, expected, tolerance,
          std::abs(observed - expected) <= tolerance};
}

ClaimCheck claim_true(const std::string& name, bool ok) {
  return {name, ok ? 1.0 : 0.0, 1.0, 0.0, ok};
}

void finish(SuiteReport& rep) {
  rep.pass = true;
  for (const auto& c : rep.claims) rep.pass = rep.pass && c.pass;
}

std::vector<double> scaled_grid(double cap, std::initializer_list<double> f) {
  std::vector<double> out;
  for (double x : f) out.push_back(x * cap);
  return out;
}

SearchConfig search_config(const VerifyConfig& cfg) {
  SearchConfig sc;
  sc.seed = cfg.seed;
  sc.grid_resolution = cfg.grid_resolution;
  sc.restarts = cfg.restarts;
  sc.threads = cfg.threads;
  return sc;
}

JointDistribution bsc_uniform_joint(double alpha) {
  return induced_joint(make_bsc(alpha, 0.5));
}

}  // namespace

JointDistribution random_joint(Rng& rng, std::size_t nx, std::size_t ny) {
  Matrix p(nx, ny);
  double total = 0.0;
  for (auto& v : p.data()) {
    v = rng.exponential();
    total += v;
  }
  for (auto& v : p.data()) v /= total;
  std::vector<double> xs(nx), ys(ny);
  for (std::size_t i = 0; i < nx; ++i)
    xs[i] = static_cast<double>(i) + 0.2 * rng.uniform();
  for (std::size_t k = 0; k < ny; ++k)
    ys[k] = static_cast<double>(k) + 0.2 * rng.uniform();
  return JointDistribution(Alphabet(xs), Alphabet(ys), std::move(p));
}

Channel random_channel(Rng& rng, const Alphabet& input, std::size_t z_size) {
  std::vector<double> z_vals(z_size);
  for (std::size_t i = 0; i < z_size; ++i) z_vals[i] = static_cast<double>(i);
  Matrix k(input.size(), z_size);
  for (std::size_t y = 0; y < input.size(); ++y) {
    const auto row = rng.simplex_point(z_size);
    for (std::size_t z = 0; z < z_size; ++z) k(y, z) = row[z];
  }
  return Channel(input, Alphabet(z_vals), std::move(k));
}

SuiteReport run_bounds_suite(const VerifyConfig& cfg) {
  SuiteReport rep;
  rep.suite = "bounds";
  const SearchConfig sc = search_config(cfg);
  Rng rng(cfg.seed ^ 0xb0u);

  const std::vector<std::pair<std::size_t, std::size_t>> shapes = {
      {2, 2}, {2, 3}, {3, 3}};
  for (const auto& [nx, ny] : shapes) {
    const JointDistribution j = random_joint(rng, nx, ny);
    const double cap = strong_cap(j);
    const BoundsReport br =
        verify_bounds(j, scaled_grid(cap, {0.15, 0.45, 0.75, 1.0}), sc);
    const std::string tag =
        std::to_string(nx) + "x" + std::to_string(ny);
    double worst = 0.0;
    for (const auto& row : br.rows) {
      worst = std::max(worst, -row.w);
      worst = std::max(worst, row.w - row.m);
      worst = std::max(worst, row.m - row.upper_trivial);
      worst = std::max(worst, row.m - row.upper_strong);
      worst = std::max(worst, row.w - row.upper_weak);
    }
    rep.claims.push_back(
        claim_leq("bound chain worst violation (" + tag + ")", worst, 1e-6));
  }

  // Binary Y with dependent X admits no nontrivial perfect privacy.
  const JointDistribution j22 = bsc_uniform_joint(0.1);
  FilterProblem p0{j22, 0.0, ConstraintKind::kStrong, 0};
  rep.claims.push_back(
      claim_near("M_0 = 1 for binary Y", solve(p0, sc).ensr, 1.0, 1e-6));
  FilterProblem pcap{j22, strong_cap(j22), ConstraintKind::kStrong, 0};
  rep.claims.push_back(
      claim_near("M = 0 at eps = rho_m^2", solve(pcap, sc).ensr, 0.0, 1e-6));

  finish(rep);
  return rep;
}

SuiteReport run_convexity_suite(const VerifyConfig& cfg) {
  SuiteReport rep;
  rep.suite = "convexity";
  const SearchConfig sc = search_config(cfg);
  Rng rng(cfg.seed ^ 0xc0u);

  auto curve_points = [](const PrivacyCurve& curve) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : curve.points) pts.emplace_back(p.eps, p.value);
    return pts;
  };

  const std::vector<std::pair<std::size_t, std::size_t>> shapes = {{2, 2},
                                                                   {3, 3}};
  for (const auto& [nx, ny] : shapes) {
    const JointDistribution j = random_joint(rng, nx, ny);
    const double cap = strong_cap(j);
    const auto grid = scaled_grid(cap, {0.1, 0.3, 0.5, 0.7, 0.9});
    const std::string tag = std::to_string(nx) + "x" + std::to_string(ny);
    for (const ConstraintKind kind :
         {ConstraintKind::kStrong, ConstraintKind::kWeak}) {
      const ConvexityReport cr =
          verify_convexity(curve_points(privacy_curve(j, kind, grid, sc)));
      rep.claims.push_back(claim_leq(
          "convexity violation " + to_string(kind) + " (" + tag + ")",
          cr.max_violation, 1e-3));
      rep.claims.push_back(claim_leq(
          "(1-value)/eps monotone " + to_string(kind) + " (" + tag + ")",
          cr.max_chord_ratio_violation, 1e-3));
    }
  }

  // The erasure chord itself is affine, hence convex with zero slack.
  const JointDistribution bsc = bsc_uniform_joint(0.1);
  const double cap = strong_cap(bsc);
  std::vector<std::pair<double, double>> chord;
  for (double f : {0.1, 0.3, 0.5, 0.7, 0.9})
    chord.emplace_back(f * cap, 1.0 - f);
  const ConvexityReport cr = verify_convexity(chord);
  rep.claims.push_back(
      claim_leq("erasure chord convexity", cr.max_violation, 1e-12));

  finish(rep);
  return rep;
}

SuiteReport run_biso_suite(const VerifyConfig& cfg) {
  SuiteReport rep;
  rep.suite = "biso";
  const SearchConfig sc = search_config(cfg);
  Rng rng(cfg.seed ^ 0xb150u);

  struct Case {
    std::string name;
    BisoChannel channel;
  };
  std::vector<Case> cases;
  for (double p : {0.3, 0.5, 0.7}) {
    cases.push_back({"bsc(0.1),p=" + format_double(p), make_bsc(0.1, p)});
    cases.push_back({"bec(0.5),p=" + format_double(p), make_bec(0.5, p)});
  }

  for (const auto& c : cases) {
    const BisoReport r = biso_report(c.channel);
    // var(X) - var(X|Y=1) = var(E[X|Y]) = 4 var(Y) E^2[X|Y=1].
    const double lhs = r.var_x - r.var_x_given_y1;
    const double rhs = 4.0 * r.var_y * r.ex_given_y1 * r.ex_given_y1;
    rep.claims.push_back(
        claim_near("variance identity " + c.name, lhs, rhs, 1e-10));

    double max_dev = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      Rng stream = rng.fork(static_cast<std::uint64_t>(t));
      const Channel f = random_channel(stream, Alphabet::binary(), 3);
      const auto [direct, formula] = mmse_linear_relation(c.channel, f);
      max_dev = std::max(max_dev, std::abs(direct - formula));
    }
    rep.claims.push_back(
        claim_leq("mmse linear relation " + c.name, max_dev, 1e-10));
  }

  // Closed forms vs the numeric search on the induced joints.
  for (double p : {0.5, 0.3}) {
    const BisoChannel bsc = make_bsc(0.1, p);
    const JointDistribution j = induced_joint(bsc);
    const double wcap = weak_cap(j);
    for (double f : {0.25, 0.5, 0.75}) {
      const double eps = f * wcap;
      FilterProblem prob{j, eps, ConstraintKind::kWeak, 0};
      const double numeric = solve(prob, sc).ensr;
      rep.claims.push_back(claim_near(
          "W closed form bsc(0.1) p=" + format_double(p) +
              " eps=" + format_double(eps),
          numeric, w_eps_closed(bsc, eps).value, 1e-3));
    }
  }
  {
    const BisoChannel bec = make_bec(0.5, 0.5);
    const JointDistribution j = induced_joint(bec);
    rep.claims.push_back(claim_near("rho_m^2 = 1 - delta for bec(0.5)",
                                    strong_cap(j), 0.5, 1e-8));
    const double eps = 0.25;
    FilterProblem prob{j, eps, ConstraintKind::kStrong, 0};
    rep.claims.push_back(claim_near("M bec(0.5) p=0.5 eps=0.25",
                                    solve(prob, sc).ensr, 1.0 - eps / 0.5,
                                    1e-3));
  }

  // Bayes-error sandwich against the weak curve.
  for (double p : {0.5, 0.75}) {
    const BisoChannel bsc = make_bsc(0.1, p);
    const JointDistribution j = induced_joint(bsc);
    const double wcap = weak_cap(j);
    const PErrorReport pe =
        p_error_curve(j, scaled_grid(wcap, {0.3, 0.6, 0.9}), sc);
    rep.claims.push_back(claim_true(
        "p_error sandwich bsc(0.1) p=" + format_double(p), pe.sandwich_ok));
  }

  finish(rep);
  return rep;
}

SuiteReport run_tensor_suite(const VerifyConfig& cfg) {
  SuiteReport rep;
  rep.suite = "tensor";
  const SearchConfig sc = search_config(cfg);

  const JointDistribution base = bsc_uniform_joint(0.1);
  const TensorizationReport pr =
      verify_memoryless_tensorization(base, 0.32, cfg.trials, sc);
  rep.claims.push_back(claim_true("no product ENSR below single-letter",
                                  pr.violations == 0));
  rep.claims.push_back(
      claim_leq("replicated optimum gap", pr.replicated_gap, 1e-9));
  rep.claims.push_back(
      claim_leq("tensorization gap", pr.max_tensor_gap, 1e-8));

  const WeakAllocationReport wa =
      verify_weak_allocation(base, 0.32, std::max(10, cfg.trials / 2), sc);
  rep.claims.push_back(
      claim_true("weak allocations stay above W_eps", wa.violations == 0));

  const Channel x_given_y(Alphabet::binary(), Alphabet::signs(),
                          Matrix{{0.9, 0.1}, {0.1, 0.9}});
  const SigmaMinProductCheck sm =
      verify_sigma_min_product(x_given_y, {0.5, 0.5});
  rep.claims.push_back(claim_near("sigma_min tensorizes as sigma^n",
                                  sm.product_sigma_min, sm.expected, 1e-8));

  finish(rep);
  return rep;
}

SuiteReport run_gaussian_suite(const VerifyConfig& cfg) {
  SuiteReport rep;
  rep.suite = "gaussian";

  const GaussianPair gp{1.0, 1.0, 0.8};
  for (const auto& [eps, want] :
       std::vector<std::pair<double, double>>{{0.16, 3.0}, {0.32, 1.0},
                                              {0.48, 1.0 / 3.0}}) {
    const GammaEps g = gamma_eps(gp, eps);
    rep.claims.push_back(claim_near(
        "gamma_eps^2 at eps=" + format_double(eps), g.gamma * g.gamma, want,
        1e-12));
  }

  const GaussianCurveReport curve =
      verify_gaussian_curve(gp, {0.16, 0.32, 0.48}, cfg.bins);
  for (const auto& row : curve.rows)
    rep.claims.push_back(claim_near(
        "quantized M_eps at eps=" + format_double(row.eps), row.numeric,
        row.closed_form, 0.02));

  const MonotonicityReport mono = verify_monotonicity(gp, 20, cfg.bins);
  rep.claims.push_back(
      claim_leq("rho_m^2 monotone in gamma", mono.max_rho_increase, 1e-3));
  rep.claims.push_back(
      claim_leq("mmse monotone in gamma", mono.max_mmse_decrease, 1e-3));
  rep.claims.push_back(claim_leq("mmse closed form on the gamma grid",
                                 mono.max_mmse_formula_error, 1e-3));

  const SandwichReport sandwich =
      verify_correlation_sandwich(1.0, 1.0, {0.1, 0.2}, cfg.bins);
  for (const auto& row : sandwich.rows)
    rep.claims.push_back(claim_true(
        "sandwich with Laplace X at eps=" + format_double(row.eps), row.ok));

  const WorstCaseReport wc = verify_gaussian_worst_case(
      RefDist::kUniform, 1.0, 1.0, {0.1, 0.2}, cfg.bins);
  rep.claims.push_back(
      claim_true("Gaussian pair dominates at matched rho_m", wc.pass));

  finish(rep);
  return rep;
}

std::vector<SuiteReport> run_suites(const std::string& which,
                                    const VerifyConfig& cfg) {
  std::vector<SuiteReport> reps;
  const bool all = which == "all";
  if (all || which == "bounds") reps.push_back(run_bounds_suite(cfg));
  if (all || which == "convexity") reps.push_back(run_convexity_suite(cfg));
  if (all || which == "biso") reps.push_back(run_biso_suite(cfg));
  if (all || which == "tensor") reps.push_back(run_tensor_suite(cfg));
  if (all || which == "gaussian") reps.push_back(run_gaussian_suite(cfg));
  if (reps.empty())
    throw ArgumentError("unknown suite '" + which +
                        "'; expected bounds|convexity|biso|tensor|gaussian|all");
  return reps;
}

Json suite_report_to_json(const SuiteReport& rep) {
  Json out;
  out["suite"] = rep.suite;
  out["pass"] = rep.pass;
  Json claims = Json::array();
  for (const auto& c : rep.claims) {
    Json entry;
    entry["name"] = c.name;
    entry["observed"] = c.observed;
    entry["expected"] = c.expected;
    entry["tolerance"] = c.tolerance;
    entry["pass"] = c.pass;
    claims.push_back(std::move(entry));
  }
  out["claims"] = std::move(claims);
  return out;
}

Json suites_to_json(const std::vector<SuiteReport>& reps,
                    const VerifyConfig& cfg) {
  Json out;
  out["seed"] = cfg.seed;
  out["grid_resolution"] = cfg.grid_resolution;
  out["restarts"] = cfg.restarts;
  out["bins"] = cfg.bins;
  out["trials"] = cfg.trials;
  bool pass = true;
  Json suites = Json::array();
  for (const auto& r : reps) {
    pass = pass && r.pass;
    suites.push_back(suite_report_to_json(r));
  }
  out["pass"] = pass;
  out["suites"] = std::move(suites);
  return out;
}

}  // namespace ensrlab
