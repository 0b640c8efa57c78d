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

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ensrlab/verify.hpp"

namespace {

using ensrlab::Json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitParseError = 2;
constexpr int kExitInvariantError = 3;

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty())
    std::cout << content;
  else
    ensrlab::write_text_file(out_path, content);
}

struct CommonOpts {
  std::string joint_path;
  std::string kind = "strong";
  std::string eps_text;
  std::uint64_t seed = 0x243F6A8885A308D3ULL;
  double resolution = 0.02;
  int restarts = 32;
  std::string format = "csv";
  std::string out_path;
};

void check_run_config(double resolution, int restarts) {
  if (!(resolution > 0.0 && resolution <= 0.5))
    throw ensrlab::ArgumentError("resolution must lie in (0, 0.5]");
  if (restarts < 1)
    throw ensrlab::ArgumentError("restarts must be at least 1");
}

ensrlab::SearchConfig to_search_config(const CommonOpts& o) {
  check_run_config(o.resolution, o.restarts);
  ensrlab::SearchConfig sc;
  sc.seed = o.seed;
  sc.grid_resolution = o.resolution;
  sc.restarts = o.restarts;
  return sc;
}

// Budgets outside the feasible range are clamped with a warning, matching
// the solver behavior.
std::vector<double> clamp_grid(std::vector<double> grid, double cap) {
  for (double& e : grid) {
    if (e < 0.0 || e > cap) {
      const double clamped = std::min(std::max(e, 0.0), cap);
      std::fprintf(stderr, "warning: eps=%s clamped to %s\n",
                   ensrlab::format_double(e).c_str(),
                   ensrlab::format_double(clamped).c_str());
      e = clamped;
    }
  }
  return grid;
}

int cmd_maxcorr(const CommonOpts& o) {
  const ensrlab::JointDistribution joint =
      ensrlab::load_joint_or_biso(o.joint_path);
  const ensrlab::SpectralReport rep = ensrlab::maximal_correlation(joint);
  emit(ensrlab::spectral_report_to_json(rep).dump(2) + "\n", o.out_path);
  return kExitOk;
}

int cmd_curve(const CommonOpts& o) {
  const ensrlab::JointDistribution joint =
      ensrlab::load_joint_or_biso(o.joint_path);
  const ensrlab::SearchConfig sc = to_search_config(o);
  const std::vector<double> grid = ensrlab::parse_eps_grid(o.eps_text);

  if (o.kind == "perror") {
    const auto rep = ensrlab::p_error_curve(
        joint, clamp_grid(grid, ensrlab::weak_cap(joint)), sc);
    emit(o.format == "json" ? ensrlab::p_error_report_to_json(rep).dump(2) + "\n"
                            : ensrlab::p_error_report_to_csv(rep),
         o.out_path);
    return kExitOk;
  }

  const ensrlab::ConstraintKind kind = o.kind == "weak"
                                           ? ensrlab::ConstraintKind::kWeak
                                           : ensrlab::ConstraintKind::kStrong;
  if (o.kind != "weak" && o.kind != "strong")
    throw ensrlab::ArgumentError("kind must be strong, weak, or perror");
  const double cap = kind == ensrlab::ConstraintKind::kStrong
                         ? ensrlab::strong_cap(joint)
                         : ensrlab::weak_cap(joint);
  const ensrlab::PrivacyCurve curve =
      ensrlab::privacy_curve(joint, kind, clamp_grid(grid, cap), sc);
  emit(o.format == "json" ? ensrlab::privacy_curve_to_json(curve).dump(2) + "\n"
                          : ensrlab::privacy_curve_to_csv(curve, joint),
       o.out_path);
  return kExitOk;
}

int cmd_gaussian(const std::string& input_path, const std::string& eps_text,
                 std::size_t bins, const std::string& out_path) {
  const ensrlab::GaussianCliSpec spec =
      ensrlab::gaussian_spec_from_json(ensrlab::load_json_file(input_path));
  const std::vector<double> grid = ensrlab::parse_eps_grid(eps_text);
  std::string csv;

  if (!spec.transformed) {
    const double rho_sq = spec.pair.rho * spec.pair.rho;
    const ensrlab::GaussianCurveReport rep =
        ensrlab::verify_gaussian_curve(spec.pair, clamp_grid(grid, rho_sq), bins);
    csv = "eps,closed_form,gamma_eps,numeric_quantized\n";
    for (const auto& row : rep.rows) {
      const ensrlab::GammaEps g = ensrlab::gamma_eps(spec.pair, row.eps);
      csv += ensrlab::format_double(row.eps) + "," +
             ensrlab::format_double(row.closed_form) + "," +
             (g.infinite ? std::string("inf")
                         : ensrlab::format_double(g.gamma)) +
             "," +
             ensrlab::format_double(row.eps <= 1e-9 ? 1.0 : row.numeric) +
             "\n";
    }
  } else {
    const ensrlab::SandwichReport rep = ensrlab::verify_correlation_sandwich(
        spec.transform.laplace_scale, spec.transform.var_y, grid, bins);
    csv = "eps,numeric,lower,upper\n";
    for (const auto& row : rep.rows)
      csv += ensrlab::format_double(row.eps) + "," +
             ensrlab::format_double(row.numeric) + "," +
             ensrlab::format_double(row.lower) + "," +
             ensrlab::format_double(row.upper) + "\n";
  }
  emit(csv, out_path);
  return kExitOk;
}

int cmd_verify(const std::string& suite, const ensrlab::VerifyConfig& cfg,
               const std::string& out_path) {
  check_run_config(cfg.grid_resolution, cfg.restarts);
  const std::vector<ensrlab::SuiteReport> reports =
      ensrlab::run_suites(suite, cfg);
  for (const auto& r : reports)
    std::fprintf(stderr, "%s: %s\n", r.suite.c_str(),
                 r.pass ? "pass" : "FAIL");
  const Json json = ensrlab::suites_to_json(reports, cfg);
  emit(json.dump(2) + "\n", out_path);
  return json["pass"].get<bool>() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"privacy-aware MMSE estimation toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  ensrlab::VerifyConfig vcfg;
  std::string suite = "all";
  std::string gaussian_input;
  std::size_t gaussian_bins = 256;

  CLI::App* maxcorr = app.add_subcommand(
      "maxcorr", "maximal correlation report for a joint pmf file");
  maxcorr->add_option("--joint", opts.joint_path, "joint pmf JSON file")
      ->required();
  maxcorr->add_option("--out", opts.out_path, "output path (default stdout)");

  CLI::App* curve = app.add_subcommand(
      "curve", "privacy curve: minimum ENSR (or Bayes error) per budget");
  curve->add_option("--joint", opts.joint_path, "joint pmf JSON file")
      ->required();
  curve->add_option("--kind", opts.kind, "strong|weak|perror");
  curve->add_option("--eps", opts.eps_text, "eps grid: start:stop:step or list")
      ->required();
  curve->add_option("--seed", opts.seed, "search seed");
  curve->add_option("--resolution", opts.resolution, "grid resolution");
  curve->add_option("--restarts", opts.restarts, "gradient restarts");
  curve->add_option("--format", opts.format, "csv|json");
  curve->add_option("--out", opts.out_path, "output path (default stdout)");

  CLI::App* verify = app.add_subcommand(
      "verify", "run the claim verification suites");
  verify->add_option("suite", suite,
                     "bounds|convexity|biso|tensor|gaussian|all");
  verify->add_option("--seed", vcfg.seed, "seed");
  verify->add_option("--resolution", vcfg.grid_resolution, "grid resolution");
  verify->add_option("--restarts", vcfg.restarts, "gradient restarts");
  verify->add_option("--bins", vcfg.bins, "quantization bins");
  verify->add_option("--trials", vcfg.trials, "randomized trials");
  verify->add_option("--out", opts.out_path, "report path (default stdout)");

  CLI::App* gaussian = app.add_subcommand(
      "gaussian", "additive Gaussian noise curves for a continuous pair");
  gaussian->add_option("--input", gaussian_input, "pair spec JSON file")
      ->required();
  gaussian->add_option("--eps", opts.eps_text, "eps grid")->required();
  gaussian->add_option("--bins", gaussian_bins, "quantization bins");
  gaussian->add_option("--out", opts.out_path, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (maxcorr->parsed()) return cmd_maxcorr(opts);
    if (curve->parsed()) return cmd_curve(opts);
    if (verify->parsed()) return cmd_verify(suite, vcfg, opts.out_path);
    if (gaussian->parsed())
      return cmd_gaussian(gaussian_input, opts.eps_text, gaussian_bins,
                          opts.out_path);
  } catch (const ensrlab::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParseError;
  } catch (const ensrlab::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvariantError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvariantError;
  }
  return kExitOk;
}
