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

#include "ensrlab/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "ensrlab/dependence.hpp"
#include "ensrlab/error.hpp"

namespace ensrlab {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;
// Linear penalty weight for the constrained gamma search; large enough that
// the penalized objective stays unimodal for every family used here.
constexpr double kGammaPenalty = 50.0;

double std_normal_pdf(double x) {
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

// Zero-mean scalar distribution with the handful of analytic pieces the
// quantizers need.
struct ScalarDist {
  std::function<double(double)> cdf;
  std::function<double(double)> quantile;
  // Integral of x f(x) over (a, b].
  std::function<double(double, double)> partial_mean;
  double variance = 1.0;
};

ScalarDist gaussian_dist(double variance) {
  const double sd = std::sqrt(variance);
  ScalarDist d;
  d.variance = variance;
  d.cdf = [sd](double x) { return std_normal_cdf(x / sd); };
  d.quantile = [sd](double u) { return sd * std_normal_quantile(u); };
  d.partial_mean = [sd](double a, double b) {
    return sd * (std_normal_pdf(a / sd) - std_normal_pdf(b / sd));
  };
  return d;
}

ScalarDist laplace_dist(double scale) {
  ScalarDist d;
  d.variance = 2.0 * scale * scale;
  d.cdf = [scale](double x) {
    return x < 0.0 ? 0.5 * std::exp(x / scale)
                   : 1.0 - 0.5 * std::exp(-x / scale);
  };
  d.quantile = [scale](double u) {
    return u < 0.5 ? scale * std::log(2.0 * u)
                   : -scale * std::log(2.0 * (1.0 - u));
  };
  d.partial_mean = [scale](double a, double b) {
    // Antiderivative of x f(x): for x >= 0 it is -(x + scale) e^{-x/s}/2,
    // for x < 0 it is (x - scale) e^{x/s}/2.
    auto anti = [scale](double x) {
      if (std::isinf(x)) return 0.0;
      return x < 0.0 ? 0.5 * (x - scale) * std::exp(x / scale)
                     : -0.5 * (x + scale) * std::exp(-x / scale);
    };
    return anti(b) - anti(a);
  };
  return d;
}

ScalarDist uniform_dist(double variance) {
  const double w = std::sqrt(3.0 * variance);  // support [-w, w]
  ScalarDist d;
  d.variance = variance;
  d.cdf = [w](double x) { return std::clamp((x + w) / (2.0 * w), 0.0, 1.0); };
  d.quantile = [w](double u) { return -w + 2.0 * w * u; };
  d.partial_mean = [w](double a, double b) {
    const double lo = std::clamp(a, -w, w), hi = std::clamp(b, -w, w);
    if (hi <= lo) return 0.0;
    return (hi * hi - lo * lo) / (4.0 * w);
  };
  return d;
}

// A zero-mean member of the named family with the requested variance.
ScalarDist make_dist(RefDist kind, double variance) {
  switch (kind) {
    case RefDist::kGaussian: return gaussian_dist(variance);
    case RefDist::kLaplace: return laplace_dist(std::sqrt(0.5 * variance));
    case RefDist::kUniform: return uniform_dist(variance);
  }
  throw ArgumentError("unknown reference distribution");
}

// Equiprobable bins with conditional-mean representatives; the outer bins
// absorb their tails so the masses form an exact pmf.
struct QuantGrid {
  std::vector<double> edges;  // bins+1, ends at +-inf
  std::vector<double> reps;
  std::vector<double> mass;
};

QuantGrid quantile_grid(const ScalarDist& d, std::size_t bins) {
  QuantGrid g;
  g.edges.resize(bins + 1);
  g.edges[0] = -std::numeric_limits<double>::infinity();
  g.edges[bins] = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < bins; ++k)
    g.edges[k] = d.quantile(static_cast<double>(k) / bins);
  g.reps.resize(bins);
  g.mass.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const double lo = g.edges[k], hi = g.edges[k + 1];
    const double m = d.cdf(std::isinf(hi) ? 1e300 : hi) -
                     d.cdf(std::isinf(lo) ? -1e300 : lo);
    g.mass[k] = std::max(m, 0.0);
    g.reps[k] = g.mass[k] > 0.0 ? d.partial_mean(lo, hi) / g.mass[k]
                                : 0.5 * (std::max(lo, -1e300) + std::min(hi, 1e300));
  }
  return g;
}

// Uniform-width bins with midpoint representatives; used when quantiles of
// the variable are not analytic (sums of independent pieces).
QuantGrid uniform_grid(double sd, std::size_t bins) {
  QuantGrid g;
  g.edges.resize(bins + 1);
  g.reps.resize(bins);
  g.mass.assign(bins, 0.0);
  const double lo = -6.0 * sd, step = 12.0 * sd / static_cast<double>(bins);
  for (std::size_t k = 0; k <= bins; ++k) g.edges[k] = lo + step * k;
  g.edges[0] = -std::numeric_limits<double>::infinity();
  g.edges[bins] = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < bins; ++k)
    g.reps[k] = lo + step * (static_cast<double>(k) + 0.5);
  return g;
}

std::vector<double> conditional_mass(const QuantGrid& grid,
                                     const ScalarDist& noise, double center) {
  std::vector<double> mass(grid.reps.size());
  double prev = 0.0;
  for (std::size_t k = 0; k < mass.size(); ++k) {
    const double hi = grid.edges[k + 1];
    const double c = std::isinf(hi) ? 1.0 : noise.cdf(hi - center);
    mass[k] = std::max(0.0, c - prev);
    prev = c;
  }
  return mass;
}

Alphabet grid_alphabet(const QuantGrid& g) {
  std::vector<double> pts = g.reps;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i] <= pts[i - 1]) pts[i] = std::nextafter(pts[i - 1], 1e300);
  return Alphabet(pts);
}

double quantized_variance(const std::vector<double>& mass,
                          const std::vector<double>& reps) {
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < mass.size(); ++i) mean += mass[i] * reps[i];
  for (std::size_t i = 0; i < mass.size(); ++i)
    m2 += mass[i] * (reps[i] - mean) * (reps[i] - mean);
  return m2;
}

// Quantized (X, Z_gamma) and (Y, Z_gamma) joints rebuilt per gamma for a
// jointly Gaussian pair; everything is a one-dimensional cdf difference.
struct GaussianQuantizer {
  GaussianPair gp;
  std::size_t bins;
  QuantGrid grid_x, grid_y;

  GaussianQuantizer(const GaussianPair& pair, std::size_t n)
      : gp(pair), bins(n) {
    grid_x = quantile_grid(gaussian_dist(gp.var_x), bins);
    grid_y = quantile_grid(gaussian_dist(gp.var_y), bins);
  }

  QuantizedPair at(double gamma) const {
    const double g = std::max(gamma, 1e-12);
    const double var_z = gp.var_y + g * g;
    const QuantGrid grid_z = quantile_grid(gaussian_dist(var_z), bins);

    const double cov_xz = gp.rho * std::sqrt(gp.var_x * gp.var_y);
    const double beta = cov_xz / gp.var_x;
    const double resid = std::max(var_z - cov_xz * cov_xz / gp.var_x, 1e-24);
    const ScalarDist cond_x = gaussian_dist(resid);
    const ScalarDist cond_y = gaussian_dist(g * g);

    Matrix p_xz(bins, bins), p_yz(bins, bins);
    for (std::size_t i = 0; i < bins; ++i) {
      const auto row = conditional_mass(grid_z, cond_x, beta * grid_x.reps[i]);
      for (std::size_t j = 0; j < bins; ++j)
        p_xz(i, j) = grid_x.mass[i] * row[j];
    }
    for (std::size_t k = 0; k < bins; ++k) {
      const auto row = conditional_mass(grid_z, cond_y, grid_y.reps[k]);
      for (std::size_t j = 0; j < bins; ++j)
        p_yz(k, j) = grid_y.mass[k] * row[j];
    }

    QuantizedPair qp{grid_alphabet(grid_x),
                     grid_alphabet(grid_y),
                     grid_alphabet(grid_z),
                     JointDistribution(grid_alphabet(grid_x),
                                       grid_alphabet(grid_z), std::move(p_xz)),
                     JointDistribution(grid_alphabet(grid_y),
                                       grid_alphabet(grid_z), std::move(p_yz)),
                     0.0,
                     false};
    const double ex = std::abs(quantized_variance(qp.joint_xz.row_marginal(),
                                                  qp.grid_x.points()) -
                               gp.var_x) / gp.var_x;
    const double ey = std::abs(quantized_variance(qp.joint_yz.row_marginal(),
                                                  qp.grid_y.points()) -
                               gp.var_y) / gp.var_y;
    const double ez = std::abs(quantized_variance(qp.joint_yz.col_marginal(),
                                                  qp.grid_z.points()) -
                               var_z) / var_z;
    qp.moment_error = std::max({ex, ey, ez});
    qp.coverage_ok = qp.moment_error <= 1e-3;
    return qp;
  }
};

// X = Y + Laplace(scale) with Y from a named family; the Y quadrature and
// the X mixture masses are gamma-independent and cached.
struct TransformedQuantizer {
  TransformedSpec spec;
  std::size_t bins;
  QuantGrid grid_y, grid_x;
  Matrix lx;  // [y bin][x bin]: Laplace mass of the x bin around each y rep

  TransformedQuantizer(const TransformedSpec& s, std::size_t n)
      : spec(s), bins(n) {
    const ScalarDist y_dist = make_dist(s.y_kind, s.var_y);
    grid_y = quantile_grid(y_dist, bins);
    const ScalarDist noise = laplace_dist(std::max(s.laplace_scale, 1e-9));
    const double var_x = s.var_y + noise.variance;
    grid_x = uniform_grid(std::sqrt(var_x), bins);
    lx = Matrix(bins, bins);
    for (std::size_t k = 0; k < bins; ++k) {
      const auto row = conditional_mass(grid_x, noise, grid_y.reps[k]);
      for (std::size_t i = 0; i < bins; ++i) lx(k, i) = row[i];
    }
  }

  JointDistribution joint_xy() const {
    Matrix p(bins, bins);
    for (std::size_t k = 0; k < bins; ++k)
      for (std::size_t i = 0; i < bins; ++i)
        p(i, k) = grid_y.mass[k] * lx(k, i);
    return JointDistribution(grid_alphabet(grid_x), grid_alphabet(grid_y),
                             std::move(p));
  }

  QuantizedTriple at(double gamma) const {
    const double g = std::max(gamma, 1e-12);
    const double var_z = spec.var_y + g * g;
    const QuantGrid grid_z = uniform_grid(std::sqrt(var_z), bins);
    const ScalarDist cond = gaussian_dist(g * g);

    Matrix nz(bins, bins);
    for (std::size_t k = 0; k < bins; ++k) {
      const auto row = conditional_mass(grid_z, cond, grid_y.reps[k]);
      for (std::size_t j = 0; j < bins; ++j) nz(k, j) = row[j];
    }

    Matrix p_yz(bins, bins), p_xz(bins, bins);
    for (std::size_t k = 0; k < bins; ++k)
      for (std::size_t j = 0; j < bins; ++j)
        p_yz(k, j) = grid_y.mass[k] * nz(k, j);
    // p_xz = lx^T diag(w) nz.
    for (std::size_t k = 0; k < bins; ++k) {
      const double w = grid_y.mass[k];
      if (w <= 0.0) continue;
      for (std::size_t i = 0; i < bins; ++i) {
        const double wi = w * lx(k, i);
        if (wi <= 0.0) continue;
        double* out = p_xz.row(i);
        const double* in = nz.row(k);
        for (std::size_t j = 0; j < bins; ++j) out[j] += wi * in[j];
      }
    }

    return QuantizedTriple{grid_alphabet(grid_x),
                           grid_alphabet(grid_y),
                           grid_alphabet(grid_z),
                           joint_xy(),
                           JointDistribution(grid_alphabet(grid_x),
                                             grid_alphabet(grid_z),
                                             std::move(p_xz)),
                           JointDistribution(grid_alphabet(grid_y),
                                             grid_alphabet(grid_z),
                                             std::move(p_yz))};
  }
};

struct GammaEval {
  double ensr = 1.0;
  double rho_sq = 0.0;
};

// Golden-section over log10(gamma) in [-4, 4] of the linearly penalized
// objective, then a feasibility bisection along the monotone constraint;
// returns the best feasible (ensr, gamma) pair.
std::pair<double, double> constrained_gamma_search(
    const std::function<GammaEval(double)>& eval, double eps) {
  auto penalized = [&](double t) {
    const GammaEval e = eval(std::pow(10.0, t));
    return e.ensr + kGammaPenalty * std::max(0.0, e.rho_sq - eps);
  };
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = -4.0, b = 4.0;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = penalized(c), fd = penalized(d);
  for (int it = 0; it < 60; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = penalized(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = penalized(d);
    }
  }
  double best_ensr = std::numeric_limits<double>::infinity();
  double best_gamma = std::pow(10.0, b);
  auto consider = [&](double gamma) {
    const GammaEval e = eval(gamma);
    if (e.rho_sq <= eps + 1e-9 && e.ensr < best_ensr) {
      best_ensr = e.ensr;
      best_gamma = gamma;
    }
  };
  consider(std::pow(10.0, 0.5 * (a + b)));

  // The constraint is monotone in gamma for these families; land on it.
  double lo = -4.0, hi = 4.0;
  if (eval(std::pow(10.0, lo)).rho_sq <= eps + 1e-9) {
    consider(std::pow(10.0, lo));
    consider(1e-12);  // effectively no noise
  } else {
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (eval(std::pow(10.0, mid)).rho_sq <= eps + 1e-9 ? hi : lo) = mid;
    }
    consider(std::pow(10.0, hi));
  }
  return {best_ensr, best_gamma};
}

double ensr_of(const JointDistribution& j_yz) {
  const double var = j_yz.row_variance();
  return var > 0.0 ? mmse(j_yz) / var : 0.0;
}

}  // namespace

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double std_normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0))
    throw ArgumentError("quantile argument must lie in (0, 1)");
  // Acklam's rational approximation, then one Newton step.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (u < plow) {
    const double q = std::sqrt(-2.0 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (u <= 1.0 - plow) {
    const double q = u - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - u));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double err = std_normal_cdf(x) - u;
  x -= err / std::max(std_normal_pdf(x), 1e-300);
  return x;
}

GammaEps gamma_eps(const GaussianPair& gp, double eps) {
  const double rho_sq = gp.rho * gp.rho;
  GammaEps out;
  if (eps <= 0.0) {
    out.infinite = true;
    out.gamma = std::numeric_limits<double>::infinity();
    return out;
  }
  if (eps >= rho_sq - 1e-12) {
    out.zero = true;
    out.gamma = 0.0;
    return out;
  }
  out.gamma = std::sqrt(gp.var_y * (rho_sq / eps - 1.0));
  return out;
}

double m_eps_gaussian(const GaussianPair& gp, double eps) {
  const double rho_sq = gp.rho * gp.rho;
  if (rho_sq <= 0.0) return eps <= 0.0 ? 1.0 : 0.0;
  const double e = std::clamp(eps, 0.0, rho_sq);
  return 1.0 - e / rho_sq;
}

QuantizedPair quantize_gaussian(const GaussianPair& gp, double gamma,
                                std::size_t bins) {
  if (gp.var_x <= 0.0 || gp.var_y <= 0.0)
    throw ArgumentError("variances must be positive");
  if (std::abs(gp.rho) > 1.0)
    throw ArgumentError("correlation must lie in [-1, 1]");
  if (gamma < 0.0) throw ArgumentError("noise scale must be nonnegative");
  if (bins < 8) throw ArgumentError("need at least 8 bins");
  return GaussianQuantizer(gp, bins).at(gamma);
}

QuantizedPair quantize_gaussian(const GaussianPair& gp,
                                const AdditiveFilter& filter,
                                std::size_t bins) {
  return quantize_gaussian(gp, filter.gamma, bins);
}

QuantizedTriple quantize_transformed(const TransformedSpec& spec, double gamma,
                                     std::size_t bins) {
  if (spec.var_y <= 0.0) throw ArgumentError("var_y must be positive");
  if (gamma < 0.0) throw ArgumentError("noise scale must be nonnegative");
  return TransformedQuantizer(spec, bins).at(gamma);
}

GaussianCurveReport verify_gaussian_curve(const GaussianPair& gp,
                                          const std::vector<double>& eps_grid,
                                          std::size_t bins) {
  GaussianCurveReport rep;
  const double rho_sq = gp.rho * gp.rho;
  if (rho_sq <= 1e-6) throw ScopeError("requires a correlated pair");

  const GaussianQuantizer quant(gp, bins);
  auto eval = [&](double gamma) {
    const QuantizedPair qp = quant.at(gamma);
    return GammaEval{ensr_of(qp.joint_yz), rho_m_sq(qp.joint_xz)};
  };

  rep.pass = true;
  for (double eps : eps_grid) {
    const auto [numeric, gamma] = constrained_gamma_search(eval, eps);
    GaussianCurveRow row;
    row.eps = eps;
    row.closed_form = m_eps_gaussian(gp, eps);
    row.numeric = numeric;
    row.gamma_used = gamma;
    row.ok = std::abs(row.closed_form - row.numeric) <= 0.02;
    rep.pass = rep.pass && row.ok;
    rep.rows.push_back(row);
  }

  if (!eps_grid.empty()) {
    const GaussianQuantizer half(gp, bins / 2);
    auto eval_half = [&](double gamma) {
      const QuantizedPair qp = half.at(gamma);
      return GammaEval{ensr_of(qp.joint_yz), rho_m_sq(qp.joint_xz)};
    };
    const auto [coarse, gamma] =
        constrained_gamma_search(eval_half, eps_grid.front());
    (void)gamma;
    rep.bias_estimate = std::abs(coarse - rep.rows.front().numeric);
  }
  return rep;
}

SandwichReport verify_correlation_sandwich(double laplace_scale,
                                           double var_y,
                                           const std::vector<double>& eps_grid,
                                           std::size_t bins) {
  SandwichReport rep;
  TransformedSpec spec{RefDist::kGaussian, var_y, laplace_scale};
  const TransformedQuantizer quant(spec, bins);

  const JointDistribution j_xy = quant.joint_xy();
  // Pearson correlation of the quantized pair.
  double exy = 0.0;
  for (std::size_t i = 0; i < j_xy.row_alphabet().size(); ++i)
    for (std::size_t k = 0; k < j_xy.col_alphabet().size(); ++k)
      exy += j_xy(i, k) * j_xy.row_alphabet()[i] * j_xy.col_alphabet()[k];
  const double cov = exy - j_xy.row_mean() * j_xy.col_mean();
  const double denom = j_xy.row_variance() * j_xy.col_variance();
  rep.rho_sq = denom > 0.0 ? cov * cov / denom : 0.0;
  rep.rho_m_sq = rho_m_sq(j_xy);
  if (rep.rho_sq <= 1e-6)
    throw ScopeError("X carries no linear correlation with Y");

  auto eval = [&](double gamma) {
    const QuantizedTriple qt = quant.at(gamma);
    return GammaEval{ensr_of(qt.joint_yz), rho_m_sq(qt.joint_xz)};
  };

  rep.pass = true;
  double max_eps = 0.0;
  for (double eps : eps_grid) {
    const auto [numeric, gamma] = constrained_gamma_search(eval, eps);
    (void)gamma;
    SandwichRow row;
    row.eps = eps;
    row.numeric = numeric;
    row.lower = 1.0 - eps / rep.rho_sq;
    row.upper = 1.0 - eps / rep.rho_m_sq;
    row.ok = numeric >= row.lower - 0.02 && numeric <= row.upper + 0.02;
    rep.pass = rep.pass && row.ok;
    rep.rows.push_back(row);
    max_eps = std::max(max_eps, eps);
  }
  rep.gap_bound = max_eps * (1.0 / rep.rho_sq - 1.0 / rep.rho_m_sq);
  return rep;
}

MonotonicityReport verify_monotonicity(const GaussianPair& gp,
                                       std::size_t gamma_points,
                                       std::size_t bins) {
  MonotonicityReport rep;
  const GaussianQuantizer quant(gp, bins);
  const double sd = std::sqrt(gp.var_y);
  std::vector<double> rho, ensr, gammas;
  for (std::size_t i = 0; i < gamma_points; ++i) {
    const double t = -1.2 + 2.4 * static_cast<double>(i) /
                                 static_cast<double>(gamma_points - 1);
    gammas.push_back(sd * std::pow(10.0, t));
  }
  for (double g : gammas) {
    const QuantizedPair qp = quant.at(g);
    rho.push_back(rho_m_sq(qp.joint_xz));
    ensr.push_back(ensr_of(qp.joint_yz));
    const double formula = g * g / (gp.var_y + g * g);
    rep.max_mmse_formula_error =
        std::max(rep.max_mmse_formula_error, std::abs(ensr.back() - formula));
  }
  for (std::size_t i = 1; i < gammas.size(); ++i) {
    rep.max_rho_increase = std::max(rep.max_rho_increase, rho[i] - rho[i - 1]);
    rep.max_mmse_decrease =
        std::max(rep.max_mmse_decrease, ensr[i - 1] - ensr[i]);
  }
  rep.rho_decreasing = rep.max_rho_increase <= 1e-3;
  rep.mmse_increasing = rep.max_mmse_decrease <= 1e-3;
  rep.pass = rep.rho_decreasing && rep.mmse_increasing &&
             rep.max_mmse_formula_error <= 1e-3;
  return rep;
}

WorstCaseReport verify_gaussian_worst_case(RefDist y_kind, double var_y,
                                           double laplace_scale,
                                           const std::vector<double>& eps_grid,
                                           std::size_t bins) {
  WorstCaseReport rep;
  TransformedSpec spec{y_kind, var_y, laplace_scale};
  const TransformedQuantizer quant(spec, bins);
  rep.rho_m_sq = rho_m_sq(quant.joint_xy());
  if (rep.rho_m_sq <= 1e-6) throw ScopeError("requires a correlated pair");

  auto eval = [&](double gamma) {
    const QuantizedTriple qt = quant.at(gamma);
    return GammaEval{ensr_of(qt.joint_yz), rho_m_sq(qt.joint_xz)};
  };

  rep.pass = true;
  for (double eps : eps_grid) {
    const auto [numeric, gamma] = constrained_gamma_search(eval, eps);
    (void)gamma;
    WorstCaseRow row;
    row.eps = eps;
    row.numeric = numeric;
    row.gaussian_value = 1.0 - std::min(eps, rep.rho_m_sq) / rep.rho_m_sq;
    row.ok = row.numeric <= row.gaussian_value + 0.02;
    rep.pass = rep.pass && row.ok;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace ensrlab
