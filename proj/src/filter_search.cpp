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

#include "ensrlab/filter_search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "ensrlab/error.hpp"
#include "ensrlab/parallel.hpp"
#include "ensrlab/rng.hpp"
#include "ensrlab/svd.hpp"

namespace ensrlab {

namespace {

constexpr double kFeasibilitySlack = 1e-6;   // reported solutions honor this
constexpr double kGridFeasibility = 1e-12;   // internal grid feasibility
// A challenger must beat the incumbent by this much; otherwise structured
// candidates (the erasure family, caller warm starts) win the tie, so the
// reported argmin stays canonical where the optimum is a whole face.
constexpr double kTieMargin = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// rho_m^2 of a joint matrix with positive row marginal. Fast paths: with a
// binary variable sigma_2^2 = ||Q||_F^2 - 1; with a ternary one it solves
// the quadratic left after peeling sigma_1 = 1 off the 3x3 Gram matrix.
double rho_sq_from_matrix(const Matrix& p, const std::vector<double>& pu,
                          const std::vector<double>& pz) {
  const std::size_t m = p.rows();
  std::array<std::size_t, 8> zbuf;
  std::vector<std::size_t> zdyn;
  std::size_t n = 0;
  const bool small = pz.size() <= zbuf.size();
  if (!small) zdyn.reserve(pz.size());
  for (std::size_t z = 0; z < pz.size(); ++z) {
    if (pz[z] <= 0.0) continue;
    if (small)
      zbuf[n++] = z;
    else {
      zdyn.push_back(z);
      ++n;
    }
  }
  const std::size_t* zidx = small ? zbuf.data() : zdyn.data();
  if (m < 2 || n < 2) return 0.0;

  if (m == 2 || n == 2) {
    // (P/Pu)(P/Pz) keeps both factors in [0, 1]; the plain quotient can hit
    // 0/0 on near-denormal quantization dust.
    double tr = 0.0;
    for (std::size_t u = 0; u < m; ++u)
      for (std::size_t k = 0; k < n; ++k) {
        const double v = p(u, zidx[k]);
        tr += (v / pu[u]) * (v / pz[zidx[k]]);
      }
    return std::clamp(tr - 1.0, 0.0, 1.0);
  }

  if (n == 3 || m == 3) {
    // Gram matrix of the normalized joint on the ternary side.
    double g[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    if (n == 3) {
      for (std::size_t u = 0; u < m; ++u) {
        const double a0 = p(u, zidx[0]) / pu[u];
        const double a1 = p(u, zidx[1]), a2 = p(u, zidx[2]);
        g[0][0] += a0 * p(u, zidx[0]);
        g[1][1] += (a1 / pu[u]) * a1;
        g[2][2] += (a2 / pu[u]) * a2;
        g[0][1] += a0 * a1;
        g[0][2] += a0 * a2;
        g[1][2] += (a1 / pu[u]) * a2;
      }
      for (int r = 0; r < 3; ++r)
        for (int c = r; c < 3; ++c)
          g[r][c] = g[r][c] / std::sqrt(pz[zidx[r]]) / std::sqrt(pz[zidx[c]]);
    } else {
      for (std::size_t k = 0; k < n; ++k) {
        const double a0 = p(0, zidx[k]) / pz[zidx[k]];
        const double a1 = p(1, zidx[k]), a2 = p(2, zidx[k]);
        g[0][0] += a0 * p(0, zidx[k]);
        g[1][1] += (a1 / pz[zidx[k]]) * a1;
        g[2][2] += (a2 / pz[zidx[k]]) * a2;
        g[0][1] += a0 * a1;
        g[0][2] += a0 * a2;
        g[1][2] += (a1 / pz[zidx[k]]) * a2;
      }
      for (int r = 0; r < 3; ++r)
        for (int c = r; c < 3; ++c)
          g[r][c] = g[r][c] / std::sqrt(pu[r]) / std::sqrt(pu[c]);
    }
    const double tr = g[0][0] + g[1][1] + g[2][2];
    const double e2 = g[0][0] * g[1][1] + g[0][0] * g[2][2] +
                      g[1][1] * g[2][2] - g[0][1] * g[0][1] -
                      g[0][2] * g[0][2] - g[1][2] * g[1][2];
    const double s = tr - 1.0;              // sigma_2^2 + sigma_3^2
    const double prod = e2 - s;             // sigma_2^2 * sigma_3^2
    const double disc = std::max(0.0, s * s - 4.0 * prod);
    return std::clamp(0.5 * (s + std::sqrt(disc)), 0.0, 1.0);
  }

  Matrix q(m, n);
  for (std::size_t u = 0; u < m; ++u) {
    const double su = std::sqrt(pu[u]);
    for (std::size_t k = 0; k < n; ++k)
      q(u, k) = p(u, zidx[k]) / su / std::sqrt(pz[zidx[k]]);
  }
  const std::vector<double> sigma = singular_values(q);
  return std::clamp(sigma[1] * sigma[1], 0.0, 1.0);
}

// Pruned copy of the (X,Y) joint plus the moments the hot loop needs.
struct PreparedJoint {
  std::vector<double> x_vals, y_vals, p_x, p_y;
  Matrix p_xy;  // |X| x |Y|, zero-mass symbols removed
  double mean_x = 0.0, var_x = 0.0, ey2 = 0.0, var_y = 0.0;
  std::vector<std::size_t> y_index;  // surviving y -> original index
  std::size_t y_original = 0;

  struct Workspace {
    Matrix p_xz, p_yz;
    std::vector<double> p_z;
  };

  explicit PreparedJoint(const JointDistribution& j) {
    y_original = j.col_alphabet().size();
    std::vector<std::size_t> xi;
    for (std::size_t i = 0; i < j.row_marginal().size(); ++i)
      if (j.row_marginal()[i] > 0.0) xi.push_back(i);
    for (std::size_t k = 0; k < j.col_marginal().size(); ++k)
      if (j.col_marginal()[k] > 0.0) y_index.push_back(k);
    p_xy = Matrix(xi.size(), y_index.size());
    for (std::size_t i = 0; i < xi.size(); ++i)
      for (std::size_t k = 0; k < y_index.size(); ++k)
        p_xy(i, k) = j(xi[i], y_index[k]);
    x_vals.resize(xi.size());
    p_x.resize(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
      x_vals[i] = j.row_alphabet()[xi[i]];
      p_x[i] = j.row_marginal()[xi[i]];
    }
    y_vals.resize(y_index.size());
    p_y.resize(y_index.size());
    for (std::size_t k = 0; k < y_index.size(); ++k) {
      y_vals[k] = j.col_alphabet()[y_index[k]];
      p_y[k] = j.col_marginal()[y_index[k]];
    }
    double my = 0.0;
    for (std::size_t k = 0; k < p_y.size(); ++k) {
      my += p_y[k] * y_vals[k];
      ey2 += p_y[k] * y_vals[k] * y_vals[k];
    }
    var_y = std::max(0.0, ey2 - my * my);
    for (std::size_t i = 0; i < p_x.size(); ++i) mean_x += p_x[i] * x_vals[i];
    for (std::size_t i = 0; i < p_x.size(); ++i)
      var_x += p_x[i] * (x_vals[i] - mean_x) * (x_vals[i] - mean_x);
  }

  std::size_t x_size() const { return x_vals.size(); }
  std::size_t y_size() const { return y_vals.size(); }

  // k is y_size x nz with nonnegative entries; rows are renormalized here so
  // that finite-difference probes slightly off the simplex stay meaningful.
  FilterEvaluation evaluate(const Matrix& k, Workspace& ws) const {
    const std::size_t a = x_size(), b = y_size(), nz = k.cols();
    if (ws.p_z.size() != nz || ws.p_xz.rows() != a || ws.p_yz.rows() != b) {
      ws.p_xz = Matrix(a, nz);
      ws.p_yz = Matrix(b, nz);
      ws.p_z.assign(nz, 0.0);
    }
    for (auto& v : ws.p_xz.data()) v = 0.0;
    for (std::size_t z = 0; z < nz; ++z) ws.p_z[z] = 0.0;

    for (std::size_t y = 0; y < b; ++y) {
      double rowsum = 0.0;
      for (std::size_t z = 0; z < nz; ++z) rowsum += std::max(0.0, k(y, z));
      const double inv = rowsum > 0.0 ? 1.0 / rowsum : 0.0;
      for (std::size_t z = 0; z < nz; ++z) {
        const double kyz = std::max(0.0, k(y, z)) * inv;
        ws.p_yz(y, z) = p_y[y] * kyz;
        ws.p_z[z] += p_y[y] * kyz;
        if (kyz > 0.0)
          for (std::size_t x = 0; x < a; ++x)
            ws.p_xz(x, z) += p_xy(x, y) * kyz;
      }
    }

    FilterEvaluation ev;
    double e_cond_y2 = 0.0;   // E[ E^2[Y|Z] ]
    double e_cond_x2 = 0.0;   // E[ E^2[X|Z] ]
    double map_mass = 0.0;    // sum_z max_y P(y,z)
    for (std::size_t z = 0; z < nz; ++z) {
      const double pz = ws.p_z[z];
      if (pz <= 0.0) continue;
      double ey = 0.0, best = 0.0;
      for (std::size_t y = 0; y < b; ++y) {
        const double pyz = ws.p_yz(y, z);
        ey += y_vals[y] * pyz;
        if (pyz > best) best = pyz;
      }
      e_cond_y2 += ey * ey / pz;
      map_mass += best;
      double ex = 0.0;
      for (std::size_t x = 0; x < a; ++x) ex += x_vals[x] * ws.p_xz(x, z);
      e_cond_x2 += ex * ex / pz;
    }
    const double mmse_y = std::max(0.0, ey2 - e_cond_y2);
    ev.ensr = var_y > 0.0 ? std::clamp(mmse_y / var_y, 0.0, 1.0) : 0.0;
    ev.eta_sq_yz = 1.0 - ev.ensr;
    ev.eta_sq_xz =
        var_x > 0.0
            ? std::clamp((e_cond_x2 - mean_x * mean_x) / var_x, 0.0, 1.0)
            : 0.0;
    ev.bayes_error = std::clamp(1.0 - map_mass, 0.0, 1.0);
    ev.rho_m_sq_xz =
        var_x > 0.0 ? rho_sq_from_matrix(ws.p_xz, p_x, ws.p_z) : 0.0;
    return ev;
  }
};

std::vector<double> make_z_values(const std::vector<double>& y_vals,
                                  std::size_t z_size) {
  std::vector<double> z = y_vals;
  double next = z.empty() ? 0.0 : z.back() + 1.0;
  while (z.size() < z_size) z.push_back(next++);
  if (z.size() > z_size) z.resize(z_size);  // z_size >= 2 checked upstream
  return z;
}

Matrix identity_embedding(std::size_t b, std::size_t nz) {
  Matrix k(b, nz);
  for (std::size_t y = 0; y < b && y < nz; ++y) k(y, y) = 1.0;
  return k;
}

Matrix full_erasure_matrix(std::size_t b, std::size_t nz) {
  Matrix k(b, nz);
  for (std::size_t y = 0; y < b; ++y) k(y, nz - 1) = 1.0;
  return k;
}

Matrix erasure_matrix(std::size_t b, std::size_t nz, double delta) {
  Matrix k(b, nz);
  for (std::size_t y = 0; y < b; ++y) {
    k(y, y) = 1.0 - delta;
    k(y, nz - 1) += delta;
  }
  return k;
}

void project_row_to_simplex(double* row, std::size_t n) {
  std::vector<double> u(row, row + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0, tau = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    cumulative += u[j];
    const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) tau = t;
  }
  for (std::size_t j = 0; j < n; ++j) row[j] = std::max(0.0, row[j] - tau);
}

double leakage(const FilterEvaluation& ev, ConstraintKind kind) {
  return kind == ConstraintKind::kStrong ? ev.rho_m_sq_xz : ev.eta_sq_xz;
}

// ---------------------------------------------------------------------------
// Dense grid engine for |Y| = 2, |Z| = 3.

struct GridQuery {
  ConstraintKind kind;
  double eps;
  bool bayes_objective;
};

struct GridBest {
  double value = kInf;
  std::size_t index = std::numeric_limits<std::size_t>::max();
};

std::vector<std::array<double, 3>> simplex_lattice(double resolution) {
  const int n = std::max(1, static_cast<int>(std::lround(1.0 / resolution)));
  std::vector<std::array<double, 3>> pts;
  pts.reserve(static_cast<std::size_t>((n + 1) * (n + 2) / 2));
  for (int k0 = 0; k0 <= n; ++k0)
    for (int k1 = 0; k1 + k0 <= n; ++k1)
      pts.push_back({static_cast<double>(k0) / n, static_cast<double>(k1) / n,
                     static_cast<double>(n - k0 - k1) / n});
  return pts;
}

std::vector<GridBest> grid_sweep(const PreparedJoint& pj,
                                 const std::vector<std::array<double, 3>>& lattice,
                                 const std::vector<GridQuery>& queries,
                                 int threads) {
  const std::size_t s = lattice.size();
  const std::size_t total = s * s;
  const int nthreads = resolve_threads(threads);
  std::vector<std::vector<GridBest>> partial(
      static_cast<std::size_t>(nthreads) + 1,
      std::vector<GridBest>(queries.size()));

  parallel_chunks(total, nthreads, [&](std::size_t chunk, std::size_t begin,
                                       std::size_t end) {
    PreparedJoint::Workspace ws;
    Matrix k(2, 3);
    auto& best = partial[chunk];
    for (std::size_t t = begin; t < end; ++t) {
      const auto& r0 = lattice[t / s];
      const auto& r1 = lattice[t % s];
      k(0, 0) = r0[0];
      k(0, 1) = r0[1];
      k(0, 2) = r0[2];
      k(1, 0) = r1[0];
      k(1, 1) = r1[1];
      k(1, 2) = r1[2];
      const FilterEvaluation ev = pj.evaluate(k, ws);
      for (std::size_t q = 0; q < queries.size(); ++q) {
        if (leakage(ev, queries[q].kind) > queries[q].eps + kGridFeasibility)
          continue;
        const double value =
            queries[q].bayes_objective ? ev.bayes_error : ev.ensr;
        if (value < best[q].value) {
          best[q].value = value;
          best[q].index = t;
        }
      }
    }
  });

  std::vector<GridBest> best(queries.size());
  for (const auto& chunk : partial)
    for (std::size_t q = 0; q < queries.size(); ++q)
      if (chunk[q].value < best[q].value ||
          (chunk[q].value == best[q].value && chunk[q].index < best[q].index))
        best[q] = chunk[q];
  return best;
}

struct RefineResult {
  Matrix k;
  double value = kInf;
  bool feasible = false;
};

// Local polish: axis pattern search with shrinking step plus a line search
// toward the identity embedding (lower objective, higher leakage); both only
// ever accept feasible improvements.
RefineResult refine_local(const PreparedJoint& pj, Matrix k,
                          ConstraintKind kind, double eps,
                          bool bayes_objective, double tolerance) {
  PreparedJoint::Workspace ws;
  const std::size_t b = k.rows(), nz = k.cols();
  auto value_of = [&](const Matrix& m, bool& feasible) {
    const FilterEvaluation ev = pj.evaluate(m, ws);
    feasible = leakage(ev, kind) <= eps + kGridFeasibility;
    return bayes_objective ? ev.bayes_error : ev.ensr;
  };

  RefineResult cur{k, kInf, false};
  cur.value = value_of(cur.k, cur.feasible);
  if (!cur.feasible) return cur;

  const Matrix target = identity_embedding(b, nz);
  for (int pass = 0; pass < 4; ++pass) {
    bool pass_improved = false;
    // Pattern search down to a tenth of the requested tolerance.
    const double step_floor = std::max(1e-9, 0.1 * tolerance);
    double step = 0.02;
    while (step > step_floor) {
      bool moved = false;
      for (std::size_t y = 0; y < b; ++y)
        for (std::size_t z = 0; z < nz; ++z)
          for (const double sgn : {+1.0, -1.0}) {
            Matrix trial = cur.k;
            trial(y, z) += sgn * step;
            project_row_to_simplex(trial.row(y), nz);
            bool feasible = false;
            const double v = value_of(trial, feasible);
            if (feasible && v < cur.value - 1e-15) {
              cur.k = trial;
              cur.value = v;
              moved = true;
              pass_improved = true;
            }
          }
      if (!moved) step *= 0.5;
    }
    // Slide toward the identity while the constraint allows it.
    double lo = 0.0, hi = 1.0;
    auto mix = [&](double t) {
      Matrix m = cur.k;
      for (std::size_t i = 0; i < m.data().size(); ++i)
        m.data()[i] = (1.0 - t) * cur.k.data()[i] + t * target.data()[i];
      return m;
    };
    bool feasible_hi = false;
    const double v_hi = value_of(mix(1.0), feasible_hi);
    if (feasible_hi && v_hi < cur.value - 1e-15) {
      cur.k = mix(1.0);
      cur.value = v_hi;
      pass_improved = true;
    } else {
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        bool feasible = false;
        value_of(mix(mid), feasible);
        (feasible ? lo : hi) = mid;
      }
      bool feasible = false;
      const double v = value_of(mix(lo), feasible);
      if (feasible && v < cur.value - 1e-15) {
        cur.k = mix(lo);
        cur.value = v;
        pass_improved = true;
      }
    }
    if (!pass_improved) break;
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Projected gradient engine for general |Y|, |Z|.

struct PenalizedProblem {
  const PreparedJoint& pj;
  ConstraintKind kind;
  double eps;
  double mu;

  double operator()(const Matrix& k, PreparedJoint::Workspace& ws) const {
    const FilterEvaluation ev = pj.evaluate(k, ws);
    const double excess = std::max(0.0, leakage(ev, kind) - eps);
    return ev.ensr + mu * excess * excess;
  }
};

Matrix run_pgd(const PreparedJoint& pj, Matrix k, ConstraintKind kind,
               double eps, double tolerance) {
  PreparedJoint::Workspace ws;
  const std::size_t b = k.rows(), nz = k.cols();
  constexpr double kFd = 1e-6;
  for (int round = 0; round < 5; ++round) {
    const PenalizedProblem obj{pj, kind, eps, 10.0 * std::pow(10.0, round)};
    double alpha = 0.05;
    double f = obj(k, ws);
    Matrix grad(b, nz);
    for (int iter = 0; iter < 300; ++iter) {
      for (std::size_t y = 0; y < b; ++y)
        for (std::size_t z = 0; z < nz; ++z) {
          Matrix probe = k;
          probe(y, z) = k(y, z) + kFd;
          const double fp = obj(probe, ws);
          probe(y, z) = k(y, z) - kFd;
          const double fm = obj(probe, ws);
          grad(y, z) = (fp - fm) / (2.0 * kFd);
        }
      bool accepted = false;
      while (alpha > std::max(1e-12, 1e-4 * tolerance)) {
        Matrix trial = k;
        for (std::size_t i = 0; i < trial.data().size(); ++i)
          trial.data()[i] -= alpha * grad.data()[i];
        for (std::size_t y = 0; y < b; ++y)
          project_row_to_simplex(trial.row(y), nz);
        const double ft = obj(trial, ws);
        if (ft < f - 1e-15) {
          k = trial;
          f = ft;
          alpha = std::min(alpha * 1.3, 0.5);
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) break;
    }
  }
  return k;
}

// Mixes toward full erasure until the constraint holds; t = 1 always does.
Matrix enforce_feasible(const PreparedJoint& pj, Matrix k, ConstraintKind kind,
                        double eps) {
  PreparedJoint::Workspace ws;
  const FilterEvaluation ev = pj.evaluate(k, ws);
  if (leakage(ev, kind) <= eps + kGridFeasibility) return k;
  const Matrix blank = full_erasure_matrix(k.rows(), k.cols());
  double lo = 0.0, hi = 1.0;
  auto mix = [&](double t) {
    Matrix m = k;
    for (std::size_t i = 0; i < m.data().size(); ++i)
      m.data()[i] = (1.0 - t) * k.data()[i] + t * blank.data()[i];
    return m;
  };
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    const FilterEvaluation e = pj.evaluate(mix(mid), ws);
    (leakage(e, kind) <= eps + kGridFeasibility ? hi : lo) = mid;
  }
  return mix(hi);
}

// ---------------------------------------------------------------------------
// Shared solve plumbing.

struct Caps {
  double strong;
  double weak;
};

Caps caps_of(const JointDistribution& j) {
  Caps c{rho_m_sq(j), 0.0};
  if (j.row_variance() > 0.0) c.weak = correlation_ratio_sq(j);
  return c;
}

double cap_for(const Caps& caps, ConstraintKind kind) {
  return kind == ConstraintKind::kStrong ? caps.strong : caps.weak;
}

// Rebuilds a full-alphabet channel from the pruned row set; rows for
// zero-mass inputs dump onto the last output symbol.
Channel embed_channel(const PreparedJoint& pj, const Matrix& k,
                      const Alphabet& y_alphabet, const Alphabet& z_alphabet) {
  Matrix full(y_alphabet.size(), z_alphabet.size());
  for (std::size_t y = 0; y < y_alphabet.size(); ++y)
    full(y, z_alphabet.size() - 1) = 1.0;
  for (std::size_t r = 0; r < pj.y_size(); ++r) {
    double rowsum = 0.0;
    for (std::size_t z = 0; z < k.cols(); ++z)
      rowsum += std::max(0.0, k(r, z));
    if (rowsum <= 0.0) continue;  // keep the fallback row
    for (std::size_t z = 0; z < z_alphabet.size(); ++z)
      full(pj.y_index[r], z) =
          z < k.cols() ? std::max(0.0, k(r, z)) / rowsum : 0.0;
  }
  return Channel(y_alphabet, z_alphabet, std::move(full));
}

FilterSolution make_solution(const JointDistribution& joint,
                             const PreparedJoint& pj, const Matrix& k,
                             const Alphabet& z_alphabet, ConstraintKind kind,
                             double eps, SolveMethod method, int restarts,
                             bool clamped) {
  Channel filter = embed_channel(pj, k, joint.col_alphabet(), z_alphabet);
  const FilterEvaluation ev = evaluate_filter(joint, filter);
  FilterSolution s{std::move(filter)};
  s.ensr = ev.ensr;
  s.privacy_strong = ev.rho_m_sq_xz;
  s.privacy_weak = ev.eta_sq_xz;
  s.method = method;
  s.restarts_used = restarts;
  s.eps = eps;
  s.slack = eps - leakage(ev, kind);
  s.clamped = clamped;
  return s;
}

struct EngineRequest {
  ConstraintKind kind;
  double eps;          // already clamped
  bool bayes = false;  // minimize Bayes error instead of ENSR
};

// One engine pass over a shared prepared joint; grid requests are answered
// from a single lattice sweep.
std::vector<Matrix> run_engine(const PreparedJoint& pj,
                               const std::vector<EngineRequest>& requests,
                               std::size_t z_size, const SearchConfig& config,
                               SolveMethod* method_out) {
  const std::size_t b = pj.y_size(), nz = z_size;
  const bool grid = (b == 2 && nz == 3);
  if (method_out) *method_out = grid ? SolveMethod::kGrid : SolveMethod::kGradient;

  std::vector<Matrix> starts;
  starts.push_back(full_erasure_matrix(b, nz));
  // Caller-provided warm starts: solve() prepends the erasure filter at the
  // budget, curve builders append previous optima.
  std::vector<Matrix> extra;
  for (const Channel& ch : config.extra_starts) {
    if (ch.input().size() != pj.y_original || ch.matrix().cols() != nz) continue;
    Matrix k(b, nz);
    for (std::size_t r = 0; r < b; ++r)
      for (std::size_t z = 0; z < nz; ++z)
        k(r, z) = ch(pj.y_index[r], z);
    extra.push_back(std::move(k));
  }

  std::vector<Matrix> out;
  out.reserve(requests.size());

  if (grid) {
    const auto lattice = simplex_lattice(config.grid_resolution);
    std::vector<GridQuery> queries;
    queries.reserve(requests.size());
    for (const auto& r : requests) queries.push_back({r.kind, r.eps, r.bayes});
    const auto bests = grid_sweep(pj, lattice, queries, config.threads);

    for (std::size_t qi = 0; qi < requests.size(); ++qi) {
      const auto& req = requests[qi];
      // Structured candidates first: warm starts (erasure at the budget,
      // then caller-provided filters), the refined sweep winner, and full
      // erasure as the always-feasible fallback.
      std::vector<Matrix> candidates = extra;
      if (bests[qi].index != std::numeric_limits<std::size_t>::max()) {
        const auto& r0 = lattice[bests[qi].index / lattice.size()];
        const auto& r1 = lattice[bests[qi].index % lattice.size()];
        Matrix k(2, 3);
        for (int z = 0; z < 3; ++z) {
          k(0, z) = r0[z];
          k(1, z) = r1[z];
        }
        candidates.push_back(std::move(k));
      }
      candidates.push_back(full_erasure_matrix(b, nz));

      Matrix best_k = full_erasure_matrix(b, nz);
      double best_v = kInf;
      for (const auto& cand : candidates) {
        const RefineResult r = refine_local(pj, cand, req.kind, req.eps,
                                            req.bayes, config.tolerance);
        if (r.feasible && r.value < best_v - kTieMargin) {
          best_v = r.value;
          best_k = r.k;
        }
      }
      out.push_back(std::move(best_k));
    }
    return out;
  }

  // Gradient engine: each request runs its own multi-start round.
  for (const auto& req : requests) {
    std::vector<Matrix> pgd_starts = starts;
    for (const auto& k : extra) pgd_starts.push_back(k);
    Rng rng(config.seed);
    for (int r = 0; r < config.restarts; ++r) {
      Rng stream = rng.fork(static_cast<std::uint64_t>(r));
      Matrix k(b, nz);
      for (std::size_t y = 0; y < b; ++y) {
        const auto row = stream.simplex_point(nz);
        for (std::size_t z = 0; z < nz; ++z) k(y, z) = row[z];
      }
      pgd_starts.push_back(std::move(k));
    }

    std::vector<std::pair<double, Matrix>> results(
        pgd_starts.size(), {kInf, Matrix()});
    parallel_chunks(pgd_starts.size(), config.threads,
                    [&](std::size_t, std::size_t begin, std::size_t end) {
                      PreparedJoint::Workspace ws;
                      for (std::size_t i = begin; i < end; ++i) {
                        // The raw start counts as a candidate when feasible,
                        // so warm starts are never lost to a bad descent.
                        Matrix polished = enforce_feasible(
                            pj,
                            run_pgd(pj, pgd_starts[i], req.kind, req.eps,
                                    config.tolerance),
                            req.kind, req.eps);
                        const FilterEvaluation ev_raw =
                            pj.evaluate(pgd_starts[i], ws);
                        const FilterEvaluation ev_pol = pj.evaluate(polished, ws);
                        if (leakage(ev_raw, req.kind) <=
                                req.eps + kGridFeasibility &&
                            ev_raw.ensr < ev_pol.ensr) {
                          results[i] = {ev_raw.ensr, pgd_starts[i]};
                        } else {
                          results[i] = {ev_pol.ensr, std::move(polished)};
                        }
                      }
                    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i)
      if (results[i].first < results[best].first - kTieMargin) best = i;
    out.push_back(std::move(results[best].second));
  }
  return out;
}

std::size_t resolve_z_size(const JointDistribution& joint, std::size_t z) {
  const std::size_t resolved = z == 0 ? joint.col_alphabet().size() + 1 : z;
  if (resolved < 2) throw ArgumentError("output alphabet needs at least 2 symbols");
  return resolved;
}

}  // namespace

std::string to_string(ConstraintKind kind) {
  return kind == ConstraintKind::kStrong ? "strong" : "weak";
}

std::string to_string(SolveMethod method) {
  switch (method) {
    case SolveMethod::kGrid: return "grid";
    case SolveMethod::kGradient: return "gradient";
    case SolveMethod::kErasure: return "erasure";
    case SolveMethod::kClosedForm: return "closed_form";
  }
  return "unknown";
}

double strong_cap(const JointDistribution& joint_xy) {
  return rho_m_sq(joint_xy);
}

double weak_cap(const JointDistribution& joint_xy) {
  if (joint_xy.row_variance() <= 0.0) return 0.0;
  return correlation_ratio_sq(joint_xy);
}

FilterEvaluation evaluate_filter(const JointDistribution& joint_xy,
                                 const Channel& filter) {
  if (!(filter.input() == joint_xy.col_alphabet()))
    throw DimensionError("filter input does not match the Y alphabet");
  const PreparedJoint pj(joint_xy);
  Matrix k(pj.y_size(), filter.output().size());
  for (std::size_t r = 0; r < pj.y_size(); ++r)
    for (std::size_t z = 0; z < filter.output().size(); ++z)
      k(r, z) = filter(pj.y_index[r], z);
  PreparedJoint::Workspace ws;
  return pj.evaluate(k, ws);
}

FilterSolution erasure_filter(const JointDistribution& joint_xy, double eps,
                              ConstraintKind kind) {
  if (eps < 0.0) throw ArgumentError("privacy budget must be nonnegative");
  const double cap = cap_for(caps_of(joint_xy), kind);
  bool clamped = false;
  double delta = 0.0;
  if (cap <= 1e-15) {
    clamped = eps > cap;
  } else if (eps >= cap) {
    clamped = eps > cap;
  } else {
    delta = 1.0 - eps / cap;
  }
  Channel filter = Channel::erasure(joint_xy.col_alphabet(), delta);
  const FilterEvaluation ev = evaluate_filter(joint_xy, filter);
  FilterSolution s{std::move(filter)};
  s.ensr = ev.ensr;
  s.privacy_strong = ev.rho_m_sq_xz;
  s.privacy_weak = ev.eta_sq_xz;
  s.method = SolveMethod::kErasure;
  s.restarts_used = 0;
  s.eps = std::min(eps, cap);
  s.slack = s.eps - leakage(ev, kind);
  s.clamped = clamped;
  return s;
}

FilterSolution solve(const FilterProblem& problem, const SearchConfig& config) {
  if (problem.eps < 0.0) throw ArgumentError("privacy budget must be nonnegative");
  if (problem.joint.col_variance() <= 0.0)
    throw DegenerateError("ENSR undefined for a constant Y");
  const std::size_t z_size = resolve_z_size(
      problem.joint, problem.z_size ? problem.z_size : config.z_size);

  const Caps caps = caps_of(problem.joint);
  const double cap = cap_for(caps, problem.kind);
  const bool clamped = problem.eps > cap;
  const double eps = std::min(problem.eps, cap);

  const PreparedJoint pj(problem.joint);
  const Alphabet z_alphabet(make_z_values(
      problem.joint.col_alphabet().points(), z_size));

  SearchConfig cfg = config;
  // The erasure filter is always feasible for its own kind; it leads the
  // warm-start list so it also wins ties against unstructured optima.
  std::vector<Channel> starts;
  auto add_erasure_start = [&](double c) {
    const double delta = c <= 1e-15 || eps >= c ? 0.0 : 1.0 - eps / c;
    starts.push_back(
        Channel(problem.joint.col_alphabet(), z_alphabet,
                erasure_matrix(problem.joint.col_alphabet().size(), z_size, delta)));
  };
  if (problem.kind == ConstraintKind::kWeak) add_erasure_start(caps.weak);
  add_erasure_start(caps.strong);
  for (const Channel& ch : config.extra_starts) starts.push_back(ch);
  cfg.extra_starts = std::move(starts);

  SolveMethod method = SolveMethod::kGrid;
  const std::vector<Matrix> result = run_engine(
      pj, {{problem.kind, eps, false}}, z_size, cfg, &method);
  FilterSolution s = make_solution(problem.joint, pj, result[0], z_alphabet,
                                   problem.kind, eps, method,
                                   method == SolveMethod::kGradient
                                       ? cfg.restarts
                                       : 0,
                                   clamped);
  return s;
}

PrivacyCurve privacy_curve(const JointDistribution& joint_xy,
                           ConstraintKind kind,
                           const std::vector<double>& eps_grid,
                           const SearchConfig& config) {
  PrivacyCurve curve;
  curve.kind = kind == ConstraintKind::kStrong ? CurveKind::kMeps
                                               : CurveKind::kWeps;
  SearchConfig cfg = config;
  std::vector<double> grid = eps_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (double eps : grid) {
    FilterProblem problem{joint_xy, eps, kind, cfg.z_size};
    FilterSolution s = solve(problem, cfg);
    cfg.extra_starts.push_back(s.filter);
    curve.points.push_back(CurvePoint{eps, s.ensr, std::move(s)});
  }
  return curve;
}

double bayes_error(const JointDistribution& j_yz) {
  double map_mass = 0.0;
  for (std::size_t z = 0; z < j_yz.col_alphabet().size(); ++z) {
    double best = 0.0;
    for (std::size_t y = 0; y < j_yz.row_alphabet().size(); ++y)
      best = std::max(best, j_yz(y, z));
    map_mass += best;
  }
  return std::clamp(1.0 - map_mass, 0.0, 1.0);
}

PErrorReport p_error_curve(const JointDistribution& joint_xy,
                           const std::vector<double>& eps_grid,
                           const SearchConfig& config) {
  const PreparedJoint pj(joint_xy);
  if (pj.y_size() != 2)
    throw ScopeError("privacy-constrained Bayes error supports binary Y only");
  const std::size_t z_size = resolve_z_size(joint_xy, config.z_size);
  if (z_size != 3)
    throw ScopeError("privacy-constrained Bayes error uses |Z| = 3");

  const double cap = weak_cap(joint_xy);
  const Alphabet z_alphabet(
      make_z_values(joint_xy.col_alphabet().points(), z_size));

  std::vector<double> grid = eps_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<EngineRequest> requests;
  SearchConfig cfg = config;
  for (double eps : grid) {
    const double e = std::min(eps, cap);
    requests.push_back({ConstraintKind::kWeak, e, true});
    requests.push_back({ConstraintKind::kWeak, e, false});
    // Canonical warm start: the erasure filter tuned to the weak budget.
    const double delta = cap <= 1e-15 || e >= cap ? 0.0 : 1.0 - e / cap;
    cfg.extra_starts.push_back(Channel(
        joint_xy.col_alphabet(), z_alphabet,
        erasure_matrix(joint_xy.col_alphabet().size(), z_size, delta)));
  }
  const std::vector<Matrix> results =
      run_engine(pj, requests, z_size, cfg, nullptr);

  PErrorReport report;
  report.var_y = joint_xy.col_variance();
  report.sandwich_ok = true;
  PreparedJoint::Workspace ws;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double eps = std::min(grid[i], cap);
    const FilterEvaluation ev_p = pj.evaluate(results[2 * i], ws);
    const FilterEvaluation ev_w = pj.evaluate(results[2 * i + 1], ws);
    PErrorPoint point{grid[i], ev_p.bayes_error, ev_w.ensr, false,
                      make_solution(joint_xy, pj, results[2 * i], z_alphabet,
                                    ConstraintKind::kWeak, eps,
                                    SolveMethod::kGrid, 0, grid[i] > cap)};
    point.sandwich_ok =
        point.w_eps * report.var_y <= point.p_error + kFeasibilitySlack &&
        point.p_error <= 2.0 * point.w_eps * report.var_y + kFeasibilitySlack;
    report.sandwich_ok = report.sandwich_ok && point.sandwich_ok;
    report.points.push_back(std::move(point));
  }
  return report;
}

ConvexityReport verify_convexity(
    const std::vector<std::pair<double, double>>& points, double tolerance) {
  ConvexityReport rep;
  rep.max_violation = 0.0;
  rep.max_chord_ratio_violation = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      for (std::size_t k = j + 1; k < points.size(); ++k) {
        const auto [e1, v1] = points[i];
        const auto [e2, v2] = points[j];
        const auto [e3, v3] = points[k];
        if (e3 - e1 <= 0.0) continue;
        const double chord = v1 + (v3 - v1) * (e2 - e1) / (e3 - e1);
        rep.max_violation = std::max(rep.max_violation, v2 - chord);
      }
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const auto [e1, v1] = points[i];
    const auto [e2, v2] = points[i + 1];
    if (e1 <= 0.0 || e2 <= e1) continue;
    const double r1 = (1.0 - v1) / e1;
    const double r2 = (1.0 - v2) / e2;
    rep.max_chord_ratio_violation =
        std::max(rep.max_chord_ratio_violation, r2 - r1);
  }
  rep.convex_ok = rep.max_violation <= tolerance;
  rep.chord_ratio_ok = rep.max_chord_ratio_violation <= tolerance;
  return rep;
}

BoundsReport verify_bounds(const JointDistribution& joint_xy,
                           const std::vector<double>& eps_grid,
                           const SearchConfig& config) {
  BoundsReport rep;
  const Caps caps = caps_of(joint_xy);
  rep.rho_sq_xy = caps.strong;
  rep.eta_sq_xy = caps.weak;

  const PrivacyCurve m_curve =
      privacy_curve(joint_xy, ConstraintKind::kStrong, eps_grid, config);
  SearchConfig weak_cfg = config;
  for (const auto& p : m_curve.points) weak_cfg.extra_starts.push_back(p.solution.filter);
  const PrivacyCurve w_curve =
      privacy_curve(joint_xy, ConstraintKind::kWeak, eps_grid, weak_cfg);

  rep.ok = true;
  for (std::size_t i = 0; i < m_curve.points.size(); ++i) {
    BoundsRow row;
    row.eps = m_curve.points[i].eps;
    row.m = m_curve.points[i].value;
    row.w = w_curve.points[i].value;
    const double eps_m = m_curve.points[i].solution.eps;
    const double eps_w = w_curve.points[i].solution.eps;
    row.upper_trivial = 1.0 - eps_m;
    row.upper_strong =
        caps.strong > 0.0 ? 1.0 - std::min(eps_m, caps.strong) / caps.strong : 0.0;
    row.upper_weak =
        caps.weak > 0.0 ? 1.0 - std::min(eps_w, caps.weak) / caps.weak : 0.0;
    row.ok = row.w >= -kFeasibilitySlack &&
             row.w <= row.m + kFeasibilitySlack &&
             row.m <= row.upper_trivial + kFeasibilitySlack &&
             row.m <= row.upper_strong + kFeasibilitySlack &&
             row.w <= row.upper_weak + kFeasibilitySlack;
    rep.ok = rep.ok && row.ok;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace ensrlab
