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

#include "ensrlab/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ensrlab {

namespace {

constexpr double kOffDiagTolerance = 1e-12;
constexpr int kMaxSweeps = 100;

// One-sided Jacobi working on a copy of A with rows >= cols; V accumulates
// the right rotations. After convergence the columns of A are sigma_j * u_j.
struct Worker {
  Matrix a;
  Matrix v;

  explicit Worker(const Matrix& in) : a(in), v(in.cols(), in.cols()) {
    for (std::size_t j = 0; j < v.rows(); ++j) v(j, j) = 1.0;
  }

  double column_dot(std::size_t p, std::size_t q) const {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, p) * a(i, q);
    return s;
  }

  void rotate(std::size_t p, std::size_t q, double c, double s) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      const double ap = a(i, p), aq = a(i, q);
      a(i, p) = c * ap - s * aq;
      a(i, q) = s * ap + c * aq;
    }
    for (std::size_t i = 0; i < v.rows(); ++i) {
      const double vp = v(i, p), vq = v(i, q);
      v(i, p) = c * vp - s * vq;
      v(i, q) = s * vp + c * vq;
    }
  }

  // Returns the number of rotations applied in one full sweep.
  int sweep() {
    const std::size_t n = a.cols();
    int rotations = 0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double app = column_dot(p, p);
        const double aqq = column_dot(q, q);
        const double apq = column_dot(p, q);
        if (std::abs(apq) <= kOffDiagTolerance * std::sqrt(app * aqq) ||
            apq == 0.0)
          continue;
        ++rotations;
        const double zeta = (aqq - app) / (2.0 * apq);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        rotate(p, q, c, c * t);
      }
    }
    return rotations;
  }
};

}  // namespace

SvdResult jacobi_svd(const Matrix& input) {
  const bool transposed = input.rows() < input.cols();
  Worker w(transposed ? input.transposed() : input);
  int sweeps = 0;
  while (sweeps < kMaxSweeps) {
    ++sweeps;
    if (w.sweep() == 0) break;
  }

  const std::size_t n = w.a.cols();
  std::vector<double> sigma(n);
  Matrix u(w.a.rows(), n);
  for (std::size_t j = 0; j < n; ++j) {
    double norm = 0.0;
    for (std::size_t i = 0; i < w.a.rows(); ++i) norm += w.a(i, j) * w.a(i, j);
    sigma[j] = std::sqrt(norm);
    if (sigma[j] > 0.0)
      for (std::size_t i = 0; i < w.a.rows(); ++i)
        u(i, j) = w.a(i, j) / sigma[j];
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  SvdResult out;
  out.sweeps = sweeps;
  out.sigma.resize(n);
  out.u = Matrix(u.rows(), n);
  out.v = Matrix(w.v.rows(), n);
  for (std::size_t j = 0; j < n; ++j) {
    out.sigma[j] = sigma[order[j]];
    for (std::size_t i = 0; i < u.rows(); ++i) out.u(i, j) = u(i, order[j]);
    for (std::size_t i = 0; i < w.v.rows(); ++i) out.v(i, j) = w.v(i, order[j]);
  }
  if (transposed) std::swap(out.u, out.v);
  return out;
}

std::vector<double> singular_values(const Matrix& a) {
  return jacobi_svd(a).sigma;
}

double deflated_top_singular_value(const Matrix& a,
                                   const std::vector<double>& u1,
                                   const std::vector<double>& v1,
                                   double sigma1) {
  const std::size_t m = a.rows(), n = a.cols();
  if (m == 0 || n == 0 || std::min(m, n) < 2) return 0.0;

  // B = A - sigma1 u1 v1^T applied implicitly.
  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    double v1x = 0.0;
    for (std::size_t j = 0; j < n; ++j) v1x += v1[j] * x[j];
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      const double* row = a.row(i);
      for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
      y[i] = s - sigma1 * u1[i] * v1x;
    }
  };
  auto apply_t = [&](const std::vector<double>& y, std::vector<double>& x) {
    double u1y = 0.0;
    for (std::size_t i = 0; i < m; ++i) u1y += u1[i] * y[i];
    for (std::size_t j = 0; j < n; ++j) x[j] = -sigma1 * v1[j] * u1y;
    for (std::size_t i = 0; i < m; ++i) {
      const double yi = y[i];
      if (yi == 0.0) continue;
      const double* row = a.row(i);
      for (std::size_t j = 0; j < n; ++j) x[j] += row[j] * yi;
    }
  };

  // Deterministic start orthogonal to nothing in particular; the v1
  // component dies after one application anyway.
  std::vector<double> x(n), y(m), xn(n);
  for (std::size_t j = 0; j < n; ++j)
    x[j] = 1.0 + 0.5 * std::sin(static_cast<double>(j + 1));
  double prev = 0.0;
  for (int iter = 0; iter < 5000; ++iter) {
    apply(x, y);
    apply_t(y, xn);
    double norm = 0.0;
    for (double v : xn) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    for (std::size_t j = 0; j < n; ++j) x[j] = xn[j] / norm;
    // norm converges to sigma2^2.
    if (iter > 4 && std::abs(norm - prev) <= 1e-13 * norm + 1e-300) {
      prev = norm;
      break;
    }
    prev = norm;
  }
  return std::sqrt(prev);
}

}  // namespace ensrlab
