#pragma once

// Independent reference computations for the unit and acceptance tests.
// Nothing here calls the library's spectral or kernel code.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "cahnlab/grid.hpp"
#include "cahnlab/mollifier.hpp"

namespace oracle {

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                           double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson quadrature on [a, b], started from 16 panels so that
/// symmetric integrands cannot fool the first error estimate.
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12) {
  constexpr int panels = 16;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + (b - a) * i / panels, hi = a + (b - a) * (i + 1) / panels;
    const double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
    total += simpson_step(f, lo, hi, fa, fm, fb, (hi - lo) / 6.0 * (fa + 4.0 * fm + fb), tol / panels, 50);
  }
  return total;
}

inline double bump(double r, double r0 = 1.0) { return r * r < r0 * r0 ? std::exp(-1.0 / (r0 * r0 - r * r)) : 0.0; }

inline std::vector<double> uniform_values(std::size_t n, std::uint64_t seed, double lo = -0.5, double hi = 0.5) {
  std::mt19937_64 rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  return v;
}

inline double naive_sum(const std::vector<double>& v) {
  long double s = 0.0L;
  for (double x : v) s += x;
  return static_cast<double>(s);
}

/// Offset index of cell i minus cell j, per axis modulo n, for row-major cells.
inline std::size_t offset_cell(std::size_t i, std::size_t j, int dim, int n) {
  std::size_t out = 0, stride = 1;
  for (int axis = dim - 1; axis >= 0; --axis) {
    const int a = static_cast<int>((i / stride) % n), b = static_cast<int>((j / stride) % n);
    out += static_cast<std::size_t>(((a - b) % n + n) % n) * stride;
    stride *= static_cast<std::size_t>(n);
  }
  return out;
}

inline std::size_t cell_count(int dim, int n) {
  std::size_t c = 1;
  for (int i = 0; i < dim; ++i) c *= static_cast<std::size_t>(n);
  return c;
}

/// h^d sum_j K(x_i - x_j) f_j.
inline std::vector<double> circular_convolution(const std::vector<double>& kernel, const std::vector<double>& f, int dim,
                                                int n, double h) {
  const std::size_t N = cell_count(dim, n);
  const double hd = std::pow(h, dim);
  std::vector<double> out(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    long double s = 0.0L;
    for (std::size_t j = 0; j < N; ++j) s += kernel[offset_cell(i, j, dim, n)] * f[j];
    out[i] = hd * static_cast<double>(s);
  }
  return out;
}

/// weight h^{2d} sum_{i,j} K(x_i - x_j) (f_i - f_j)(g_i - g_j).
inline double double_sum(const std::vector<double>& kernel, const std::vector<double>& f, const std::vector<double>& g,
                         int dim, int n, double h, double weight) {
  const std::size_t N = cell_count(dim, n);
  const double hd = std::pow(h, dim);
  long double s = 0.0L;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) s += kernel[offset_cell(i, j, dim, n)] * (f[i] - f[j]) * (g[i] - g[j]);
  return weight * hd * hd * static_cast<double>(s);
}

/// Solves A x = b by Gaussian elimination with partial pivoting (A row-major, m x m).
inline std::vector<double> solve(std::vector<double> A, std::vector<double> b) {
  const std::size_t m = b.size();
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < m; ++r)
      if (std::abs(A[r * m + c]) > std::abs(A[p * m + c])) p = r;
    for (std::size_t k = 0; k < m; ++k) std::swap(A[c * m + k], A[p * m + k]);
    std::swap(b[c], b[p]);
    for (std::size_t r = c + 1; r < m; ++r) {
      const double f = A[r * m + c] / A[c * m + c];
      for (std::size_t k = c; k < m; ++k) A[r * m + k] -= f * A[c * m + k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(m);
  for (std::size_t c = m; c-- > 0;) {
    double s = b[c];
    for (std::size_t k = c + 1; k < m; ++k) s -= A[c * m + k] * x[k];
    x[c] = s / A[c * m + c];
  }
  return x;
}

/// sup over phi in span{1, cos 2 pi m x / L, sin 2 pi m x / L : m <= modes} of
/// <f, phi> / ||phi||_{H1} on a d = 1 grid, with all integrals by the rectangle
/// rule and derivatives of the basis taken analytically.
inline double dual_norm_sup(const std::vector<double>& f, double L, int modes) {
  const std::size_t n = f.size();
  const double h = L / static_cast<double>(n);
  std::vector<std::vector<double>> phi, dphi;
  phi.emplace_back(n, 1.0);
  dphi.emplace_back(n, 0.0);
  for (int m = 1; m <= modes; ++m) {
    const double k = 2.0 * M_PI * m / L;
    std::vector<double> c(n), s(n), dc(n), ds(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = h * static_cast<double>(i);
      c[i] = std::cos(k * x);
      s[i] = std::sin(k * x);
      dc[i] = -k * s[i];
      ds[i] = k * c[i];
    }
    phi.push_back(c);
    phi.push_back(s);
    dphi.push_back(dc);
    dphi.push_back(ds);
  }
  const std::size_t m = phi.size();
  std::vector<double> G(m * m), b(m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t c = 0; c < m; ++c) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += phi[a][i] * phi[c][i] + dphi[a][i] * dphi[c][i];
      G[a * m + c] = h * s;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += f[i] * phi[a][i];
    b[a] = h * s;
  }
  const auto x = solve(G, b);
  double q = 0.0;
  for (std::size_t a = 0; a < m; ++a) q += b[a] * x[a];
  return std::sqrt(q);
}

/// Least-squares slope of log(err) against log(eps).
inline double loglog_slope(const std::vector<double>& eps, const std::vector<double>& err) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    mx += std::log(eps[i]);
    my += std::log(err[i]);
  }
  mx /= eps.size();
  my /= eps.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    sxy += (std::log(eps[i]) - mx) * (std::log(err[i]) - my);
    sxx += (std::log(eps[i]) - mx) * (std::log(eps[i]) - mx);
  }
  return sxy / sxx;
}

inline double central_difference(const std::function<double(double)>& f, double x, double delta = 1e-5) {
  return (f(x + delta) - f(x - delta)) / (2.0 * delta);
}

}  // namespace oracle
