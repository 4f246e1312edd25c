// Serial reference implementations of the kernels in kernels.hpp. Kept
// loop-for-loop identical to kernels_omp.cpp minus the pragmas; the tests
// require bitwise agreement between the two.

#include <cmath>

#include "cahnlab/error.hpp"
#include "cahnlab/kernels.hpp"

namespace cahnlab::kernels::serial {

namespace {

std::size_t block_count(std::size_t n) { return (n + kReductionBlock - 1) / kReductionBlock; }

template <class Term>
double blocked_sum(std::size_t n, Term&& term) {
  const std::size_t blocks = block_count(n);
  double total = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t lo = b * kReductionBlock;
    const std::size_t hi = lo + kReductionBlock < n ? lo + kReductionBlock : n;
    double partial = 0.0;
    for (std::size_t i = lo; i < hi; ++i) partial += term(i);
    total += partial;
  }
  return total;
}

void check_domain(const Potential& p, std::span<const double> u) {
  if (p.kind() != PotentialKind::logarithmic) return;
  for (double v : u)
    if (!p.in_domain(v)) throw DomainError("logarithmic potential evaluated outside (0, 1)");
}

}  // namespace

double sum(std::span<const double> x) {
  return blocked_sum(x.size(), [&](std::size_t i) { return x[i]; });
}

double sum_of_squares(std::span<const double> x) {
  return blocked_sum(x.size(), [&](std::size_t i) { return x[i] * x[i]; });
}

double dot(std::span<const double> x, std::span<const double> y) {
  return blocked_sum(x.size(), [&](std::size_t i) { return x[i] * y[i]; });
}

double spectral_weighted_sum(std::span<const Complex> c, std::span<const double> weight,
                             std::span<const double> multiplicity) {
  if (weight.empty()) return blocked_sum(c.size(), [&](std::size_t i) { return multiplicity[i] * std::norm(c[i]); });
  return blocked_sum(c.size(), [&](std::size_t i) { return multiplicity[i] * weight[i] * std::norm(c[i]); });
}

double spectral_weighted_dot(std::span<const Complex> a, std::span<const Complex> b, std::span<const double> weight,
                             std::span<const double> multiplicity) {
  return blocked_sum(a.size(), [&](std::size_t i) {
    const double re = a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    return multiplicity[i] * (weight.empty() ? 1.0 : weight[i]) * re;
  });
}

void cosine_symbol(std::span<const SupportPoint> support, double self_weight, std::span<const Vec3> wavevectors,
                   double cell_volume, std::span<double> difference, std::span<double> convolution) {
  for (std::size_t s = 0; s < wavevectors.size(); ++s) {
    const Vec3& k = wavevectors[s];
    double diff = 0.0;
    double conv = self_weight;
    for (const auto& p : support) {
      const double phase = k[0] * p.offset[0] + k[1] * p.offset[1] + k[2] * p.offset[2];
      const double half = std::sin(0.5 * phase);
      diff += p.weight * 2.0 * half * half;
      conv += p.weight * std::cos(phase);
    }
    difference[s] = cell_volume * diff;
    convolution[s] = cell_volume * conv;
  }
}

void sample_scaled_kernel(const TorusGrid& grid, const Mollifier& m, double eps, std::span<double> out) {
  const double support = eps * m.r0;
  const double scale = std::pow(eps, -grid.dim());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3 z = grid.minimal_offset(i);
    const double r2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2];
    const double r = std::sqrt(r2);
    out[i] = (r2 > 0.0 && r < support) ? scale * m(r / eps) / r2 : 0.0;
  }
}

void potential_derivative(const Potential& p, std::span<const double> u, std::span<double> out) {
  check_domain(p, u);
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = p.dF_unchecked(u[i]);
}

double potential_sum(const Potential& p, std::span<const double> u) {
  check_domain(p, u);
  return blocked_sum(u.size(), [&](std::size_t i) { return p.F_unchecked(u[i]); });
}

void semi_implicit_update(std::span<const Complex> u_hat, std::span<const Complex> w_hat, std::span<const double> k2,
                          std::span<const double> interaction, double dt, double stabilization,
                          std::span<Complex> out) {
  for (std::size_t s = 0; s < u_hat.size(); ++s) {
    const double denom = 1.0 + dt * k2[s] * interaction[s] + dt * stabilization * k2[s];
    out[s] = (u_hat[s] - dt * k2[s] * (w_hat[s] - stabilization * u_hat[s])) / denom;
  }
}

void multiply_symbol(std::span<Complex> c, std::span<const double> symbol) {
  for (std::size_t s = 0; s < c.size(); ++s) c[s] *= symbol[s];
}

}  // namespace cahnlab::kernels::serial
