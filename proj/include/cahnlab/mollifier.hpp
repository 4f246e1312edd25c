#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cahnlab/grid.hpp"

namespace cahnlab {

/// Radial bump rho(r) = c exp(-1 / (r0^2 - r^2)) on [0, r0), zero beyond.
struct Mollifier {
  double r0 = 1.0;
  double c = 1.0;
  double sigma = 2.0;  ///< integral of rho(|z|) over R^d
  int dim = 1;

  double operator()(double r) const noexcept;
};

/// Chooses c so that the integral of rho(|z|) over R^d equals sigma_target
/// (default 2 dim, which makes the local limit coefficient exactly 1).
/// The radial integral uses adaptive Gauss-Kronrod quadrature; throws
/// QuadratureError when the error estimate exceeds 1e-10 relative.
Mollifier normalize_mollifier(double r0, int dim, std::optional<double> sigma_target = std::nullopt);

/// sigma / (2 dim): B_eps u -> -coefficient * Laplacian(u) as eps -> 0.
double local_limit_coefficient(const Mollifier& m, int dim);

/// Discrete scaled kernel K_eps(z) = eps^-d rho(|z| / eps) / |z|^2 on grid offsets,
/// with the symbol of B_eps u = (K * 1) u - K * u.
///
/// Off the origin the kernel is point-sampled. The origin cell's mollifier
/// mass rho_eps(0) h^d is carried by the 2d axis neighbours as a Laplacian
/// stencil, and all weights are scaled so that h^d sum_z K(z) |z|^2 equals
/// sigma exactly. The self-interaction sample K(0) is zero; it cancels in B.
class ScaledKernel {
 public:
  const Mollifier& mollifier() const noexcept { return mollifier_; }
  double eps() const noexcept { return eps_; }
  const TorusGrid& grid() const noexcept { return *grid_; }
  const GridPtr& shared_grid() const noexcept { return grid_; }

  /// Kernel value per cell, indexed by the cell's minimal-image offset.
  std::span<const double> samples() const noexcept { return samples_; }
  /// b_eps(k) = h^d sum_z K(z) (1 - cos k.z), per spectral index.
  std::span<const double> symbol() const noexcept { return symbol_; }
  /// h^d sum_z K(z) cos k.z, per spectral index.
  std::span<const double> convolution_symbol() const noexcept { return convolution_symbol_; }

  /// K * 1 = h^d sum_z K(z).
  double mass() const noexcept { return mass_; }
  /// Scale factor applied to the raw weights to match the second moment.
  double moment_correction() const noexcept { return moment_correction_; }
  double support_radius() const noexcept { return eps_ * mollifier_.r0; }
  double cells_across_support() const noexcept;
  /// False in d = 2, where the continuum kernel is not integrable.
  bool continuum_fidelity() const noexcept { return grid_->dim() != 2; }

 private:
  friend ScaledKernel build_kernel(const Mollifier&, double, GridPtr);
  ScaledKernel() = default;

  Mollifier mollifier_;
  double eps_ = 0.0;
  GridPtr grid_;
  std::vector<double> samples_;
  std::vector<double> symbol_;
  std::vector<double> convolution_symbol_;
  double mass_ = 0.0;
  double moment_correction_ = 1.0;
};

/// Requires eps > 0, eps r0 < L/2 and m.dim == grid dim.
ScaledKernel build_kernel(const Mollifier& m, double eps, GridPtr grid);

/// Circular convolution (K * f)(x_i) = h^d sum_j K(x_i - x_j) f_j, evaluated spectrally.
Field kernel_convolve(const ScaledKernel& K, const Field& f);
/// B_eps f = (K * 1) f - K * f, applied through its spectral symbol.
Field nonlocal_B(const ScaledKernel& K, const Field& f);

}  // namespace cahnlab
