#include "cahnlab/mollifier.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "cahnlab/error.hpp"
#include "cahnlab/kernels.hpp"

namespace cahnlab {

double Mollifier::operator()(double r) const noexcept {
  r = std::abs(r);
  if (r >= r0) return 0.0;
  return c * std::exp(-1.0 / (r0 * r0 - r * r));
}

namespace {

// Surface measure of the unit sphere in R^d.
double sphere_area(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return 2.0 * std::numbers::pi;
    default: return 4.0 * std::numbers::pi;
  }
}

}  // namespace

Mollifier normalize_mollifier(double r0, int dim, std::optional<double> sigma_target) {
  if (!(r0 > 0.0) || !std::isfinite(r0)) throw PreconditionError("mollifier r0 must be positive");
  if (dim < 1 || dim > 3) throw PreconditionError("mollifier dimension must be 1, 2 or 3");
  const double sigma = sigma_target.value_or(2.0 * dim);
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw PreconditionError("sigma_target must be positive");

  auto radial = [&](double r) {
    const double gap = r0 * r0 - r * r;
    return gap > 0.0 ? std::exp(-1.0 / gap) * std::pow(r, dim - 1) : 0.0;
  };
  double error = 0.0;
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(radial, 0.0, r0, 20, 1e-14, &error);
  if (!(integral > 0.0) || error > 1e-10 * integral)
    throw QuadratureError("mollifier normalization: quadrature error estimate " + std::to_string(error) +
                          " exceeds 1e-10 relative");

  Mollifier m;
  m.r0 = r0;
  m.dim = dim;
  m.sigma = sigma;
  m.c = sigma / (sphere_area(dim) * integral);
  return m;
}

double local_limit_coefficient(const Mollifier& m, int dim) { return m.sigma / (2.0 * dim); }

double ScaledKernel::cells_across_support() const noexcept { return 2.0 * support_radius() / grid_->spacing(); }

ScaledKernel build_kernel(const Mollifier& m, double eps, GridPtr grid) {
  if (!grid) throw PreconditionError("build_kernel: null grid");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw PreconditionError("build_kernel: eps must be positive");
  if (m.dim != grid->dim()) throw PreconditionError("build_kernel: mollifier and grid dimensions differ");
  if (!(eps * m.r0 < 0.5 * grid->side_length()))
    throw PreconditionError("build_kernel: kernel support eps*r0 = " + std::to_string(eps * m.r0) +
                            " must be below L/2");

  const TorusGrid& g = *grid;
  const int d = g.dim();
  const double h = g.spacing();
  const double hd = g.cell_volume();

  ScaledKernel K;
  K.mollifier_ = m;
  K.eps_ = eps;
  K.grid_ = grid;
  K.samples_.assign(g.size(), 0.0);
  kernels::sample_scaled_kernel(g, m, eps, K.samples_);

  const double origin_density = std::pow(eps, -d) * m(0.0);
  for (int axis = 0; axis < d; ++axis) {
    for (int sign : {1, -1}) {
      std::array<int, 3> idx{0, 0, 0};
      idx[axis] = sign > 0 ? 1 : g.n_per_axis() - 1;
      K.samples_[g.cell_index(idx)] += origin_density / (2.0 * d * h * h);
    }
  }

  double moment = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (K.samples_[i] == 0.0) continue;
    const Vec3 z = g.minimal_offset(i);
    moment += K.samples_[i] * (z[0] * z[0] + z[1] * z[1] + z[2] * z[2]);
  }
  moment *= hd;
  K.moment_correction_ = m.sigma / moment;
  for (double& s : K.samples_) s *= K.moment_correction_;
  K.mass_ = hd * kernels::sum(K.samples_);

  std::vector<kernels::SupportPoint> support;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (K.samples_[i] == 0.0) continue;
    const Vec3 z = g.minimal_offset(i);
    const bool leading = z[0] > 0.0 || (z[0] == 0.0 && (z[1] > 0.0 || (z[1] == 0.0 && z[2] > 0.0)));
    if (leading) support.push_back({z, 2.0 * K.samples_[i]});
  }

  K.symbol_.assign(g.spectral_size(), 0.0);
  K.convolution_symbol_.assign(g.spectral_size(), 0.0);
  kernels::cosine_symbol(support, 0.0, g.wavevectors(), hd, K.symbol_, K.convolution_symbol_);
  return K;
}

Field kernel_convolve(const ScaledKernel& K, const Field& f) {
  require_same_grid(K.grid(), f.grid());
  return apply_symbol(f, K.convolution_symbol());
}

Field nonlocal_B(const ScaledKernel& K, const Field& f) {
  require_same_grid(K.grid(), f.grid());
  return apply_symbol(f, K.symbol());
}

}  // namespace cahnlab
