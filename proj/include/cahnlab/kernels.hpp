#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP implementation and a
// serial reference with the same arithmetic order, so the two agree bit for
// bit and results do not depend on the thread count. Reductions use a fixed
// block partition that is independent of the number of threads.

#include <cstddef>
#include <span>

#include "cahnlab/grid.hpp"
#include "cahnlab/mollifier.hpp"
#include "cahnlab/potential.hpp"

namespace cahnlab::kernels {

inline constexpr std::size_t kReductionBlock = 2048;

/// One kernel sample used in the cosine sum. Offsets z and -z are folded into
/// one entry with doubled weight.
struct SupportPoint {
  Vec3 offset;
  double weight;
};

#define CAHNLAB_KERNEL_DECLARATIONS                                                                        \
  double sum(std::span<const double> x);                                                                   \
  double sum_of_squares(std::span<const double> x);                                                        \
  double dot(std::span<const double> x, std::span<const double> y);                                        \
  /* sum_k multiplicity_k * weight_k * |c_k|^2; empty weight means 1 */                                    \
  double spectral_weighted_sum(std::span<const Complex> c, std::span<const double> weight,                 \
                               std::span<const double> multiplicity);                                      \
  double spectral_weighted_dot(std::span<const Complex> a, std::span<const Complex> b,                     \
                               std::span<const double> weight, std::span<const double> multiplicity);      \
  /* difference(k) = h^d sum w 2 sin^2(k.z / 2); convolution(k) = h^d sum w cos(k.z) */                   \
  void cosine_symbol(std::span<const SupportPoint> support, double self_weight,                            \
                     std::span<const Vec3> wavevectors, double cell_volume, std::span<double> difference,  \
                     std::span<double> convolution);                                                       \
  /* raw K_eps(z) per cell at the minimal-image offset; zero at the origin */                              \
  void sample_scaled_kernel(const TorusGrid& grid, const Mollifier& m, double eps, std::span<double> out); \
  void potential_derivative(const Potential& p, std::span<const double> u, std::span<double> out);        \
  double potential_sum(const Potential& p, std::span<const double> u);                                     \
  /* out = [u - dt k2 (w - S u)] / (1 + dt k2 interaction + dt S k2) */                                    \
  void semi_implicit_update(std::span<const Complex> u_hat, std::span<const Complex> w_hat,                \
                            std::span<const double> k2, std::span<const double> interaction, double dt,    \
                            double stabilization, std::span<Complex> out);                                 \
  void multiply_symbol(std::span<Complex> c, std::span<const double> symbol);

namespace serial {
CAHNLAB_KERNEL_DECLARATIONS
}  // namespace serial

namespace omp {
CAHNLAB_KERNEL_DECLARATIONS
}  // namespace omp

#undef CAHNLAB_KERNEL_DECLARATIONS

using namespace omp;

/// Thread count used by the OpenMP kernels (0 restores the runtime default).
void set_workers(int workers);
int workers();

}  // namespace cahnlab::kernels
