#include "cahnlab/energy.hpp"

#include <vector>

#include "cahnlab/error.hpp"
#include "cahnlab/kernels.hpp"

namespace cahnlab {

double potential_energy(const Field& u, const Potential& p) {
  return u.grid().cell_volume() * kernels::potential_sum(p, u.values());
}

double gradient_energy(const Field& u) { return 0.5 * spectral_quadratic_form(u, u.grid().k_squared()); }

double nonlocal_interaction_energy(const Field& u, const ScaledKernel& K) {
  require_same_grid(u.grid(), K.grid());
  return 0.5 * spectral_quadratic_form(u, K.symbol());
}

EnergyBreakdown energy_local(const Field& u, const Potential& p) {
  EnergyBreakdown e{gradient_energy(u), potential_energy(u, p), 0.0};
  e.total = e.interaction + e.potential_part;
  return e;
}

EnergyBreakdown energy_nonlocal(const Field& u, const ScaledKernel& K, const Potential& p) {
  EnergyBreakdown e{nonlocal_interaction_energy(u, K), potential_energy(u, p), 0.0};
  e.total = e.interaction + e.potential_part;
  return e;
}

double nonlocal_gradient_seminorm(const Field& u, const ScaledKernel& K) {
  require_same_grid(u.grid(), K.grid());
  const auto b = K.symbol();
  const auto k2 = u.grid().gradient_k_squared();
  std::vector<double> weight(b.size());
  for (std::size_t s = 0; s < b.size(); ++s) weight[s] = 2.0 * b[s] * k2[s];
  return spectral_quadratic_form(u, weight);
}

double poincare_ratio(const Field& u, const ScaledKernel& K) {
  const double grad = gradient_norm_L2(u);
  const double semi = nonlocal_gradient_seminorm(u, K);
  if (!(grad > 0.0) || !(semi > 0.0)) throw PreconditionError("poincare_ratio: gradient of u vanishes");
  return grad * grad / semi;
}

}  // namespace cahnlab
