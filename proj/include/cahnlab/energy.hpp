#pragma once

#include "cahnlab/grid.hpp"
#include "cahnlab/mollifier.hpp"
#include "cahnlab/potential.hpp"

namespace cahnlab {

struct EnergyBreakdown {
  double interaction = 0.0;     ///< gradient or nonlocal Dirichlet part
  double potential_part = 0.0;  ///< h^d sum F(u_i)
  double total = 0.0;           ///< interaction + potential_part
};

/// h^d sum_i F(u_i).
double potential_energy(const Field& u, const Potential& p);

/// 1/2 <-Delta u, u>, evaluated spectrally (Nyquist modes included, which
/// matches the implicit operator of the local stepper).
double gradient_energy(const Field& u);

/// 1/2 <B_eps u, u> = 1/4 double integral of K (u(x) - u(y))^2.
double nonlocal_interaction_energy(const Field& u, const ScaledKernel& K);

EnergyBreakdown energy_local(const Field& u, const Potential& p);
EnergyBreakdown energy_nonlocal(const Field& u, const ScaledKernel& K, const Potential& p);

/// Full double integral of K(x - y) |grad u(x) - grad u(y)|^2, i.e.
/// sum_j 2 <B_eps d_j u, d_j u>.
double nonlocal_gradient_seminorm(const Field& u, const ScaledKernel& K);

/// ||grad u||^2 / nonlocal_gradient_seminorm(u, K). Throws PreconditionError
/// when grad u vanishes.
double poincare_ratio(const Field& u, const ScaledKernel& K);

}  // namespace cahnlab
