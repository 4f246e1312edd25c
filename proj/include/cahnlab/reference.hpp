#pragma once

// Brute-force O(N^2) counterparts of the spectral fast paths, for small grids.

#include "cahnlab/grid.hpp"
#include "cahnlab/mollifier.hpp"

namespace cahnlab::reference {

/// h^d sum_j K(x_i - x_j) f_j.
Field direct_convolution(const ScaledKernel& K, const Field& f);

/// 1/2 h^{2d} sum_{i,j} K(x_i - x_j) (f_i - f_j)(g_i - g_j).
double direct_bilinear_form(const ScaledKernel& K, const Field& f, const Field& g);

/// 1/4 h^{2d} sum_{i,j} K(x_i - x_j) (f_i - f_j)^2.
double direct_interaction_energy(const ScaledKernel& K, const Field& f);

/// Direct DFT coefficients f_hat(k) = sum_j f_j exp(-i k.x_j) in the r2c layout.
std::vector<Complex> direct_dft(const Field& f);

}  // namespace cahnlab::reference
